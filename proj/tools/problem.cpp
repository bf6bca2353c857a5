#include "problem.hpp"

#include <regex>

#define TOML_HEADER_ONLY 1
#include <toml.hpp>

#include "mcmlab/errors.hpp"

namespace mcmlab::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const toml::source_region& src, const std::string& msg) {
  throw InputError(path + ":" + std::to_string(src.begin.line) + ": " + msg);
}

toml::table parse_file(const std::string& path) {
  try {
    return toml::parse_file(path);
  } catch (const toml::parse_error& e) {
    fail(path, e.source(), std::string(e.description()));
  }
}

std::string text_of(const std::string& path, const toml::node& n, const std::string& what) {
  if (auto s = n.value<std::string>()) return *s;
  if (auto i = n.value<std::int64_t>()) return std::to_string(*i);
  fail(path, n.source(), what + " must be a string or an integer");
}

std::vector<std::string> strings(const std::string& path, const toml::node& n, const std::string& what) {
  const auto* arr = n.as_array();
  if (!arr) fail(path, n.source(), what + " must be an array");
  std::vector<std::string> out;
  for (const auto& e : *arr) out.push_back(text_of(path, e, what));
  return out;
}

template <class K>
PolyMatrix<K> matrix(const std::string& path, const RingSpec<K>& ring, const toml::node& n, const std::string& what) {
  const auto* arr = n.as_array();
  if (!arr) fail(path, n.source(), what + " must be an array of rows");
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : *arr) rows.push_back(strings(path, row, what));
  try {
    return PolyMatrix<K>::parse(ring, rows);
  } catch (const Error& e) {
    fail(path, n.source(), what + ": " + e.what());
  }
}

long integer(const std::string& path, const toml::node& n, const std::string& what) {
  auto v = n.value<std::int64_t>();
  if (!v) fail(path, n.source(), what + " must be an integer");
  return static_cast<long>(*v);
}

const toml::table& table_at(const std::string& path, const toml::node& n, const std::string& what) {
  const auto* t = n.as_table();
  if (!t) fail(path, n.source(), what + " must be a table");
  return *t;
}

template <class K>
RingPtr<K> read_ring(const std::string& path, const toml::table& doc, std::optional<std::uint32_t> field) {
  const auto* node = doc.get("ring");
  if (!node) throw InputError(path + ": missing [ring]");
  const auto& t = table_at(path, *node, "ring");
  const auto* vars = t.get("vars");
  if (!vars) fail(path, t.source(), "ring needs vars");
  std::vector<std::string> rels;
  if (const auto* r = t.get("relations")) rels = strings(path, *r, "relations");
  FieldSpec f;
  if (const auto* c = t.get("field")) f.characteristic = static_cast<std::uint32_t>(integer(path, *c, "field"));
  if (field) f.characteristic = *field;
  std::optional<std::vector<int>> weights;
  if (const auto* w = t.get("weights")) {
    const auto* arr = w->as_array();
    if (!arr) fail(path, w->source(), "weights must be an array");
    weights.emplace();
    for (const auto& e : *arr) weights->push_back(static_cast<int>(integer(path, e, "weight")));
  }
  try {
    auto ring = make_ring<K>(strings(path, *vars, "vars"), rels, f, weights);
    if (const auto* g = t.get("gorenstein")) {
      auto copy = std::make_shared<RingSpec<K>>(*ring);
      copy->gorenstein = g->value<bool>().value_or(true);
      ring = copy;
    }
    return ring;
  } catch (const Error& e) {
    fail(path, t.source(), e.what());
  }
}

template <class K>
Module<K> read_module(const std::string& path, const RingPtr<K>& ring, const std::string& name,
                      const toml::table& t) {
  std::size_t free = 0;
  if (const auto* f = t.get("free")) {
    const long v = integer(path, *f, "free");
    if (v < 0) fail(path, f->source(), "free rank must be nonnegative");
    free = static_cast<std::size_t>(v);
  }
  const auto* pres = t.get("presentation");
  const auto* mf = t.get("mf");
  if (pres && mf) fail(path, t.source(), "module " + name + " has both presentation and mf");
  try {
    if (mf) {
      const auto& m = table_at(path, *mf, "mf");
      const auto* phi = m.get("phi");
      const auto* psi = m.get("psi");
      if (!phi || !psi) fail(path, m.source(), "mf needs phi and psi");
      MatrixFactorization<K> fac{matrix(path, *ring, *phi, "phi"), matrix(path, *ring, *psi, "psi")};
      auto check = mf_validate(*ring, fac);
      if (!check.ok) fail(path, m.source(), "module " + name + ": " + check.message);
      return Module<K>::from_mf(ring, std::move(fac), free, name);
    }
    if (pres) {
      if (free) fail(path, t.source(), "free is only allowed with mf or alone");
      return Module<K>::from_presentation(ring, matrix(path, *ring, *pres, "presentation"), name);
    }
    return Module<K>::free(ring, free, name);
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    fail(path, t.source(), "module " + name + ": " + e.what());
  }
}

template <class K>
FiltrationSpec<K> read_filtration(const std::string& path, const RingSpec<K>& ring, const std::string& name,
                                  const toml::table& t) {
  const std::string kind = t["kind"].value_or(std::string("madic"));
  FiltrationSpec<K> F;
  auto gens = [&](const toml::node& n, const std::string& what) {
    std::vector<Polynomial<K>> out;
    for (const auto& s : strings(path, n, what)) {
      try {
        out.push_back(ring.parse(s));
      } catch (const Error& e) {
        fail(path, n.source(), what + ": " + e.what());
      }
    }
    return out;
  };
  if (kind == "madic") return FiltrationSpec<K>::m_adic(ring);
  const auto* ideal = t.get("ideal");
  if (!ideal) fail(path, t.source(), "filtration " + name + " needs an ideal");
  F.ideal = gens(*ideal, "ideal");
  if (kind == "adic") {
    F.kind = FiltrationKind::Adic;
  } else if (kind == "intclosure") {
    F.kind = FiltrationKind::IntegralClosure;
    try {
      monomial_exponents(F.ideal);
    } catch (const Error& e) {
      fail(path, ideal->source(), e.what());
    }
  } else if (kind == "custom") {
    F.kind = FiltrationKind::Custom;
    const auto* table = t.get("table");
    if (!table || !table->as_array()) fail(path, t.source(), "custom filtration " + name + " needs a table");
    for (const auto& row : *table->as_array()) F.table.push_back(gens(row, "table"));
  } else {
    fail(path, t.source(), "unknown filtration kind " + kind);
  }
  return F;
}

template <class K>
const Module<K>& lookup(const std::string& path, const Problem<K>& p, const toml::table& t, const char* key) {
  const auto* n = t.get(key);
  if (!n) fail(path, t.source(), std::string("sequence needs ") + key);
  const auto name = text_of(path, *n, key);
  auto it = p.modules.find(name);
  if (it == p.modules.end()) fail(path, n->source(), "unknown module " + name);
  return it->second;
}

template <class K>
ShortExactSequence<K> read_sequence(const std::string& path, const Problem<K>& p, const std::string& name,
                                    const toml::table& t) {
  const auto& N = lookup(path, p, t, "N");
  const auto& M = lookup(path, p, t, "M");
  if (t["split"].value_or(false)) return split_sequence(N, M);
  const auto& E = lookup(path, p, t, "E");
  const auto* inj = t.get("inject");
  const auto* proj = t.get("project");
  if (!inj || !proj) fail(path, t.source(), "sequence " + name + " needs inject and project, or split = true");
  ShortExactSequence<K> s{N, E, M, matrix(path, *p.ring, *inj, "inject"), matrix(path, *p.ring, *proj, "project")};
  if (s.inject.rows() != E.num_generators() || s.inject.cols() != N.num_generators()) {
    fail(path, inj->source(), "inject must be " + std::to_string(E.num_generators()) + " x " +
                                  std::to_string(N.num_generators()));
  }
  if (s.project.rows() != M.num_generators() || s.project.cols() != E.num_generators()) {
    fail(path, proj->source(), "project must be " + std::to_string(M.num_generators()) + " x " +
                                   std::to_string(E.num_generators()));
  }
  return s;
}

template <class F>
void each(const std::string& path, const toml::table& doc, const char* section, F fn) {
  const auto* node = doc.get(section);
  if (!node) return;
  const auto& t = table_at(path, *node, section);
  for (const auto& [k, v] : t) fn(std::string(k.str()), table_at(path, v, std::string(section) + "." + std::string(k.str())));
}

}  // namespace

std::pair<long, long> parse_window(const std::string& text) {
  static const std::regex re(R"(\s*(-?\d+)\s*\.\.\s*(-?\d+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) throw InputError("window must look like a..b, got " + text);
  const long lo = std::stol(m[1]);
  const long hi = std::stol(m[2]);
  if (lo < 0 || hi < lo) throw InputError("window needs 0 <= a <= b, got " + text);
  return {lo, hi};
}

std::uint32_t problem_field(const std::string& path, std::optional<std::uint32_t> field_override) {
  if (field_override) return *field_override;
  auto doc = parse_file(path);
  const auto* c = doc.at_path("ring.field").node();
  return c ? static_cast<std::uint32_t>(integer(path, *c, "field")) : FieldSpec{}.characteristic;
}

template <class K>
Problem<K> load_problem(const std::string& path, std::optional<std::uint32_t> field_override) {
  auto doc = parse_file(path);
  Problem<K> p;
  p.path = path;
  p.ring = read_ring<K>(path, doc, field_override);
  each(path, doc, "module", [&](const std::string& name, const toml::table& t) {
    p.modules.emplace(name, read_module(path, p.ring, name, t));
  });
  p.filtrations.emplace("madic", FiltrationSpec<K>::m_adic(*p.ring));
  each(path, doc, "filtration", [&](const std::string& name, const toml::table& t) {
    p.filtrations.insert_or_assign(name, read_filtration(path, *p.ring, name, t));
  });
  each(path, doc, "sequence", [&](const std::string& name, const toml::table& t) {
    p.sequences.emplace(name, read_sequence(path, p, name, t));
  });
  if (const auto* o = doc.get("options")) {
    const auto& t = table_at(path, *o, "options");
    if (const auto* l = t.get("level")) p.options.level = integer(path, *l, "level");
    if (const auto* w = t.get("window")) {
      try {
        p.options.window = parse_window(text_of(path, *w, "window"));
      } catch (const InputError& e) {
        fail(path, w->source(), e.what());
      }
    }
    if (const auto* c = t.get("cap_dim")) p.options.cap_dim = static_cast<std::size_t>(integer(path, *c, "cap_dim"));
  }
  return p;
}

template <class K>
const Module<K>& Problem<K>::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) throw InputError(path + ": unknown module " + name);
  return it->second;
}

template <class K>
const FiltrationSpec<K>& Problem<K>::filtration(const std::string& name) const {
  auto it = filtrations.find(name);
  if (it == filtrations.end()) throw InputError(path + ": unknown filtration " + name);
  return it->second;
}

template <class K>
const ShortExactSequence<K>& Problem<K>::sequence(const std::string& name) const {
  auto it = sequences.find(name);
  if (it == sequences.end()) throw InputError(path + ": unknown sequence " + name);
  return it->second;
}

template struct Problem<Fp>;
template struct Problem<Rational>;
template Problem<Fp> load_problem<Fp>(const std::string&, std::optional<std::uint32_t>);
template Problem<Rational> load_problem<Rational>(const std::string&, std::optional<std::uint32_t>);

}  // namespace mcmlab::cli
