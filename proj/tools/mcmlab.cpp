#include <CLI11.hpp>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mcmlab/catalog.hpp"
#include "mcmlab/errors.hpp"
#include "problem.hpp"

using json = nlohmann::ordered_json;

namespace mcmlab::cli {
namespace {

constexpr int kSchema = 1;
constexpr const char* kVersion = "0.1.0";

enum Exit { kOk = 0, kExpectation = 1, kInput = 2, kInvariant = 3 };

struct Flags {
  std::optional<std::uint32_t> field;
  std::optional<long> level;
  std::optional<std::string> window;
  std::string format = "json";
  bool pretty = false;
  std::optional<std::size_t> cap_dim;
  std::string file;
  std::string module;
  std::string filtration = "madic";
  std::string sequence;
  std::string method = "both";
  std::string element;
  long index = 1;
  long c = 1;
  std::string scenario;
};

json integer(const BigInt& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max()) {
    return v.convert_to<std::int64_t>();
  }
  return v.str();
}

json integers(const std::vector<BigInt>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(integer(x));
  return out;
}

json fit_json(const PolyFit& fit) {
  json out;
  out["degree"] = fit.degree;
  json coeffs = json::array();
  for (const auto& c : fit.coefficients) coeffs.push_back(to_string(c));
  out["coefficients"] = coeffs;
  out["stabilization_index"] = fit.stabilization_index;
  return out;
}

json window_json(long lo, long hi) { return json::array({lo, hi}); }

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + cell(v[i]);
    return s;
  }
  if (v.is_object()) {
    std::string s;
    for (const auto& [k, x] : v.items()) s += (s.empty() ? "" : ", ") + k + "=" + cell(x);
    return s;
  }
  return v.dump();
}

/// Aligned "key value" lines; arrays of objects become column tables.
void pretty(std::ostream& os, const json& doc, const std::string& indent = "") {
  std::size_t width = 0;
  for (const auto& [k, v] : doc.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : doc.items()) {
    if (v.is_array() && !v.empty() && v.front().is_object()) {
      os << indent << k << ":\n";
      std::vector<std::string> cols;
      for (const auto& [c, x] : v.front().items()) cols.push_back(c);
      std::vector<std::size_t> w(cols.size());
      for (std::size_t i = 0; i < cols.size(); ++i) {
        w[i] = cols[i].size();
        for (const auto& row : v) w[i] = std::max(w[i], cell(row.value(cols[i], json())).size());
      }
      os << indent << "  ";
      for (std::size_t i = 0; i < cols.size(); ++i) os << std::left << std::setw(static_cast<int>(w[i]) + 2) << cols[i];
      os << "\n";
      for (const auto& row : v) {
        os << indent << "  ";
        for (std::size_t i = 0; i < cols.size(); ++i) {
          os << std::left << std::setw(static_cast<int>(w[i]) + 2) << cell(row.value(cols[i], json()));
        }
        os << "\n";
      }
    } else if (v.is_object()) {
      os << indent << k << ":\n";
      pretty(os, v, indent + "  ");
    } else {
      os << indent << std::left << std::setw(static_cast<int>(width) + 2) << k << cell(v) << "\n";
    }
  }
}

void emit(const Flags& f, const json& doc, const std::vector<std::vector<std::string>>* csv = nullptr) {
  if (f.format == "csv") {
    std::cout << "# mcmlab " << kVersion << " schema " << kSchema << "\n";
    for (const auto& row : *csv) {
      for (std::size_t i = 0; i < row.size(); ++i) std::cout << (i ? "," : "") << row[i];
      std::cout << "\n";
    }
    return;
  }
  if (f.pretty) {
    std::cout << "mcmlab " << kVersion << "\n";
    pretty(std::cout, doc);
    return;
  }
  std::cout << json{{"mcmlab", kVersion}, {"schema", kSchema}}.dump() << "\n" << doc.dump() << "\n";
}

void require_csv_ok(const Flags& f, bool table) {
  if (f.format != "json" && f.format != "csv") throw InputError("--format must be json or csv");
  if (f.format == "csv" && !table) throw InputError("csv output is only offered for hilbert, tor and betti");
}

std::vector<std::vector<std::string>> table_csv(const std::string& head, long lo, const std::vector<std::int64_t>& v) {
  std::vector<std::vector<std::string>> rows{{"n", head}};
  for (std::size_t n = static_cast<std::size_t>(lo); n < v.size(); ++n) rows.push_back({std::to_string(n), std::to_string(v[n])});
  return rows;
}

template <class K>
class Runner {
 public:
  Runner(const Flags& f, Problem<K> p) : f_(f), p_(std::move(p)) {}

  long level(long fallback) const { return f_.level.value_or(p_.options.level.value_or(fallback)); }
  std::optional<std::pair<long, long>> window() const {
    if (f_.window) return parse_window(*f_.window);
    return p_.options.window;
  }
  std::size_t cap() const { return f_.cap_dim.value_or(p_.options.cap_dim.value_or(kDefaultDimCap)); }

  int validate() {
    require_csv_ok(f_, false);
    const auto& ring = *p_.ring;
    const long L = level(6);
    bool ok = true;
    json out;
    auto diag = validate_ring(ring);
    json r;
    r["vars"] = ring.vars;
    json rels = json::array();
    for (const auto& g : ring.relations) rels.push_back(ring.print(g));
    r["relations"] = rels;
    r["field"] = ring.field.characteristic;
    r["dimension"] = diag.dimension;
    r["relation_orders"] = diag.relation_orders;
    r["quadric"] = diag.quadric;
    r["weights"] = diag.weights;
    r["gorenstein"] = ring.gorenstein;
    r["notes"] = diag.notes;
    out["ring"] = r;
    json mods = json::array();
    for (const auto& [name, M] : p_.modules) {
      json m;
      m["name"] = name;
      m["generators"] = M.num_generators();
      m["relations"] = M.presentation().cols();
      m["free"] = is_free(M);
      if (is_free(M)) {
        m["mcm"] = "free";
        m["ok"] = true;
      } else if (M.is_mf()) {
        auto c = mf_validate(ring, M.mf());
        m["mcm"] = "matrix factorization";
        m["ok"] = c.ok;
        ok = ok && c.ok;
        if (!c.ok) m["message"] = c.message;
      } else if (ring.dim() == 1 && ring.graded()) {
        auto c = mcm_probe(M);
        m["mcm"] = "probabilistic evidence";
        m["ok"] = c.ok;
        if (!c.message.empty()) m["message"] = c.message;
      } else {
        m["mcm"] = "assumed";
        m["ok"] = true;
      }
      mods.push_back(m);
    }
    out["modules"] = mods;
    json filts = json::array();
    for (const auto& [name, F] : p_.filtrations) {
      auto a = check_admissible(p_.ring, F, L, cap());
      json x;
      x["name"] = name;
      x["description"] = F.describe(ring);
      x["ok"] = a.ok();
      x["stable_from"] = a.stable_from ? json(*a.stable_from) : json();
      json bad = json::array();
      for (const auto& ax : a.axioms) {
        if (!ax.ok) bad.push_back(ax.name + ": " + ax.witness);
      }
      x["failures"] = bad;
      if (!a.note.empty()) x["note"] = a.note;
      ok = ok && a.ok();
      filts.push_back(x);
    }
    out["filtrations"] = filts;
    json seqs = json::array();
    for (const auto& [name, s] : p_.sequences) {
      auto e = verify_exactness(s, L);
      json x;
      x["name"] = name;
      x["exact"] = e.ok;
      x["level"] = e.level;
      x["failures"] = e.failures;
      ok = ok && e.ok;
      seqs.push_back(x);
    }
    out["sequences"] = seqs;
    out["level"] = L;
    out["ok"] = ok;
    emit(f_, out);
    return ok ? kOk : kExpectation;
  }

  int hilbert() {
    require_csv_ok(f_, true);
    const auto& M = p_.module(f_.module);
    const auto& F = p_.filtration(f_.filtration);
    HilbertTable t;
    PolyFit fit;
    std::vector<BigInt> e;
    if (auto w = window()) {
      t = hilbert_table(M, F, w->first, w->second, cap());
      fit = fit_hilbert(t);
      e = binomial_coefficients(fit, static_cast<int>(p_.ring->dim()));
    } else {
      auto rep = hilbert_coefficients(M, F, 64, cap());
      t = rep.table;
      fit = rep.fit;
      e = rep.e;
    }
    json out;
    out["module"] = f_.module;
    out["filtration"] = F.describe(*p_.ring);
    out["window"] = window_json(t.window_lo, t.window_hi);
    out["lengths"] = t.values;
    out["polynomial"] = fit_json(fit);
    out["e"] = integers(e);
    auto csv = table_csv("length", 0, t.values);
    emit(f_, out, &csv);
    return kOk;
  }

  int tor() {
    require_csv_ok(f_, true);
    if (f_.index < 0) throw InputError("--index must be nonnegative");
    const auto& M = p_.module(f_.module);
    const auto& F = p_.filtration(f_.filtration);
    const auto w = window().value_or(std::pair<long, long>{0, 12});
    auto t = tor_table(static_cast<std::size_t>(f_.index), M, F, w.first, w.second, cap());
    json out;
    out["module"] = f_.module;
    out["filtration"] = F.describe(*p_.ring);
    out["index"] = f_.index;
    out["window"] = window_json(t.window_lo, t.window_hi);
    out["lengths"] = t.values;
    try {
      out["polynomial"] = fit_json(fit_table(t.values, t.window_lo));
    } catch (const WindowTooShort&) {
      out["polynomial"] = json();
    }
    auto csv = table_csv("tor_length", 0, t.values);
    emit(f_, out, &csv);
    return kOk;
  }

  int etor_cmd() {
    require_csv_ok(f_, false);
    const auto& M = p_.module(f_.module);
    const auto& F = p_.filtration(f_.filtration);
    auto e = etor(M, F, parse_etor_method(f_.method), cap());
    json out;
    out["etor"] = e.value;
    out["method_agreement"] = e.method_agreement;
    out["method"] = to_string(e.method);
    out["limit"] = e.limit_value ? json(*e.limit_value) : json();
    out["formula"] = e.formula_value ? json(*e.formula_value) : json();
    out["window"] = window_json(e.window_lo, e.window_hi);
    out["stabilization_index"] = e.stabilization_index;
    if (e.formula_value) {
      out["mu"] = e.mu;
      out["e1_ring"] = integer(e.e1_ring);
      out["e1_module"] = integer(e.e1_module);
      out["e1_syzygy"] = integer(e.e1_syzygy);
    }
    out["mcm"] = e.mcm;
    out["module"] = f_.module;
    out["filtration"] = F.describe(*p_.ring);
    emit(f_, out);
    return kOk;
  }

  int tsplit() {
    require_csv_ok(f_, false);
    const auto& s = p_.sequence(f_.sequence);
    const auto& F = p_.filtration(f_.filtration);
    auto ex = verify_exactness(s, level(6));
    if (!ex.ok) {
      std::string msg = "sequence " + f_.sequence + " is not exact";
      if (!ex.failures.empty()) msg += ": " + ex.failures.front();
      throw InputError(msg);
    }
    auto v = etor_of_sequence(s, F, parse_etor_method(f_.method), cap());
    json out;
    out["etor_alpha"] = v.value;
    out["tsplit"] = v.tsplit;
    if (f_.pretty) {
      out["etor_N"] = v.etor_N;
      out["etor_E"] = v.etor_E;
      out["etor_M"] = v.etor_M;
    }
    emit(f_, out);
    return kOk;
  }

  int betti() {
    require_csv_ok(f_, true);
    const auto& M = p_.module(f_.module);
    const long upto = level(8);
    if (upto < 0) throw InputError("--level must be nonnegative");
    auto b = betti_numbers(M, static_cast<std::size_t>(upto));
    json out;
    out["module"] = f_.module;
    out["betti"] = b;
    if (b.size() >= 6) {
      auto cx = complexity_estimate(b);
      out["complexity"] = cx.complexity ? json(*cx.complexity) : json();
      out["fit_degree"] = cx.fit_degree;
      out["stabilization_index"] = cx.stabilization_index;
      if (!cx.note.empty()) out["note"] = cx.note;
    } else {
      out["complexity"] = json();
      out["note"] = "complexity needs betti numbers up to index 5";
    }
    std::vector<std::vector<std::string>> csv{{"i", "betti"}};
    for (std::size_t i = 0; i < b.size(); ++i) csv.push_back({std::to_string(i), std::to_string(b[i])});
    emit(f_, out, &csv);
    return kOk;
  }

  int intclosure() {
    require_csv_ok(f_, false);
    const auto& F = p_.filtration(f_.filtration);
    const auto I = monomial_exponents(F.ideal);
    const long hi = level(4);
    json rows = json::array();
    bool ok = true;
    for (long n = 0; n <= hi; ++n) {
      auto rep = check_intclosum(I, p_.ring->nvars(), n);
      json r;
      r["n"] = n;
      r["equal"] = rep.equal;
      r["generators"] = rep.lhs;
      if (!rep.equal) r["rhs"] = rep.rhs;
      ok = ok && rep.equal;
      rows.push_back(r);
    }
    json out;
    out["ideal"] = F.describe(*p_.ring);
    out["levels"] = rows;
    out["ok"] = ok;
    emit(f_, out);
    return ok ? kOk : kExpectation;
  }

  int superficial() {
    require_csv_ok(f_, false);
    if (f_.element.empty()) throw InputError("superficial needs --element");
    const auto& M = p_.module(f_.module);
    const auto& F = p_.filtration(f_.filtration);
    const auto w = window().value_or(std::pair<long, long>{f_.c, f_.c + 6});
    auto rep = superficial_check(p_.ring->parse(f_.element), M, F, w.first, w.second, f_.c, cap());
    json out;
    out["element"] = p_.ring->print(p_.ring->parse(f_.element));
    out["ok"] = rep.ok;
    out["failing_n"] = rep.failing_n ? json(*rep.failing_n) : json();
    out["window"] = window_json(rep.window_lo, rep.window_hi);
    out["c"] = rep.c;
    if (!rep.witness.empty()) out["witness"] = rep.witness;
    if (!rep.note.empty()) out["note"] = rep.note;
    emit(f_, out);
    return rep.ok ? kOk : kExpectation;
  }

 private:
  const Flags& f_;
  Problem<K> p_;
};

int catalog_list(const Flags& f) {
  require_csv_ok(f, false);
  json rows = json::array();
  for (const auto& n : catalog::scenario_names()) rows.push_back({{"name", n}, {"description", catalog::scenario_description(n)}});
  emit(f, json{{"scenarios", rows}});
  return kOk;
}

int catalog_run(const Flags& f) {
  require_csv_ok(f, false);
  auto rep = catalog::run_scenario(f.scenario);
  json checks = json::array();
  std::optional<std::size_t> first_bad;
  for (std::size_t i = 0; i < rep.checks.size(); ++i) {
    const auto& c = rep.checks[i];
    checks.push_back({{"quantity", c.quantity},
                      {"expected", c.expected},
                      {"actual", c.actual},
                      {"provenance", catalog::to_string(c.provenance)},
                      {"ok", c.ok}});
    if (!c.ok && !first_bad) first_bad = i;
  }
  json out;
  out["scenario"] = rep.name;
  out["description"] = rep.description;
  out["ok"] = rep.ok();
  out["checks"] = checks;
  if (first_bad) {
    out["first_mismatch"] = rep.checks[*first_bad].quantity;
    out["trace"] = rep.trace;
  }
  emit(f, out);
  return rep.ok() ? kOk : kExpectation;
}

template <class K>
int dispatch(const std::string& cmd, const Flags& f) {
  Runner<K> r(f, load_problem<K>(f.file, f.field));
  if (cmd == "validate") return r.validate();
  if (cmd == "hilbert") return r.hilbert();
  if (cmd == "tor") return r.tor();
  if (cmd == "etor") return r.etor_cmd();
  if (cmd == "tsplit") return r.tsplit();
  if (cmd == "betti") return r.betti();
  if (cmd == "intclosure") return r.intclosure();
  return r.superficial();
}

int run(int argc, char** argv) {
  CLI::App app{"mcmlab: Hilbert coefficients, Tor and e^T of maximal Cohen-Macaulay modules"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();
  Flags f;
  app.add_option("--field", f.field, "0 for the rationals or a prime p");
  app.add_option("--level", f.level, "level for checks; betti and intclosure read it as the top index");
  app.add_option("--window", f.window, "index window a..b");
  app.add_option("--format", f.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--pretty", f.pretty, "human-readable tables");
  app.add_option("--cap-dim", f.cap_dim, "largest quotient dimension to build");

  auto file = [&](CLI::App* sub) { sub->add_option("file", f.file, "problem file")->required()->check(CLI::ExistingFile); };
  auto module = [&](CLI::App* sub) { sub->add_option("--module", f.module)->required(); };
  auto filtration = [&](CLI::App* sub) { sub->add_option("--filtration", f.filtration, "default madic"); };

  auto* validate = app.add_subcommand("validate", "check the ring, modules, filtrations and sequences");
  file(validate);
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function, polynomial and coefficients");
  module(hilbert), filtration(hilbert), file(hilbert);
  auto* tor = app.add_subcommand("tor", "lengths of Tor_i(M, A/F_{n+1})");
  module(tor), filtration(tor), file(tor);
  tor->add_option("--index", f.index, "i, default 1");
  auto* et = app.add_subcommand("etor", "e^T of an MCM module");
  module(et), filtration(et), file(et);
  et->add_option("--method", f.method)->check(CLI::IsMember({"limit", "formula", "both"}));
  auto* ts = app.add_subcommand("tsplit", "e^T of a short exact sequence");
  ts->add_option("--sequence", f.sequence)->required();
  filtration(ts), file(ts);
  ts->add_option("--method", f.method)->check(CLI::IsMember({"limit", "formula", "both"}));
  auto* betti = app.add_subcommand("betti", "Betti numbers and complexity");
  module(betti), file(betti);
  auto* ic = app.add_subcommand("intclosure", "integral closure of (I, X)^n for a monomial filtration ideal");
  filtration(ic), file(ic);
  auto* sup = app.add_subcommand("superficial", "superficiality of an element on a module");
  module(sup), filtration(sup), file(sup);
  sup->add_option("--element", f.element)->required();
  sup->add_option("--c", f.c, "default 1");
  auto* cat = app.add_subcommand("catalog", "built-in scenarios");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "scenario names");
  auto* runsc = cat->add_subcommand("run", "run one scenario");
  runsc->add_option("name", f.scenario)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (list->parsed()) return catalog_list(f);
    if (runsc->parsed()) return catalog_run(f);
    const std::string cmd = app.get_subcommands().front()->get_name();
    const auto p = problem_field(f.file, f.field);
    return p == 0 ? dispatch<Rational>(cmd, f) : dispatch<Fp>(cmd, f);
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return kInvariant;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInvariant;
  }
}

}  // namespace
}  // namespace mcmlab::cli

int main(int argc, char** argv) { return mcmlab::cli::run(argc, argv); }
