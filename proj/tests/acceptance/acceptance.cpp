// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "mcmlab/catalog.hpp"
#include "mcmlab/errors.hpp"

using namespace mcmlab;
using namespace mcmlab::catalog;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

bool all_zero(const std::vector<Fp>& v) {
  return std::all_of(v.begin(), v.end(), [](const Fp& c) { return c.is_zero(); });
}

bool same_ring(const RingSpec<Fp>& a, const RingSpec<Fp>& b) {
  return a.vars == b.vars && a.relations == b.relations && a.field == b.field;
}

Outcome quadric_invariants() {
  const auto t0 = Clock::now();
  auto A = node();
  auto h = hilbert_coefficients(Module<Fp>::free(A, 1), FiltrationSpec<Fp>::m_adic(*A));
  const double t = since(t0);
  const bool ok = h.e.size() == 2 && h.e[0] == 2 && h.e[1] == 1 && h.fit.stabilization_index <= 2 && t < 1.0;
  return {ok, "e0=" + h.e[0].str() + " e1=" + h.e[1].str() + " stabilization " +
                  std::to_string(h.fit.stabilization_index) + ", " + secs(t)};
}

Outcome etor_equals_mu() {
  const auto t0 = Clock::now();
  auto A = node();
  auto F = FiltrationSpec<Fp>::m_adic(*A);
  auto x = node_quotient(A, "x");
  auto y = node_quotient(A, "y");
  const std::vector<std::pair<Module<Fp>, std::int64_t>> cases{{x, 1}, {y, 1}, {direct_sum(x, y), 2}};
  bool ok = true;
  std::ostringstream d;
  for (const auto& [M, want] : cases) {
    auto e = etor(M, F, EtorMethod::Both);
    ok = ok && e.value == want && static_cast<std::int64_t>(mu(M)) == want && e.method_agreement &&
         e.limit_value == e.formula_value && e.window_lo >= 1 && e.window_hi <= 12;
    d << e.value << "(window " << e.window_lo << ".." << e.window_hi << ") ";
  }
  const double t = since(t0);
  ok = ok && t < 2.0;
  d << secs(t);
  return {ok, d.str()};
}

Outcome freeness() {
  bool ok = true;
  std::ostringstream d;
  std::size_t n = 0;
  for (const auto& m : modules()) {
    auto F = FiltrationSpec<Fp>::m_adic(m.module.ring());
    const auto v = etor(m.module, F).value;
    const bool good = m.free ? v == 0 : v >= 1;
    if (!good) d << m.name << "=" << v << " ";
    ok = ok && good && is_free(m.module) == m.free;
    ++n;
  }
  d << n << " modules";
  return {ok, d.str()};
}

ShortExactSequence<Fp> node_sequence(const RingPtr<Fp>& r) {
  return {node_quotient(r, "y"), Module<Fp>::free(r, 1), node_quotient(r, "x"), PolyMatrix<Fp>::parse(*r, {{"x"}}),
          PolyMatrix<Fp>::parse(*r, {{"1"}})};
}

Outcome non_tsplit() {
  auto A = node();
  auto F = FiltrationSpec<Fp>::m_adic(*A);
  auto s = node_sequence(A);
  auto v = etor_of_sequence(s, F);
  const bool t = is_tsplit(s, F);
  return {verify_exactness(s).ok && v.value == 2 && !t,
          "e^T(alpha)=" + std::to_string(v.value) + " tsplit=" + (t ? "true" : "false")};
}

Outcome ext_exhaustion() {
  auto A = node(3);
  auto F = FiltrationSpec<Fp>::m_adic(*A);
  ExtGroup<Fp> ext(node_quotient(A, "x"), node_quotient(A, "y"));
  const auto all = ext.elements();
  bool ok = all.size() == 3;
  std::size_t split = 0;
  for (const auto& c : all) {
    const bool t = is_tsplit(ext.extension(c), F);
    ok = ok && t == all_zero(c);
    split += t;
  }
  return {ok, std::to_string(all.size()) + " classes, " + std::to_string(split) + " T-split"};
}

Outcome closure() {
  const auto t0 = Clock::now();
  bool ok = true;
  std::size_t groups = 0, elements = 0;
  std::ostringstream d;
  for (const auto& pair : ext_pairs(3)) {
    ExtGroup<Fp> ext(pair.M, pair.N);
    std::size_t size = 1;
    for (std::size_t i = 0; i < ext.dim(); ++i) size *= 3;
    if (size > 27) continue;
    auto rep = tsplit_closure(ext, FiltrationSpec<Fp>::m_adic(pair.M.ring()), 27);
    if (!rep.ok()) d << pair.name << ": " << rep.failures.front() << "; ";
    ok = ok && rep.ok();
    ++groups;
    elements += rep.size;
  }
  const double t = since(t0);
  ok = ok && groups > 0 && t < 30.0;
  d << groups << " groups, " << elements << " classes, " << secs(t);
  return {ok, d.str()};
}

Polynomial<Fp> random_homogeneous(const RingSpec<Fp>& ring, std::mt19937& rng) {
  const long deg = std::uniform_int_distribution<long>(0, 3)(rng);
  const auto monos = monomials_of_weighted_degree(ring.weights, deg);
  Polynomial<Fp> r = ring.constant(0);
  std::uniform_int_distribution<std::int64_t> coef(0, ring.field.characteristic - 1);
  for (const auto& m : monos) r = r + Polynomial<Fp>(m, ring.scalar(coef(rng)));
  return r;
}

Outcome subadditivity() {
  std::mt19937 rng(20240601);
  const auto seeds = sequences();
  const auto pool = modules();
  std::size_t done = 0, violations = 0, skipped = 0;
  std::ostringstream d;
  while (done < 200) {
    const auto& seed = seeds[rng() % seeds.size()].sequence;
    const auto& ring = seed.M.ring();
    std::vector<const Module<Fp>*> same;
    for (const auto& m : pool) {
      if (same_ring(m.module.ring(), ring)) same.push_back(&m.module);
    }
    const auto& other = *same[rng() % same.size()];
    std::optional<ShortExactSequence<Fp>> s;
    try {
      switch (rng() % 4) {
        case 0: {
          auto r = random_homogeneous(ring, rng);
          s = pushout(seed, PolyMatrix<Fp>::identity(ring, seed.N.num_generators()).scaled(r), seed.N);
          break;
        }
        case 1: {
          auto r = random_homogeneous(ring, rng);
          s = pullback(seed, PolyMatrix<Fp>::identity(ring, seed.M.num_generators()).scaled(r), seed.M);
          break;
        }
        case 2: {
          auto target = direct_sum(seed.N, other);
          auto g = PolyMatrix<Fp>::vstack(PolyMatrix<Fp>::identity(ring, seed.N.num_generators()),
                                          PolyMatrix<Fp>(other.num_generators(), seed.N.num_generators()));
          s = pushout(seed, g, target);
          break;
        }
        default: {
          auto source = direct_sum(seed.M, other);
          auto h = PolyMatrix<Fp>::hstack(PolyMatrix<Fp>::identity(ring, seed.M.num_generators()),
                                          PolyMatrix<Fp>(seed.M.num_generators(), other.num_generators()));
          s = pullback(seed, h, source);
          break;
        }
      }
    } catch (const NotGraded&) {
      ++skipped;
      continue;
    }
    ++done;
    try {
      auto v = etor_of_sequence(*s, FiltrationSpec<Fp>::m_adic(ring));
      if (v.etor_E > v.etor_M + v.etor_N) ++violations;
    } catch (const InvariantViolation& e) {
      if (violations == 0) d << e.what() << "; ";
      ++violations;
    }
  }
  d << done << " sequences, " << violations << " violations";
  if (skipped) d << ", " << skipped << " draws without a grading redrawn";
  return {violations == 0, d.str()};
}

Outcome unit_invariance() {
  std::mt19937 rng(7);
  std::uniform_int_distribution<std::int64_t> unit(1, 32002);
  std::size_t checked = 0, bad = 0;
  std::ostringstream d;
  for (const auto& [name, s] : sequences()) {
    auto F = FiltrationSpec<Fp>::m_adic(s.M.ring());
    auto base = etor_of_sequence(s, F);
    for (int i = 0; i < 50; ++i) {
      auto u = s.M.ring().constant(unit(rng));
      auto v = etor_of_sequence(scalar_mult(u, s), F, base.etor_N, base.etor_M);
      ++checked;
      if (v.value != base.value) {
        if (bad == 0) d << name << " changed under a unit; ";
        ++bad;
      }
    }
  }
  d << checked << " checks";
  return {bad == 0, d.str()};
}

Outcome periodicity() {
  std::size_t mods = 0;
  bool ok = true;
  std::ostringstream d;
  for (const auto& m : modules()) {
    if (!m.module.is_mf()) continue;
    auto F = FiltrationSpec<Fp>::m_adic(m.module.ring());
    auto d4 = resolution(m.module, 5);
    std::vector<std::vector<std::int64_t>> t;
    for (std::size_t i = 1; i <= 4; ++i) t.push_back(tor_table(i, d4, m.module.ring_ptr(), F, 0, 12).values);
    if (t[0] != t[2] || t[1] != t[3]) {
      d << m.name << " ";
      ok = false;
    }
    ++mods;
  }
  d << mods << " factorization modules, n <= 12";
  return {ok, d.str()};
}

Outcome integral_closure() {
  const auto t0 = Clock::now();
  bool ok = true;
  for (long n = 0; n <= 4; ++n) {
    ok = ok && check_intclosum({{2}}, 1, n).equal;
    ok = ok && check_intclosum({{2, 0}, {0, 3}}, 2, n).equal;
  }
  const double t = since(t0);
  return {ok && t < 5.0, "I = (x^2), (x^2, y^3), n <= 4, " + secs(t)};
}

Outcome complexity() {
  auto A = ci_ring();
  auto b = betti_numbers(residue_field(A), 10);
  bool ok = b.size() == 11;
  for (std::size_t n = 0; ok && n <= 10; ++n) ok = b[n] == 2 * n + 1;
  auto cx = complexity_estimate(b);
  ok = ok && cx.complexity == 2;
  std::ostringstream d;
  for (auto v : b) d << v << " ";
  d << "complexity " << (cx.complexity ? std::to_string(*cx.complexity) : "none");
  return {ok, d.str()};
}

Outcome finite_length() {
  auto ext = ext_exhaustion();
  auto A = node();
  auto F = FiltrationSpec<Fp>::m_adic(*A);
  auto k = annihilation_index(node_sequence(A), A->parse("x + y"), F);
  return {ext.ok && k.has_value(),
          "criterion 5 " + std::string(ext.ok ? "holds" : "fails") + ", (x+y)^" +
              (k ? std::to_string(*k) : std::string("?")) + " kills the class"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"quadric invariants", quadric_invariants},
      {"e^T = mu on the node", etor_equals_mu},
      {"e^T vanishes exactly on free modules", freeness},
      {"non-T-split node sequence", non_tsplit},
      {"Ext^1 over F_3 exhausted", ext_exhaustion},
      {"T-split classes closed under sums and multiples", closure},
      {"e^T(E) <= e^T(M) + e^T(N) on random sequences", subadditivity},
      {"e^T of sequences invariant under units", unit_invariance},
      {"Tor_i = Tor_{i+2} for factorization modules", periodicity},
      {"integral closure of (I, X)^n", integral_closure},
      {"Betti numbers and complexity of k", complexity},
      {"finite annihilation of the node class", finite_length},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.ok;
    std::printf("%s %2zu %s: %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
