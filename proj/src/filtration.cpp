#include "mcmlab/filtration.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "mcmlab/errors.hpp"
#include "mcmlab/parallel.hpp"

namespace mcmlab {

namespace {

long determinant(std::vector<std::vector<long>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  if (n == 1) return m[0][0];
  long det = 0;
  for (std::size_t c = 0; c < n; ++c) {
    if (m[0][c] == 0) continue;
    std::vector<std::vector<long>> minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<long> row;
      for (std::size_t k = 0; k < n; ++k) {
        if (k != c) row.push_back(m[r][k]);
      }
      minor.push_back(row);
    }
    const long term = m[0][c] * determinant(minor);
    det += c % 2 == 0 ? term : -term;
  }
  return det;
}

// Vector orthogonal to the rows of a (v-1) x v matrix, by cofactors.
std::vector<long> cross(const std::vector<std::vector<long>>& rows, std::size_t v) {
  std::vector<long> w(v);
  for (std::size_t k = 0; k < v; ++k) {
    std::vector<std::vector<long>> m;
    for (const auto& r : rows) {
      std::vector<long> row;
      for (std::size_t j = 0; j < v; ++j) {
        if (j != k) row.push_back(r[j]);
      }
      m.push_back(row);
    }
    const long d = determinant(m);
    w[k] = k % 2 == 0 ? d : -d;
  }
  return w;
}

long dot(const std::vector<long>& a, const std::vector<long>& b) {
  long s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class F>
void for_each_subset(std::size_t n, std::size_t k, F&& f) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  if (k > n) return;
  while (true) {
    f(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

template <class K>
Polynomial<K> monomial_poly(const RingSpec<K>& ring, const Exponent& e) {
  Monomial m(ring.nvars());
  for (std::size_t i = 0; i < e.size(); ++i) m.set(i, static_cast<unsigned>(e[i]));
  return Polynomial<K>(m, ring.scalar(1));
}

template <class K>
std::vector<Polynomial<K>> products(const std::vector<Polynomial<K>>& a, const std::vector<Polynomial<K>>& b,
                                    const RingSpec<K>& ring) {
  std::vector<Polynomial<K>> out;
  std::set<std::string> seen;
  for (const auto& p : a) {
    for (const auto& q : b) {
      auto r = p * q;
      if (r.is_zero()) continue;
      if (seen.insert(ring.print(r)).second) out.push_back(r);
    }
  }
  return out;
}

// Products of n generators, one per multiset of indices.
template <class K>
std::vector<Polynomial<K>> power_gens(const RingSpec<K>& ring, const std::vector<Polynomial<K>>& I, long n) {
  std::vector<Polynomial<K>> out{ring.constant(1)};
  for (long k = 0; k < n; ++k) out = products(out, I, ring);
  return out;
}

std::string print_vector(const std::vector<std::string>& parts) {
  if (parts.size() == 1) return parts.front();
  std::string s = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? ", " : "") + parts[i];
  return s + ")";
}

template <class K>
class MembershipCache {
 public:
  // fallback_level > 0 allows ideals that are not m-primary, tested modulo m^{fallback_level+1}.
  MembershipCache(RingPtr<K> ring, const FiltrationSpec<K>& F, std::size_t cap, unsigned fallback_level = 0)
      : ring_(std::move(ring)), F_(F), cap_(cap), fallback_level_(fallback_level) {}

  const TruncatedAlgebra<K>& quotient(long n) {
    auto it = cache_.find(n);
    if (it == cache_.end()) {
      auto gens = filtration_gens(*ring_, F_, n);
      try {
        it = cache_.emplace(n, build_certified(ring_, gens, static_cast<unsigned>(std::max(1L, n)), cap_)).first;
      } catch (const CapExceeded&) {
        if (fallback_level_ == 0) throw;
        truncated_.insert(n);
        it = cache_.emplace(n, build_truncation(ring_, gens, fallback_level_, cap_)).first;
      }
    }
    return it->second;
  }
  bool contains(long n, const Polynomial<K>& p) { return quotient(n).is_zero(p); }
  const std::set<long>& truncated() const { return truncated_; }

 private:
  RingPtr<K> ring_;
  const FiltrationSpec<K>& F_;
  std::size_t cap_;
  unsigned fallback_level_;
  std::map<long, TruncatedAlgebra<K>> cache_;
  std::set<long> truncated_;
};

template <class K>
std::int64_t length_of_quotient(const PolyMatrix<K>& P, const TruncatedAlgebra<K>& T) {
  const auto L = tensor_map(P, T);
  return static_cast<std::int64_t>(P.rows() * T.dim() - L.rank());
}

}  // namespace

NewtonPolyhedron::NewtonPolyhedron(std::vector<Exponent> gens, std::size_t nvars)
    : gens_(std::move(gens)), nvars_(nvars) {
  if (gens_.empty()) throw InputError("a monomial ideal needs at least one generator");
  for (const auto& g : gens_) {
    if (g.size() != nvars_) throw InputError("exponent vector of the wrong length");
  }
  std::vector<std::vector<long>> pool;
  for (std::size_t a = 0; a < gens_.size(); ++a) {
    for (std::size_t b = a + 1; b < gens_.size(); ++b) {
      std::vector<long> d(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) d[i] = gens_[b][i] - gens_[a][i];
      pool.push_back(d);
    }
  }
  for (std::size_t i = 0; i < nvars_; ++i) {
    std::vector<long> e(nvars_, 0);
    e[i] = 1;
    pool.push_back(e);
  }
  std::set<std::vector<long>> normals;
  for_each_subset(pool.size(), nvars_ - 1, [&](const std::vector<std::size_t>& idx) {
    std::vector<std::vector<long>> rows;
    for (auto k : idx) rows.push_back(pool[k]);
    auto w = cross(rows, nvars_);
    long g = 0;
    for (long x : w) g = std::gcd(g, std::abs(x));
    if (g == 0) return;
    bool nonneg = true, nonpos = true;
    for (auto& x : w) {
      x /= g;
      nonneg = nonneg && x >= 0;
      nonpos = nonpos && x <= 0;
    }
    if (nonpos) {
      for (auto& x : w) x = -x;
    } else if (!nonneg) {
      return;
    }
    normals.insert(w);
  });
  for (const auto& w : normals) {
    long c = dot(w, gens_.front());
    for (const auto& g : gens_) c = std::min(c, dot(w, g));
    ineq_.emplace_back(w, c);
  }
}

bool NewtonPolyhedron::contains(const Exponent& a, long n) const {
  for (long x : a) {
    if (x < 0) return false;
  }
  for (const auto& [w, c] : ineq_) {
    if (dot(w, a) < n * c) return false;
  }
  return true;
}

std::vector<Exponent> NewtonPolyhedron::closure_generators(long n) const {
  if (n < 0) throw InputError("negative power");
  std::vector<long> bound(nvars_, 0);
  for (const auto& g : gens_) {
    for (std::size_t i = 0; i < nvars_; ++i) bound[i] = std::max(bound[i], n * g[i]);
  }
  std::vector<Exponent> out;
  Exponent a(nvars_, 0);
  while (true) {
    if (contains(a, n)) {
      bool minimal = true;
      for (std::size_t k = 0; k < nvars_ && minimal; ++k) {
        if (a[k] == 0) continue;
        --a[k];
        minimal = !contains(a, n);
        ++a[k];
      }
      if (minimal) out.push_back(a);
    }
    std::size_t i = 0;
    while (i < nvars_ && a[i] == bound[i]) a[i++] = 0;
    if (i == nvars_) break;
    ++a[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

template <class K>
std::vector<Exponent> monomial_exponents(const std::vector<Polynomial<K>>& gens) {
  std::vector<Exponent> out;
  for (const auto& g : gens) {
    if (g.size() != 1) throw InputError("integral closure is only available for monomial ideals");
    const auto& m = g.terms().front().first;
    Exponent e(m.nvars());
    for (std::size_t i = 0; i < m.nvars(); ++i) e[i] = m[i];
    out.push_back(e);
  }
  return out;
}

std::vector<Exponent> minimal_exponents(std::vector<Exponent> e) {
  std::sort(e.begin(), e.end());
  e.erase(std::unique(e.begin(), e.end()), e.end());
  std::vector<Exponent> out;
  for (const auto& a : e) {
    bool dominated = false;
    for (const auto& b : e) {
      if (a == b) continue;
      bool divides = true;
      for (std::size_t i = 0; i < a.size() && divides; ++i) divides = b[i] <= a[i];
      dominated = dominated || divides;
    }
    if (!dominated) out.push_back(a);
  }
  return out;
}

IntClosumReport check_intclosum(const std::vector<Exponent>& I, std::size_t nvars, long n) {
  if (n < 0) throw InputError("n must be nonnegative");
  NewtonPolyhedron NI(I, nvars);
  std::vector<Exponent> J;
  for (auto g : I) {
    g.push_back(0);
    J.push_back(g);
  }
  Exponent X(nvars + 1, 0);
  X[nvars] = 1;
  J.push_back(X);
  NewtonPolyhedron NJ(J, nvars + 1);
  IntClosumReport rep;
  rep.lhs = NJ.closure_generators(n);
  std::vector<Exponent> rhs;
  for (long i = 0; i <= n; ++i) {
    for (auto g : NI.closure_generators(n - i)) {
      g.push_back(i);
      rhs.push_back(g);
    }
  }
  rep.rhs = minimal_exponents(rhs);
  rep.equal = rep.lhs == rep.rhs;
  return rep;
}

template <class K>
FiltrationSpec<K> FiltrationSpec<K>::m_adic(const RingSpec<K>& ring) {
  FiltrationSpec F;
  for (std::size_t i = 0; i < ring.nvars(); ++i) F.ideal.push_back(ring.var(i));
  return F;
}

template <class K>
bool FiltrationSpec<K>::is_m_adic() const {
  if (kind != FiltrationKind::Adic || ideal.empty()) return false;
  const std::size_t v = ideal.front().is_zero() ? 0 : ideal.front().terms().front().first.nvars();
  std::vector<bool> seen(v, false);
  for (const auto& g : ideal) {
    if (g.size() != 1) return false;
    const auto& m = g.terms().front().first;
    if (m.degree() != 1) return false;
    for (std::size_t i = 0; i < v; ++i) {
      if (m[i] == 1) seen[i] = true;
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

template <class K>
std::string FiltrationSpec<K>::describe(const RingSpec<K>& ring) const {
  std::vector<std::string> parts;
  for (const auto& g : ideal) parts.push_back(ring.print(g));
  std::string I = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) I += (i ? ", " : "") + parts[i];
  I += ")";
  switch (kind) {
    case FiltrationKind::Adic:
      return is_m_adic() ? "m-adic" : "adic " + I;
    case FiltrationKind::IntegralClosure:
      return "integral closures of powers of " + I;
    case FiltrationKind::Custom:
      return "custom table to n = " + std::to_string(static_cast<long>(table.size()) - 1) +
             ", then F_n = I F_{n-1} with I = " + I;
  }
  return I;
}

template <class K>
std::vector<Polynomial<K>> filtration_gens(const RingSpec<K>& ring, const FiltrationSpec<K>& F, long n) {
  if (n < 0) throw InputError("filtration index must be nonnegative");
  if (n == 0) return {ring.constant(1)};
  switch (F.kind) {
    case FiltrationKind::Adic:
      return power_gens(ring, F.ideal, n);
    case FiltrationKind::IntegralClosure: {
      NewtonPolyhedron NP(monomial_exponents(F.ideal), ring.nvars());
      std::vector<Polynomial<K>> out;
      for (const auto& e : NP.closure_generators(n)) out.push_back(monomial_poly(ring, e));
      return out;
    }
    case FiltrationKind::Custom: {
      if (F.table.empty()) throw InputError("custom filtration needs at least F_0 in its table");
      const long n0 = static_cast<long>(F.table.size()) - 1;
      if (n <= n0) return F.table[n];
      return products(F.ideal, filtration_gens(ring, F, n - 1), ring);
    }
  }
  return {};
}

template <class K>
HilbertTable hilbert_table(const Module<K>& M, const FiltrationSpec<K>& F, long lo, long hi, std::size_t cap) {
  if (lo < 0 || hi < lo) throw InputError("window must satisfy 0 <= lo <= hi");
  HilbertTable t;
  t.window_lo = lo;
  t.window_hi = hi;
  t.values.assign(hi + 1, 0);
  const auto& P = M.presentation();
  for_each_quotient<K>(M.ring_ptr(), F, hi, cap, [&](long n, const TruncatedAlgebra<K>& T) {
    t.values[n] = length_of_quotient(P, T);
  });
  return t;
}

template <class K>
void for_each_quotient(RingPtr<K> ring, const FiltrationSpec<K>& F, long hi, std::size_t cap,
                       const std::function<void(long, const TruncatedAlgebra<K>&)>& fn) {
  if (hi < 0) return;
  if (F.is_m_adic()) {
    auto T = build_truncation(ring, {}, static_cast<unsigned>(hi), cap);
    parallel_for(hi + 1, [&](std::size_t n) { fn(static_cast<long>(n), T.restrict(static_cast<unsigned>(n))); });
    return;
  }
  parallel_for(hi + 1, [&](std::size_t n) {
    auto gens = filtration_gens(*ring, F, static_cast<long>(n) + 1);
    fn(static_cast<long>(n), build_certified(ring, gens, static_cast<unsigned>(n + 1), cap));
  });
}

PolyFit fit_hilbert(const HilbertTable& table) { return fit_table(table.values, table.window_lo); }

template <class K>
HilbertReport hilbert_coefficients(const Module<K>& M, const FiltrationSpec<K>& F, long max_n, std::size_t cap) {
  const int d = static_cast<int>(M.ring().dim());
  HilbertReport rep;
  rep.fit = fit_auto([&](long hi) { return hilbert_table(M, F, 0, hi, cap).values; }, d, max_n,
                     &rep.table.values);
  rep.table.window_lo = rep.fit.window_lo;
  rep.table.window_hi = rep.fit.window_hi;
  rep.e = binomial_coefficients(rep.fit, d);
  return rep;
}

template <class K>
UlrichReport is_ulrich(const Module<K>& M) {
  auto h = hilbert_coefficients(M, FiltrationSpec<K>::m_adic(M.ring()));
  UlrichReport rep;
  rep.mu = mu(M);
  rep.e0 = h.e[0];
  rep.e1 = h.e.size() > 1 ? h.e[1] : BigInt(0);
  rep.ulrich = BigInt(rep.mu) == rep.e0;
  return rep;
}

bool AdmissibilityReport::ok() const {
  return std::all_of(axioms.begin(), axioms.end(), [](const AxiomResult& a) { return a.ok; });
}

template <class K>
AdmissibilityReport check_admissible(RingPtr<K> ring, const FiltrationSpec<K>& F, long level, std::size_t cap) {
  if (level < 1) throw InputError("level must be at least 1");
  const unsigned fallback = static_cast<unsigned>(4 * level + 8);
  MembershipCache<K> mem(ring, F, cap, fallback);
  AdmissibilityReport rep;
  auto first_outside = [&](long n, const std::vector<Polynomial<K>>& gens) -> std::optional<std::string> {
    for (const auto& g : gens) {
      if (!mem.contains(n, g)) return ring->print(g);
    }
    return std::nullopt;
  };

  AxiomResult powers{"I^n in F_n", true, ""};
  for (long n = 1; n <= level && powers.ok; ++n) {
    if (auto w = first_outside(n, power_gens(*ring, F.ideal, n))) {
      powers.ok = false;
      powers.witness = "n=" + std::to_string(n) + ": " + *w;
    }
  }
  rep.axioms.push_back(powers);

  AxiomResult decreasing{"F_{n+1} in F_n", true, ""};
  for (long n = 0; n < level && decreasing.ok; ++n) {
    if (auto w = first_outside(n, filtration_gens(*ring, F, n + 1))) {
      decreasing.ok = false;
      decreasing.witness = "n=" + std::to_string(n) + ": " + *w;
    }
  }
  rep.axioms.push_back(decreasing);

  AxiomResult product{"F_n F_m in F_{n+m}", true, ""};
  for (long n = 1; n <= level / 2 && product.ok; ++n) {
    for (long m = n; n + m <= level && product.ok; ++m) {
      auto prods = products(filtration_gens(*ring, F, n), filtration_gens(*ring, F, m), *ring);
      if (auto w = first_outside(n + m, prods)) {
        product.ok = false;
        product.witness = "n=" + std::to_string(n) + ", m=" + std::to_string(m) + ": " + *w;
      }
    }
  }
  rep.axioms.push_back(product);

  // F_n = I F_{n-1}, compared in both directions through exact quotients.
  std::vector<bool> equal(level + 1, false);
  for (long n = 1; n <= level; ++n) {
    auto IF = products(F.ideal, filtration_gens(*ring, F, n - 1), *ring);
    auto Fn = filtration_gens(*ring, F, n);
    std::optional<TruncatedAlgebra<K>> T;
    try {
      T = build_certified(ring, IF, static_cast<unsigned>(n), cap);
    } catch (const CapExceeded&) {
      T = build_truncation(ring, IF, fallback, cap);
    }
    bool eq = !first_outside(n, IF).has_value();
    for (const auto& g : Fn) eq = eq && T->is_zero(g);
    equal[n] = eq;
  }
  long n0 = level;
  while (n0 > 0 && equal[n0]) --n0;
  AxiomResult tail{"F_n = I F_{n-1} for large n", n0 < level, ""};
  if (n0 < level) {
    rep.stable_from = n0;
    tail.witness = "holds for " + std::to_string(n0 + 1) + " <= n <= " + std::to_string(level);
  } else {
    tail.witness = "fails at n=" + std::to_string(level);
  }
  if (F.kind == FiltrationKind::Custom && n0 > static_cast<long>(F.table.size()) - 1) {
    tail.ok = false;
    tail.witness += " beyond the declared index " + std::to_string(F.table.size() - 1);
  }
  rep.axioms.push_back(tail);
  rep.note = "checked for indices up to " + std::to_string(level);
  if (!mem.truncated().empty()) {
    rep.note += "; some F_n are not m-primary and were tested modulo m^" + std::to_string(fallback + 1);
  }
  if (F.kind == FiltrationKind::IntegralClosure) {
    rep.note += "; integral closure computed in the ambient polynomial ring from the Newton polyhedron";
  }
  return rep;
}

template <class K>
SuperficialReport superficial_check(const Polynomial<K>& x, const Module<K>& M, const FiltrationSpec<K>& F,
                                    long lo, long hi, long c, std::size_t cap) {
  if (c < 0 || lo < c || hi < lo) throw InputError("window must satisfy c <= lo <= hi");
  const auto& ring = M.ring();
  MembershipCache<K> mem(M.ring_ptr(), F, cap);
  if (!mem.contains(1, x) || mem.contains(2, x)) {
    throw InputError("the element " + ring.print(x) + " must lie in F_1 but not in F_2");
  }
  SuperficialReport rep;
  rep.window_lo = lo;
  rep.window_hi = hi;
  rep.c = c;
  rep.note = "verified only for n in [" + std::to_string(lo) + ", " + std::to_string(hi) +
             "]; not a statement about all n";
  const auto& P = M.presentation();
  const std::size_t r = P.rows();
  const auto one = ring.scalar(1);
  for (long n = lo; n <= hi; ++n) {
    const auto& T = mem.quotient(n + 1);
    const std::size_t dimT = T.dim(), dimV = r * dimT;
    const auto basis = T.basis();
    Echelon<K> rel(dimV);
    for (const auto& col : tensor_map(P, T).columns) rel.insert(col);

    auto block = [&](std::size_t i, const Polynomial<K>& p) {
      SparseVec<K> v;
      for (const auto& [b, a] : T.coords(p)) v.emplace_back(static_cast<std::uint32_t>(i * dimT + b), a);
      return v;
    };
    // colon: v with x v in the relations
    std::vector<SparseVec<K>> images;
    for (std::size_t i = 0; i < r; ++i) {
      for (const auto& m : basis) images.push_back(rel.reduce(block(i, x * Polynomial<K>(m, one))));
    }
    std::vector<SparseVec<K>> colon = nullspace(images, dimV, one);

    auto span_of = [&](long k) {
      Echelon<K> e = rel;
      for (const auto& g : filtration_gens(ring, F, k)) {
        for (std::size_t i = 0; i < r; ++i) {
          for (const auto& m : basis) e.insert(block(i, g * Polynomial<K>(m, one)));
        }
      }
      return e;
    };
    Echelon<K> Sc = span_of(c), Sn = span_of(n);
    // vectors of the colon lying in S_c: combinations a with sum a_j colon_j in S_c
    std::vector<SparseVec<K>> residues;
    for (const auto& v : colon) residues.push_back(Sc.reduce(v));
    std::vector<SparseVec<K>> inter;
    for (const auto& a : nullspace(residues, dimV, one)) {
      SparseVec<K> u;
      for (const auto& [j, coef] : a) u = add_scaled(u, colon[j], coef);
      inter.push_back(u);
    }
    std::optional<SparseVec<K>> witness;
    for (const auto& u : inter) {
      auto red = Sn.reduce(u);
      if (!red.empty()) {
        witness = red;
        break;
      }
    }
    if (witness) {
      rep.ok = false;
      rep.failing_n = n;
      std::vector<SparseVec<K>> parts(r);
      for (const auto& [idx, a] : *witness) {
        parts[idx / dimT].emplace_back(static_cast<std::uint32_t>(idx % dimT), a);
      }
      std::vector<std::string> text;
      for (const auto& p : parts) text.push_back(ring.print(T.from_coords(p)));
      rep.witness = print_vector(text);
      return rep;
    }
  }
  return rep;
}

#define MCMLAB_INSTANTIATE(K)                                                                          \
  template std::vector<Exponent> monomial_exponents<K>(const std::vector<Polynomial<K>>&);             \
  template struct FiltrationSpec<K>;                                                                   \
  template std::vector<Polynomial<K>> filtration_gens<K>(const RingSpec<K>&, const FiltrationSpec<K>&, \
                                                         long);                                        \
  template HilbertTable hilbert_table<K>(const Module<K>&, const FiltrationSpec<K>&, long, long,       \
                                         std::size_t);                                                 \
  template void for_each_quotient<K>(RingPtr<K>, const FiltrationSpec<K>&, long, std::size_t,            \
                                     const std::function<void(long, const TruncatedAlgebra<K>&)>&); \
  template HilbertReport hilbert_coefficients<K>(const Module<K>&, const FiltrationSpec<K>&, long,     \
                                                 std::size_t);                                         \
  template UlrichReport is_ulrich<K>(const Module<K>&);                                                \
  template AdmissibilityReport check_admissible<K>(RingPtr<K>, const FiltrationSpec<K>&, long,         \
                                                   std::size_t);                                       \
  template SuperficialReport superficial_check<K>(const Polynomial<K>&, const Module<K>&,              \
                                                  const FiltrationSpec<K>&, long, long, long,          \
                                                  std::size_t);

MCMLAB_INSTANTIATE(Fp)
MCMLAB_INSTANTIATE(Rational)

}  // namespace mcmlab
