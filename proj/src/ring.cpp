#include "mcmlab/ring.hpp"

#include <numeric>

#include "mcmlab/errors.hpp"

namespace mcmlab {

template <class K>
RingDiagnostics validate_ring(const RingSpec<K>& ring) {
  validate_field(ring.field);
  if (ring.vars.empty()) throw InputError("ring needs at least one variable");
  if (ring.vars.size() > kMaxVars) throw InputError("at most 8 variables are supported");
  RingDiagnostics diag;
  diag.dimension = ring.dim();
  if (diag.dimension <= 0) {
    throw InputError("ring dimension d = " + std::to_string(ring.nvars()) + " - " +
                     std::to_string(ring.relations.size()) + " = " +
                     std::to_string(diag.dimension) + " must be at least 1");
  }
  diag.quadric = !ring.relations.empty();
  for (const auto& f : ring.relations) {
    if (f.is_zero()) throw InputError("relation is the zero polynomial");
    if (!f.constant_term().is_zero()) {
      throw InputError("relation " + ring.print(f) + " has a nonzero constant term");
    }
    unsigned order = f.lowest_degree();
    diag.relation_orders.push_back(order);
    if (order < 2) {
      diag.orders_at_least_two = false;
      diag.notes.push_back("relation " + ring.print(f) + " has a linear term; the ring is not in embedded form");
    }
    if (order != 2) diag.quadric = false;
  }
  diag.weights = ring.weights;
  if (ring.weights.empty()) diag.notes.push_back("no positive grading found; graded operations unavailable");
  return diag;
}

template <class K>
std::optional<std::vector<int>> find_weights(std::span<const Polynomial<K>> relations,
                                             std::size_t nvars, int max_weight) {
  auto homogeneous = [&](const std::vector<int>& w) {
    for (const auto& f : relations) {
      if (!f.is_homogeneous(w)) return false;
    }
    return true;
  };
  std::vector<int> w(nvars, 1);
  if (homogeneous(w)) return w;
  if (nvars > 4) max_weight = std::min(max_weight, 6);
  for (int top = 2; top <= max_weight; ++top) {
    std::fill(w.begin(), w.end(), 1);
    while (true) {
      if (*std::max_element(w.begin(), w.end()) == top && homogeneous(w)) {
        int g = 0;
        for (int x : w) g = std::gcd(g, x);
        if (g == 1) return w;
      }
      std::size_t i = 0;
      while (i < nvars && w[i] == top) w[i++] = 1;
      if (i == nvars) break;
      ++w[i];
    }
  }
  return std::nullopt;
}

template <class K>
RingPtr<K> make_ring(const std::vector<std::string>& vars, const std::vector<std::string>& relations,
                     const FieldSpec& field, std::optional<std::vector<int>> weights) {
  validate_field(field);
  if (!Scalars<K>::matches(field)) throw InputError("coefficient type does not match the field");
  auto ring = std::make_shared<RingSpec<K>>();
  ring->vars = vars.empty() ? default_variable_names(1) : vars;
  ring->field = field;
  for (const auto& r : relations) ring->relations.push_back(ring->parse(r));
  if (weights) {
    if (weights->size() != ring->nvars()) throw InputError("one weight per variable is required");
    for (int x : *weights) {
      if (x <= 0) throw InputError("weights must be positive");
    }
    for (const auto& f : ring->relations) {
      if (!f.is_homogeneous(*weights)) {
        throw InputError("relation " + ring->print(f) + " is not homogeneous for the given weights");
      }
    }
    ring->weights = *weights;
  } else if (auto w = find_weights<K>(ring->relations, ring->nvars())) {
    ring->weights = *w;
  }
  validate_ring(*ring);
  return ring;
}

template <class K>
RingPtr<K> ambient_ring(const RingSpec<K>& ring) {
  auto q = std::make_shared<RingSpec<K>>(ring);
  q->relations.clear();
  return q;
}

template RingDiagnostics validate_ring<Fp>(const RingSpec<Fp>&);
template RingDiagnostics validate_ring<Rational>(const RingSpec<Rational>&);
template std::optional<std::vector<int>> find_weights<Fp>(std::span<const Polynomial<Fp>>,
                                                          std::size_t, int);
template std::optional<std::vector<int>> find_weights<Rational>(
    std::span<const Polynomial<Rational>>, std::size_t, int);
template RingPtr<Fp> make_ring<Fp>(const std::vector<std::string>&, const std::vector<std::string>&,
                                   const FieldSpec&, std::optional<std::vector<int>>);
template RingPtr<Rational> make_ring<Rational>(const std::vector<std::string>&,
                                               const std::vector<std::string>&, const FieldSpec&,
                                               std::optional<std::vector<int>>);
template RingPtr<Fp> ambient_ring<Fp>(const RingSpec<Fp>&);
template RingPtr<Rational> ambient_ring<Rational>(const RingSpec<Rational>&);

}  // namespace mcmlab
