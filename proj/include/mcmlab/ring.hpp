#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mcmlab/polynomial.hpp"

namespace mcmlab {

/// Quotient A = k[x1..xv]/(f1..fc), read as a local ring at the origin.
/// Weights, when present, make every relation weighted-homogeneous.
template <class K>
struct RingSpec {
  std::vector<std::string> vars;
  std::vector<Polynomial<K>> relations;
  FieldSpec field;
  std::vector<int> weights;
  bool gorenstein = true;

  std::size_t nvars() const { return vars.size(); }
  long dim() const { return static_cast<long>(vars.size()) - static_cast<long>(relations.size()); }
  bool graded() const { return !weights.empty(); }
  bool is_hypersurface() const { return relations.size() == 1; }

  K scalar(std::int64_t v) const { return Scalars<K>::from_int(field, v); }
  Polynomial<K> constant(std::int64_t v) const { return Polynomial<K>::constant(nvars(), scalar(v)); }
  Polynomial<K> var(std::size_t i) const {
    return Polynomial<K>(Monomial::variable(nvars(), i), scalar(1));
  }
  Polynomial<K> parse(std::string_view text) const {
    return parse_polynomial<K>(text, vars, field);
  }
  std::string print(const Polynomial<K>& p) const { return print_polynomial(p, vars); }
};

template <class K>
using RingPtr = std::shared_ptr<const RingSpec<K>>;

struct RingDiagnostics {
  long dimension = 0;
  std::vector<unsigned> relation_orders;
  bool orders_at_least_two = true;
  bool quadric = false;
  std::vector<int> weights;
  std::vector<std::string> notes;
};

/// Throws InputError when d <= 0 or a relation is a unit or zero.
template <class K>
RingDiagnostics validate_ring(const RingSpec<K>& ring);

/// Smallest positive weights (searched by maximum weight, all-ones first)
/// making every relation homogeneous; nullopt when none up to the bound.
template <class K>
std::optional<std::vector<int>> find_weights(std::span<const Polynomial<K>> relations,
                                             std::size_t nvars, int max_weight = 12);

/// Parses, validates and grades a ring. Passing weights skips the search but
/// they are still checked.
template <class K>
RingPtr<K> make_ring(const std::vector<std::string>& vars, const std::vector<std::string>& relations,
                     const FieldSpec& field, std::optional<std::vector<int>> weights = std::nullopt);

/// Same ring with no relations: the ambient regular ring Q.
template <class K>
RingPtr<K> ambient_ring(const RingSpec<K>& ring);

}  // namespace mcmlab
