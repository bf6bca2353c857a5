#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mcmlab/homology.hpp"

namespace mcmlab::catalog {

/// Where an expected value comes from.
enum class Provenance { Reference, Independent, Construction };

/// "reference value", "independent computation" or "by construction".
std::string to_string(Provenance p);

/// k[x,y]/(xy).
RingPtr<Fp> node(std::uint32_t p = 32003);
/// k[x,y]/(x^2 + y^{n+1}).
RingPtr<Fp> simple_curve(int n, std::uint32_t p = 32003);
/// k[x,y,z]/(x^2, y^2).
RingPtr<Fp> ci_ring(std::uint32_t p = 32003);

/// A/(v) on the node as the factorization (v | w), {v, w} = {x, y}.
Module<Fp> node_quotient(const RingPtr<Fp>& r, const std::string& v);
/// coker [[x, y^j], [y^{n+1-j}, -x]], a factorization of x^2 + y^{n+1}.
Module<Fp> curve_module(const RingPtr<Fp>& r, int n, int j);
/// A/m.
Module<Fp> residue_field(const RingPtr<Fp>& r);

struct CatalogModule {
  std::string name;
  Module<Fp> module;
  bool free = false;
};

/// MCM modules over the node, the curves x^2 + y^3, x^2 + y^4 and the ring k[x,y,z]/(x^2, y^2).
std::vector<CatalogModule> modules(std::uint32_t p = 32003);

struct CatalogSequence {
  std::string name;
  ShortExactSequence<Fp> sequence;
};

/// Explicit sequences: the non-split node sequences, split sequences,
/// cosyzygy sequences and extensions by homogeneous Ext classes.
std::vector<CatalogSequence> sequences(std::uint32_t p = 32003);

struct CatalogPair {
  std::string name;
  Module<Fp> M;
  Module<Fp> N;
};

/// Pairs (M, N) of factorization modules whose Ext^1(M, N) is used in tests.
std::vector<CatalogPair> ext_pairs(std::uint32_t p = 3);

struct ClosureReport {
  std::size_t size = 0;
  std::size_t tsplit = 0;
  std::size_t sums_checked = 0;
  std::size_t scalars_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Exhaustive check that the T-split classes of Ext^1(M, N) are closed under
/// Baer sums and under multiplication by field scalars and the variables.
/// Sums and multiples of classes of one internal degree are built as
/// sequences (Baer sum, pushout); the others through sums of cocycles.
ClosureReport tsplit_closure(const ExtGroup<Fp>& ext, const FiltrationSpec<Fp>& F, std::size_t limit = 27);

struct Expectation {
  std::string quantity;
  std::string expected;
  std::string actual;
  Provenance provenance = Provenance::Construction;
  bool ok = false;
};

struct ScenarioReport {
  std::string name;
  std::string description;
  std::vector<Expectation> checks;
  std::vector<std::string> trace;
  bool ok() const;
};

std::vector<std::string> scenario_names();
std::string scenario_description(const std::string& name);
/// InputError for an unknown name.
ScenarioReport run_scenario(const std::string& name);

}  // namespace mcmlab::catalog
