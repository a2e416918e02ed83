#pragma once

#include <optional>
#include <vector>

#include "bhk/homotopy.hpp"

namespace bhk {

struct RandomComplexOptions {
  int lo = 0, hi = 2;
  std::size_t max_pieces = 2;    // elementary Z -id-> Z pieces per adjacent degree pair
  std::size_t max_homology = 1;  // zero-differential summands per degree
  /// Fixed homology ranks by degree - lo; overrides max_homology. Homology
  /// labels get deterministic weights so two complexes can share H.
  std::optional<std::vector<std::size_t>> homology_ranks;
  std::size_t transvections = 3;  // per degree
  long coeff = 2;
  long max_weight = 3;
  std::size_t group_letters = 0;  // group coefficients in transvections (group modules only)
};

/// Complex conjugated from a standard form E + H (E elementary acyclic, H with
/// zero differential) by degreewise unimodular basis changes.
struct RandomComplex {
  ChainComplex complex;
  ChainComplex homology;
  HomotopyCertificate to_homology;  // complex -> homology
  std::optional<ContractionCertificate> contraction;  // when H = 0
};

/// oracle may be null for plain modules.
RandomComplex random_complex(OraclePtr oracle, Rng& rng, const RandomComplexOptions& opts = {},
                             const std::string& name = "C");

/// G_B phi F_A + (d s + s d) with random phi between the homologies and random s.
ChainMap random_chain_map(const RandomComplex& a, const RandomComplex& b, Rng& rng, long coeff = 2);

/// d s + s d for a random degree +1 family s.
ChainMap random_nullhomotopic_map(const ChainComplex& a, const ChainComplex& b, Rng& rng, long coeff = 2);

struct RandomIsomorphism {
  ChainComplex target;
  ChainMap f, inverse;
};

/// Conjugates c by a further degreewise basis change: f is an isomorphism
/// onto the conjugated complex with explicit inverse.
RandomIsomorphism random_isomorphism(const ChainComplex& c, Rng& rng, const RandomComplexOptions& opts = {});

}  // namespace bhk
