#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bhk/homotopy.hpp"

namespace bhk {

/// Sum of (-1)^n rank C_n. Throws std::invalid_argument for non-finite complexes.
Integer euler_class(const ChainComplex& c);

struct FinitenessExperiment {
  ChainComplex complex;
  ChainComplex model;  // candidate finite model
  std::optional<HomotopyCertificate> certificate;  // complex -> model
  std::string cls = "L";
};

struct FinitenessReport {
  bool model_finite = false;
  std::optional<Integer> model_euler;
  std::optional<EquivalenceReport> equivalence;
  Verdict verdict = Verdict::inconclusive;
  std::string conclusion;
};

FinitenessReport run_finiteness_experiment(const FinitenessExperiment& e, const SampleOptions& opts = {});

// ------------------------------------------------- naturals and inverse search

enum class NaturalWeight { id, log };  // w(n) = n or bit_length(n)
std::string to_string(NaturalWeight w);
NaturalWeight parse_natural_weight(const std::string& s);
/// Shared module per weighting, so that maps built separately compose.
ModulePtr naturals(NaturalWeight w);

enum class Relabel { identity, square };  // n -> n or n -> n^2
/// Basis map Z[N, from] -> Z[N, to], n -> relabel(n).
ModuleMap naturals_map(NaturalWeight from, NaturalWeight to, Relabel relabel = Relabel::identity);
/// Inverse basis map of naturals_map (identity relabeling only).
ModuleMap naturals_inverse(NaturalWeight from, NaturalWeight to);

/// Is ||map(n)||_id <= q(||n||_id) possible for some polynomial q of degree
/// <= degree with coefficients <= coeff_bound, over basis elements n <= n_max?
/// The domain basis must be labelled by decimal naturals.
struct InverseSearchProblem {
  ModuleMap map;
  long degree = 3;
  Integer coeff_bound{1000000};
  Integer n_max{Integer(1) << 64};
  /// Extra sample points; the default set is 1..256, the powers of two, the
  /// points 2^(2^k) and n_max itself (all clipped to n_max).
  std::vector<Integer> extra_samples;
};

struct MarginRow {
  Integer n;
  Rational input_weight;  // ||n||_id
  Rational required;      // ||map(n)||_id
  Rational extremal;      // M * sum_{i <= D} t^i at t = input_weight
  Rational margin;        // required / extremal; > 1 refutes
};

struct DegreeRow {
  long degree = 0;
  Integer min_coeff;  // smallest c with c * sum_{i <= degree} t^i >= required on every sample
  bool survives = false;  // min_coeff <= coeff_bound
};

struct InverseSearchResult {
  Verdict verdict = Verdict::inconclusive;  // refuted or inconclusive
  std::optional<MarginRow> witness;         // refuting sample with the largest margin
  std::vector<MarginRow> table;             // rows at n = 2^(2^k) and n_max
  std::vector<DegreeRow> per_degree;        // degrees 0..D
  /// Tightest surviving c * sum_{i <= d} t^i with the least d >= 1, when not refuted.
  std::optional<BoundingFunction> surviving;
  std::size_t samples = 0;
};

/// Samples run data-parallel on `jobs` threads; the result does not depend on jobs.
InverseSearchResult falsify_poly_inverse(const InverseSearchProblem& p, unsigned jobs = 1);

/// 0 -> Z[N, w1] -d-> Z[N, w0] -> 0 with d(n) = n, in degrees 1 and 0.
ChainComplex two_term_complex(NaturalWeight degree1, NaturalWeight degree0);

struct TwoTermReport {
  NaturalWeight degree1 = NaturalWeight::id, degree0 = NaturalWeight::id;
  std::string cls;
  InverseSearchResult search;  // on the contraction direction d^-1
  std::optional<ContractionReport> contraction;
  Verdict verdict = Verdict::inconclusive;
  std::string conclusion;
};

/// Searches for a bounded contraction of the two-term complex: refutes the
/// searched polynomial family, or verifies a contraction with the tightest
/// surviving witness when that witness lies in the class.
TwoTermReport two_term_obstruction(NaturalWeight degree1, NaturalWeight degree0, const std::string& cls, long degree,
                                   const Integer& coeff_bound, const Integer& n_max, unsigned jobs = 1,
                                   const SampleOptions& opts = {});

}  // namespace bhk
