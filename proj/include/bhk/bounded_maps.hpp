#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bhk/map.hpp"

namespace bhk {

enum class Verdict { symbolically_verified, sample_verified, refuted, inconclusive };
std::string to_string(Verdict v);
/// CLI exit code: 0 verified, 1 refuted, 2 inconclusive.
int exit_code(Verdict v);
/// Worst-first combination: refuted > inconclusive > sample > symbolic.
Verdict combine(Verdict a, Verdict b);

using Sampler = std::function<FormalSum(Rng&)>;

/// Random sums of basis elements of weight <= cutoff.
Sampler ball_sampler(ModulePtr m, const Rational& cutoff, std::size_t max_terms = 4, long coeff_bound = 5);

struct SampleOptions {
  std::size_t trials = 200;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Elements checked before the random samples (basis probes, extremal points).
  std::vector<FormalSum> probes;
};

struct Counterexample {
  FormalSum element;
  Rational lhs, rhs;
  std::size_t index = 0;  // position in probes followed by samples
};

struct WitnessCheck {
  BoundingFunction f;
  std::optional<BoundingFunction> f_prime;  // functional-analytic sense only
  std::string route;
  Verdict verdict = Verdict::inconclusive;
  std::size_t samples = 0;
  std::optional<Counterexample> counterexample;
  std::string detail;
};

enum class Sense { dehn, functional_analytic };
std::string to_string(Sense s);

struct BoundednessCertificate {
  std::string map_id;
  Sense sense = Sense::dehn;
  std::string class_label;
  std::vector<WitnessCheck> checks;
  Verdict overall() const;
};

/// Sup over basis elements of ||m(b)||_id / ||b||_id, from the columns of a
/// matrix map (uses L(g h) <= L(g) + L'(h) with L'(1) = 0). nullopt for rule maps.
std::optional<Rational> dehn_constant(const ModuleMap& m);

/// ||m(a)||_id <= f(||a||_id).
BoundednessCertificate check_dehn_bounded(const ModuleMap& m, const BoundingFunction& f, const Sampler& sampler,
                                          const SampleOptions& opts);

/// For each f in the schedule proposes f' and checks ||m(x)||_f <= ||x||_{f'}.
/// Routes in order: identity/zero, left multiplication, Dehn witness (when
/// supplied), matrix constants.
BoundednessCertificate check_fa_bounded(const ModuleMap& m, const std::vector<BoundingFunction>& schedule,
                                        const BoundingClass& cls, const Sampler& sampler, const SampleOptions& opts,
                                        const std::optional<BoundingFunction>& dehn_witness = std::nullopt);

/// Checks ||m(x)||_f <= ||x||_{f'} for a given pair (composition invariant).
WitnessCheck check_fa_pair(const ModuleMap& m, const BoundingFunction& f, const BoundingFunction& f_prime,
                           const Sampler& sampler, const SampleOptions& opts);

/// h o f + h(0) f for polynomial h with nonnegative coefficients; a valid
/// functional-analytic witness over Z whenever f is a Dehn witness.
std::optional<BoundingFunction> corrected_fa_witness(const BoundingFunction& f, const BoundingFunction& h);

struct DehnToFaReport {
  BoundingFunction f, h;
  BoundingFunction f_prime;  // dominator of h o f
  std::optional<BoundingFunction> corrected;
  std::size_t basis_checked = 0, elements_checked = 0;
  std::size_t dehn_violations = 0;  // samples where the hypothesis itself fails (skipped)
  std::size_t claim1_basis_violations = 0;   // ||m(gx)||_h <= (h o f)(||gx||_id)
  std::size_t claim1_element_violations = 0; // ||m(a)||_h <= (h o f)(||a||_id)
  std::size_t claim2_violations = 0;         // ||m(a)||_h <= ||a||_{h o f}
  std::size_t corrected_violations = 0;      // ||m(a)||_h <= ||a||_{corrected}
  std::optional<Counterexample> first_claim1, first_claim2;
  bool claims_hold() const { return claim1_basis_violations + claim1_element_violations + claim2_violations == 0; }
};

/// Tests the two claims turning a Dehn witness into a functional-analytic one.
/// Throws std::invalid_argument for rings without a positive norm floor.
DehnToFaReport dehn_implies_fa(const ModuleMap& m, const BoundingFunction& f, const BoundingFunction& h,
                               const std::vector<BasisKey>& basis, const Sampler& sampler, const SampleOptions& opts);

struct MatrixBoundConstants {
  BoundingFunction f2, f4;
  Rational C_f;   // max_j ||y_j||_{f2}
  Rational H_f4;  // max_{i,j} ||h_ij||_{f4}
  Rational C;     // max_i 1 / w_X(x_i)
  Rational bound; // 2 C_f H_f4 C
  /// Factor K with ||h(a)||_f <= K ||a||_{f4}: 4 m C_f H_f4 with exact dilations,
  /// m = rank of the codomain; f is replaced by f + 1 when f(2 l) < 1 for the
  /// smallest weight l.
  Rational corrected_bound;
  BoundingFunction corrected_f4;  // exact x -> f(4x), or of f + 1 under the surrogate
  bool surrogate = false;
  std::size_t codomain_rank = 0;
};

/// Constants for a matrix map between finitely generated free modules whose
/// label weights are >= 1. Throws std::invalid_argument otherwise.
MatrixBoundConstants matrix_bound_constants(const ModuleMap& h, const BoundingClass& cls, const BoundingFunction& f);

struct MatrixBoundCheck {
  std::size_t checked = 0;
  std::size_t literal_violations = 0;    // ||h(a)||_f > bound ||a||_{f4}
  std::size_t corrected_violations = 0;  // ||h(a)||_f > corrected_bound ||a||_{corrected_f4}
  std::optional<Counterexample> first_literal;
};

MatrixBoundCheck check_matrix_bound(const ModuleMap& h, const BoundingFunction& f, const MatrixBoundConstants& mc,
                                    const Sampler& sampler, const SampleOptions& opts);

struct LinearBound {
  Rational a{1}, b{0};
};

struct AdmissibilityCertificate {
  ModuleMap section;
  LinearBound bound;
};

struct AdmissibilityReport {
  bool identity_exact = true;  // q o s = id on every tested element
  std::size_t checked = 0;
  std::optional<Counterexample> identity_failure;
  std::optional<Counterexample> bound_failure;
  Verdict verdict = Verdict::inconclusive;
};

/// q o s = id exactly and ||s(y)||_id <= a ||y||_id + b, on the basis of the
/// codomain (generators for matrix maps, the ball for rule maps) and samples.
AdmissibilityReport verify_admissible(const ModuleMap& q, const AdmissibilityCertificate& cert,
                                      const Sampler& codomain_sampler, const SampleOptions& opts,
                                      const Rational& basis_cutoff = Rational(8));

struct ProjectiveModule {
  ModulePtr carrier;
  ModuleMap p;  // idempotent on carrier
  ModuleMap s;  // onto the image of p, s o p idempotent
};

struct ProjectiveReport {
  bool idempotent = false;         // p o p = p exactly
  bool section_idempotent = false; // (s o p)^2 = s o p on samples
  bool psp = false;                // p o s o p = p on samples
  Verdict p_linear = Verdict::inconclusive, s_linear = Verdict::inconclusive;
  bool ok() const;
};

ProjectiveReport verify_projective(const ProjectiveModule& pm, const Sampler& sampler, const SampleOptions& opts);

}  // namespace bhk
