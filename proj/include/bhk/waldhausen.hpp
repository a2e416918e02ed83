#pragma once

#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "bhk/random_complex.hpp"

namespace bhk {

enum class ObjectKind { Fin, hFin, BhFin };
enum class ModuleKind { free, projective };
enum class WeqKind { h, Bh };
enum class MorphismKind { all, bounded };

struct CategoryProfile {
  ObjectKind objects = ObjectKind::Fin;
  ModuleKind modules = ModuleKind::free;
  WeqKind weq = WeqKind::Bh;
  MorphismKind morphisms = MorphismKind::bounded;
  std::string cls = "L";

  /// "Fin/free/Bh", optionally "/all" or "/bounded"; throws std::invalid_argument.
  static CategoryProfile parse(const std::string& text, const std::string& cls = "L");
  std::string to_string() const;
  /// BhFin objects need bounded weak equivalences.
  void validate() const;
};

/// Random finite complex used by the suites; default: 2-term complexes over Z[Z].
using InstanceGenerator = std::function<RandomComplex(Rng&, const std::string& name)>;
InstanceGenerator default_generator(OraclePtr oracle = nullptr);

struct AxiomResult {
  std::string axiom;
  std::size_t passed = 0, failed = 0;
  std::vector<std::string> failures;  // instance dumps, first few
};

struct AxiomSuiteOptions {
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  /// Planted defect: Cof3 receives a mono without a section (multiplication by 2).
  bool plant_bad_mono = false;
};

struct AxiomSuiteReport {
  CategoryProfile profile;
  AxiomSuiteOptions options;
  std::vector<AxiomResult> axioms;  // Cof1, Cof2, Cof3, Weq1, Weq2
  bool ok() const;
};

AxiomSuiteReport run_axiom_suite(const CategoryProfile& profile, const AxiomSuiteOptions& opts,
                                 const InstanceGenerator& generator = default_generator());

/// Glueing instance: i: A -> B a cofibration, f: A -> C, gamma: C ~ C'. The
/// map of pushouts Phi: C u_A B -> C' u_A B with its certificate.
struct GlueingResult {
  Pushout left, right;
  ChainMap phi;
  HomotopyCertificate cert;
};
GlueingResult glue_equivalence(const CofibrationCertificate& i, const ChainMap& f, const HomotopyCertificate& gamma);

/// S_n object in staircase form: filtration X_1 -> ... -> X_n, quotients
/// A(i, j) for 0 <= i <= j <= n with A(j, j) = 0, and for every i <= j <= k a
/// cofibration A(i, j) -> A(i, k) with quotient A(j, k).
struct Staircase {
  int n = 0;
  std::map<std::pair<int, int>, ChainComplex> A;
  std::map<std::tuple<int, int, int>, CofibrationCertificate> square;
  const ChainComplex& at(int i, int j) const { return A.at({i, j}); }
  const CofibrationCertificate& sq(int i, int j, int k) const { return square.at({i, j, k}); }
};

/// filtration[k] is X_{k+1} -> X_{k+2}; n = filtration.size() + 1 in [2, 4]
/// (n = 1 is allowed for faces). Throws std::invalid_argument when a step is
/// not a cofibration.
Staircase build_staircase(const std::vector<CofibrationCertificate>& filtration);
/// Random filtration of length n - 1 mixing cylinder and summand steps.
std::vector<CofibrationCertificate> random_filtration(int n, Rng& rng, const InstanceGenerator& generator);

struct StaircaseReport {
  std::size_t squares_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
StaircaseReport verify_staircase(const Staircase& s);

Staircase face(const Staircase& s, int i);
Staircase degeneracy(const Staircase& s, int i);
/// Same objects (degreewise modules and differentials) and square data.
bool same_staircase(const Staircase& a, const Staircase& b);

struct SimplicialReport {
  std::size_t instances = 0, identities_checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};
/// d_i d_j = d_{j-1} d_i for i < j, and d_i s_i = d_{i+1} s_i = 1.
SimplicialReport check_simplicial_identities(const std::vector<Staircase>& instances);

struct App1Report {
  std::size_t instances = 0, reflected = 0;
  std::size_t outside_class = 0;  // supplied witnesses outside the smaller class
  std::size_t vacuous = 0;        // of those, components all carry column witnesses in L
  std::vector<std::string> failures;
  bool ok() const { return failures.empty() && reflected == instances && vacuous == outside_class; }
};

/// Certificates between finite complexes valid in the larger category must
/// verify in Fin with the same data.
App1Report check_app1(const CategoryProfile& larger, const std::vector<HomotopyCertificate>& instances,
                      const SampleOptions& opts = {});

}  // namespace bhk
