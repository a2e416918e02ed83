#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bhk/chain.hpp"

namespace bhk {

/// F: A -> B with inverse G, G F - 1 = d h + h d on A, F G - 1 = d k + k d on B.
/// Missing witnesses are computed from the matrix columns at verification.
struct HomotopyCertificate {
  ChainMap F, G;
  Homotopy h, k;
  std::optional<BoundingFunction> wF, wG, wh, wk;
  std::string cls = "L";
};

struct FamilyCheck {
  std::string family;  // "F", "G", "h", "k"
  std::optional<BoundingFunction> witness;
  bool in_class = false;
  Verdict verdict = Verdict::inconclusive;
};

struct EquivalenceReport {
  std::vector<IdentityFailure> exact_failures;
  std::vector<FamilyCheck> families;
  Verdict verdict = Verdict::inconclusive;
  bool exact() const { return exact_failures.empty(); }
  bool ok() const { return exact() && exit_code(verdict) == 0; }
};

EquivalenceReport verify_equivalence(const HomotopyCertificate& cert, const SampleOptions& opts = {},
                                     const Rational& cutoff = Rational(8));

HomotopyCertificate identity_certificate(const ChainComplex& c, std::string cls = "L");
/// Roles of source and target swapped.
HomotopyCertificate inverse_certificate(const HomotopyCertificate& c);
/// second o first.
HomotopyCertificate compose_certificates(const HomotopyCertificate& first, const HomotopyCertificate& second);
/// p: Cyl(f) -> B against the back inclusion j2.
HomotopyCertificate cylinder_certificate(const Cylinder& cyl);

/// d c + c d = 1.
struct ContractionCertificate {
  Homotopy c;
  std::optional<BoundingFunction> witness;
};

struct ContractionReport {
  std::vector<IdentityFailure> failures;
  Verdict bounded = Verdict::inconclusive;
  bool ok() const { return failures.empty() && exit_code(bounded) == 0; }
};

ContractionReport verify_contraction(const ChainComplex& a, const ContractionCertificate& cert,
                                     const SampleOptions& opts = {}, const Rational& cutoff = Rational(8));

/// Contraction of Cone(F) built from an equivalence certificate.
ContractionCertificate cone_contraction(const HomotopyCertificate& cert);

/// For f: X -> Y and a contraction s of Cone(f), with blocks s_YY, s_XY, s_XX:
/// inverse s_XY, homotopies h = s_XX on X and k = -s_YY on Y.
HomotopyCertificate equivalence_from_cone_contraction(const ChainMap& f, const ContractionCertificate& s,
                                                     std::string cls = "L");

/// Contraction of B for K -> B -> Q with K and Q contractible.
ContractionCertificate extension_contraction(const CofibrationCertificate& ses, const ContractionCertificate& kernel,
                                             const ContractionCertificate& quotient);

/// For A -i-> B -q-> C given by a cofibration certificate and a contraction of
/// A: q is an equivalence with inverse s - i c r (d s - s d).
HomotopyCertificate quotient_equivalence(const CofibrationCertificate& ses, const ContractionCertificate& contraction,
                                         std::string cls = "L");

/// f: A -> B, g: B -> C; exactly two of the three certificates are supplied
/// and the third (f, g or g f) is returned. Throws std::invalid_argument when
/// the count is wrong or an input fails its exact identities.
HomotopyCertificate saturation_complete(const ChainMap& f, const ChainMap& g,
                                        const std::optional<HomotopyCertificate>& cert_f,
                                        const std::optional<HomotopyCertificate>& cert_g,
                                        const std::optional<HomotopyCertificate>& cert_gf);

struct App2Result {
  Cylinder cylinder;            // E = Cyl(F f)
  CofibrationCertificate g;     // C -> E
  ChainMap h;                   // E -> D
  HomotopyCertificate h_cert;   // h against its inverse
  Homotopy hg_to_f;             // h g - f = d H + H d
};

/// f: C -> D, j: D ~ D' with C and D' finite. Throws std::invalid_argument otherwise.
App2Result app2_factorize(const ChainMap& f, const HomotopyCertificate& j);

/// h g - f = d H + H d exactly.
std::vector<IdentityFailure> check_homotopic(const ChainMap& a, const ChainMap& b, const Homotopy& H,
                                             const Rational& cutoff = Rational(8));

}  // namespace bhk
