#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bhk/bounded_maps.hpp"

namespace bhk {

struct HomotopyCertificate;

enum class Finiteness { finite, homotopically_finite, bounded_homotopically_finite, lazy };
std::string to_string(Finiteness f);

/// Chain complex supported on degrees [lo, hi]; d(n): A_n -> A_{n-1}.
/// Degrees outside the support carry the zero module.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// modules[k] sits in degree lo + k; diffs[k] is d(lo + k + 1).
  static ChainComplex make(OraclePtr oracle, RingKind ring, int lo, std::vector<ModulePtr> modules,
                           std::vector<ModuleMap> diffs, std::string name = "C");
  static ChainComplex zero(OraclePtr oracle, RingKind ring = RingKind::integers);
  static ChainComplex concentrated(ModulePtr m, int degree, std::string name = "");

  const std::string& name() const;
  const OraclePtr& oracle() const;
  RingKind ring() const;
  int lo() const;
  int hi() const;
  bool is_zero() const;  // every module is zero
  const ModulePtr& module(int n) const;
  const ModuleMap& d(int n) const;
  std::size_t rank(int n) const;
  Finiteness finiteness() const;
  bool finite() const { return finiteness() == Finiteness::finite; }
  const std::shared_ptr<const HomotopyCertificate>& finiteness_certificate() const;
  /// Copy flagged homotopically finite, carrying the certificate to a finite complex.
  ChainComplex with_certificate(Finiteness f, std::shared_ptr<const HomotopyCertificate> cert) const;
  ChainComplex named(std::string name) const;

  /// (Sigma A)_n = A_{n-1}, with d negated.
  ChainComplex shifted() const;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

/// Family of module maps A_n -> B_{n + degree}; missing components are zero.
class GradedMap {
 public:
  GradedMap() = default;
  GradedMap(ChainComplex source, ChainComplex target, int degree, std::map<int, ModuleMap> parts = {},
            std::string name = "");
  static GradedMap identity(const ChainComplex& c);
  static GradedMap zero(const ChainComplex& source, const ChainComplex& target, int degree = 0);

  const ChainComplex& source() const { return source_; }
  const ChainComplex& target() const { return target_; }
  int degree() const { return degree_; }
  const std::string& name() const { return name_; }
  GradedMap named(std::string name) const;
  /// Component A_n -> B_{n + degree}.
  ModuleMap at(int n) const;
  const std::map<int, ModuleMap>& parts() const { return parts_; }
  /// Degrees n where A_n is nonzero.
  std::vector<int> source_degrees() const;

  GradedMap after(const GradedMap& inner) const;  // this o inner
  GradedMap operator+(const GradedMap& o) const;
  GradedMap operator-(const GradedMap& o) const;
  GradedMap scaled(const Rational& r) const;
  GradedMap operator-() const { return scaled(Rational(-1)); }

 private:
  ChainComplex source_, target_;
  int degree_ = 0;
  std::map<int, ModuleMap> parts_;
  std::string name_;
};

using ChainMap = GradedMap;  // degree 0, commutes with d
using Homotopy = GradedMap;  // degree +1

/// d o h + h o d for a degree +1 family on a complex pair.
GradedMap homotopy_boundary(const GradedMap& h);
/// d o f - (-1)^deg f o d; zero exactly for chain maps.
GradedMap commutator_with_d(const GradedMap& f);

struct IdentityFailure {
  std::string identity;
  int degree = 0;
  std::string element;  // offending basis element
};

/// Exact comparison of two families. Matrix components compare columns;
/// rule components compare on the basis ball of radius `cutoff`.
std::optional<IdentityFailure> first_difference(const GradedMap& a, const GradedMap& b, const std::string& identity,
                                                const Rational& cutoff = Rational(8));
std::vector<IdentityFailure> check_d_squared(const ChainComplex& c, const Rational& cutoff = Rational(8));
std::vector<IdentityFailure> check_chain_map(const ChainMap& f, const Rational& cutoff = Rational(8));

/// K t with K the largest column constant over all components; nullopt when a
/// component is a rule map.
std::optional<BoundingFunction> linear_witness(const GradedMap& f);
/// Dehn check of every component against `witness`.
Verdict check_family_bounded(const GradedMap& f, const BoundingFunction& witness, const SampleOptions& opts,
                             const Rational& cutoff = Rational(6));

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b, std::string name = "");

/// Cone(f)_n = B_n + A_{n-1}, d(y, x) = (d y + f x, -d x).
ChainComplex cone(const ChainMap& f);
ChainMap cone_inclusion(const ChainMap& f, const ChainComplex& cone);   // B -> Cone(f)
ChainMap cone_projection(const ChainMap& f, const ChainComplex& cone);  // Cone(f) -> Sigma A

struct Cylinder {
  ChainComplex cyl;
  ChainMap j1, j2, p;  // front A -> Cyl, back B -> Cyl, projection Cyl -> B
  Homotopy h;          // j2 p - 1 = d h + h d on Cyl
  bool degenerate = false;  // A = 0: Cyl is B itself
};

/// Cyl(f)_n = A_n + B_n + A_{n-1}, d(c, y, c') = (d c - c', d y + f c', -d c').
Cylinder cylinder(const ChainMap& f);

/// Degreewise split mono i: A -> B with complement U: B = i A + s U,
/// q s = 1, r i = 1, i r + s q = 1, q a chain map onto U.
struct CofibrationCertificate {
  ChainMap i;
  ChainComplex U;
  ChainMap q;     // B -> U
  GradedMap s;    // U -> B, degree 0 (not a chain map in general)
  GradedMap r;    // B -> A, degree 0
  LinearBound bound;  // for s
};

struct CofibrationReport {
  std::vector<IdentityFailure> failures;
  Verdict section_bound = Verdict::inconclusive;
  bool ok() const { return failures.empty() && exit_code(section_bound) == 0; }
};

CofibrationReport verify_cofibration(const CofibrationCertificate& c, const SampleOptions& opts = {},
                                     const Rational& cutoff = Rational(8));

/// Split inclusion of the first summand of A + B.
CofibrationCertificate summand_cofibration(const ChainComplex& a, const ChainComplex& b);
/// * -> X.
CofibrationCertificate zero_cofibration(const ChainComplex& x);
/// Isomorphism with inverse: complement zero.
CofibrationCertificate iso_cofibration(const ChainMap& f, const ChainMap& inverse);
/// Front inclusion C -> Cyl(f) with complement Cone(f).
CofibrationCertificate cylinder_front_cofibration(const ChainMap& f, const Cylinder& cyl);

struct Pushout {
  ChainComplex W;               // Z + U degreewise
  CofibrationCertificate j;     // Z -> W
  ChainMap b_to_w;              // B -> W, b -> (f r b, q b)
};

/// Pushout of f: A -> Z along the cofibration i: A -> B.
Pushout pushout_along_cofibration(const CofibrationCertificate& i, const ChainMap& f);

}  // namespace bhk
