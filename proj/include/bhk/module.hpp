#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bhk/bounding.hpp"
#include "bhk/group.hpp"
#include "bhk/rational.hpp"

namespace bhk {

enum class RingKind { integers, rationals };

std::string to_string(RingKind kind);

/// Coefficient ring with the absolute value norm.
struct NormedRing {
  RingKind kind = RingKind::integers;
  /// Nonzero elements have norm >= norm_floor (1 for Z, 0 for Q).
  Rational norm_floor() const { return kind == RingKind::integers ? Rational(1) : Rational(0); }
  bool admits(const Rational& r) const { return kind == RingKind::rationals || is_integer(r); }
  Rational norm(const Rational& r) const { return abs_value(r); }
  Rational sample(Rng& rng, long bound) const;
};

struct RingAxiomReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

RingAxiomReport check_normed_ring(const NormedRing& ring, std::size_t samples, std::uint64_t seed);

/// Basis element (g, x) of R[G][X]. Plain weighted sets use g = identity of
/// the trivial group, i.e. an empty vector.
struct BasisKey {
  GroupElement g;
  std::string x;
  auto operator<=>(const BasisKey&) const = default;
};

/// Finitely supported R-linear combination; zero coefficients are never stored.
class FormalSum {
 public:
  using Map = std::map<BasisKey, Rational>;
  FormalSum() = default;
  FormalSum(std::initializer_list<std::pair<const BasisKey, Rational>> terms);
  static FormalSum single(BasisKey key, Rational c = Rational(1));

  void add(const BasisKey& key, const Rational& c);
  Rational coeff(const BasisKey& key) const;
  const Map& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  FormalSum operator+(const FormalSum& o) const;
  FormalSum operator-(const FormalSum& o) const;
  FormalSum operator-() const;
  FormalSum scaled(const Rational& r) const;
  FormalSum& operator+=(const FormalSum& o);
  bool operator==(const FormalSum& o) const { return terms_ == o.terms_; }

  Rational l1_norm() const;  // sum |alpha|

 private:
  Map terms_;
};

class WeightedModule;
using ModulePtr = std::shared_ptr<const WeightedModule>;

/// Free weighted module R[G][X] with w(g, x) = L(g) + w_X(x), or R[S] for a
/// plain weighted set S (no group). X may be finite or lazily enumerated.
class WeightedModule {
 public:
  using LabelWeight = std::function<Rational(const std::string&)>;
  using LabelEnumerator = std::function<std::vector<std::string>(const Rational& cutoff)>;

  static ModulePtr free(OraclePtr oracle, std::vector<std::pair<std::string, Rational>> labels,
                        std::string name = "M", RingKind ring = RingKind::integers);
  static ModulePtr plain(std::vector<std::pair<std::string, Rational>> labels, std::string name = "M",
                         RingKind ring = RingKind::integers);
  /// Infinite plain basis: `weight` for labels, `enumerate(c)` returns every
  /// label of weight <= c, `member` tests label validity.
  static ModulePtr lazy_plain(LabelWeight weight, LabelEnumerator enumerate, std::function<bool(const std::string&)> member,
                              std::string name, RingKind ring = RingKind::integers);
  static ModulePtr zero(OraclePtr oracle = nullptr, RingKind ring = RingKind::integers);
  /// The group ring R[G] as a module over itself: X = {""} with w_X = 0.
  static ModulePtr group_ring(OraclePtr oracle, RingKind ring = RingKind::integers);
  /// Copy of base whose key weights are overridden (planted-defect tests).
  static ModulePtr with_weight_override(ModulePtr base, std::function<std::optional<Rational>(const BasisKey&)> override);

  const std::string& name() const { return name_; }
  RingKind ring() const { return ring_; }
  bool has_group() const { return oracle_ != nullptr; }
  const OraclePtr& oracle() const { return oracle_; }
  bool finite_labels() const { return finite_; }
  /// Finite label list in canonical order (finite modules only).
  const std::vector<std::string>& labels() const;
  std::size_t rank() const;  // finite modules only
  bool is_zero_module() const { return finite_ && labels_.empty(); }

  bool has_label(const std::string& x) const;
  Rational label_weight(const std::string& x) const;
  Rational weight(const BasisKey& key) const;
  /// Generator key (1, x).
  BasisKey generator(const std::string& x) const;
  /// Throws std::invalid_argument when key is not a basis element.
  void validate(const BasisKey& key) const;
  void validate(const FormalSum& a) const;

  /// Every basis key of weight <= cutoff.
  std::vector<BasisKey> basis_up_to(const Rational& cutoff) const;
  std::vector<std::string> labels_up_to(const Rational& cutoff) const;

  /// Same module structure, i.e. same group and same label set and weights.
  bool same_as(const WeightedModule& other) const;

 private:
  WeightedModule() = default;
  std::string name_;
  RingKind ring_ = RingKind::integers;
  OraclePtr oracle_;
  bool finite_ = true;
  std::vector<std::string> labels_;
  std::map<std::string, Rational> finite_weights_;
  LabelWeight lazy_weight_;
  LabelEnumerator lazy_enum_;
  std::function<bool(const std::string&)> lazy_member_;
  std::function<std::optional<Rational>(const BasisKey&)> override_;
};

/// sum |alpha_s| f(w(s)).
Rational seminorm(const WeightedModule& m, const FormalSum& a, const BoundingFunction& f);
inline Rational norm_id(const WeightedModule& m, const FormalSum& a) {
  return seminorm(m, a, BoundingFunction::identity());
}
inline Rational norm_1(const FormalSum& a) { return a.l1_norm(); }

/// Group ring elements are sums over keys (g, "").
FormalSum group_ring_element(std::initializer_list<std::pair<GroupElement, Rational>> terms);

/// r * b for r in R[G] acting by left translation on the group coordinate.
FormalSum scalar_multiply(const GroupModel& group, const FormalSum& r, const FormalSum& b);
/// r * b for a general weighted G-set action.
FormalSum scalar_multiply(const WeightedGSet& gset, const FormalSum& r, const FormalSum& b);

/// Direct sum with labels tagged "i/x" for the i-th summand (0-based).
ModulePtr direct_sum(const std::vector<ModulePtr>& mods, std::string name = "");
std::string tag_label(std::size_t index, const std::string& x);
/// (index, inner label) of a tagged label.
std::pair<std::size_t, std::string> untag_label(const std::string& tagged);
FormalSum inject(std::size_t index, const FormalSum& a);
FormalSum project(std::size_t index, const FormalSum& a);

struct QuotientModule {
  ModulePtr ambient;
  std::vector<FormalSum> relations;
  Rational search_radius{8};
  /// Bound on sum |c_i| over the relation coefficients tried.
  long coefficient_budget = 4;
};

struct InducedWeight {
  Rational value;
  FormalSum representative;
  bool upper_bound_only = false;
};

/// min ||rep + sum c_i rel_i||_id over integer c_i (with group translates of
/// the relations for R[G]-modules), subject to all term weights <= radius.
InducedWeight induced_weight(const QuotientModule& q, const FormalSum& rep);

/// Direct sum of quotients: ambient direct sum modulo tagged relations.
QuotientModule direct_sum(const std::vector<QuotientModule>& qs);

struct WeightedRingReport {
  std::size_t checked = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks ||r m||_1 <= ||r||_1 ||m||_1 and ||r m||_w <= ||r||_w ||m||_1 + ||r||_1 ||m||_w
/// for r in R[G] against elements m of the module: all monomial pairs from
/// the radius ball, then random sums.
WeightedRingReport check_weighted_ring_axioms(const WeightedModule& m, std::size_t samples, std::uint64_t seed,
                                              const Rational& radius);

/// Random element with 1..max_terms terms drawn from `basis`, nonzero integer
/// coefficients in [-coeff_bound, coeff_bound].
FormalSum random_sum(const std::vector<BasisKey>& basis, Rng& rng, std::size_t max_terms, long coeff_bound);

/// Natural-number weighted sets with N indexed from 1; labels are decimal.
ModulePtr naturals_identity_weight(std::string name = "Z[N,id]");
ModulePtr naturals_log_weight(std::string name = "Z[N,log]");
/// Largest n with bit_length(n) <= c, i.e. 2^floor(c) - 1.
Integer log_weight_extent(const Rational& cutoff);

std::string key_to_string(const WeightedModule& m, const BasisKey& key);

}  // namespace bhk
