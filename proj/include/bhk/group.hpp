#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "bhk/rational.hpp"

namespace bhk {

/// Zn: coordinate vector of length n. Free groups and presentations: normal
/// form word of signed 1-based generator letters (-2 is the inverse of the
/// second generator).
using GroupElement = std::vector<long>;
using Word = std::vector<long>;

enum class GroupKind { Zn, free, presentation };

std::string to_string(GroupKind kind);

class RewritingSystem;

class GroupModel {
 public:
  static std::shared_ptr<const GroupModel> Zn(std::size_t n, std::vector<Rational> weights = {});
  static std::shared_ptr<const GroupModel> free_group(std::size_t n, std::vector<Rational> weights = {});
  /// Runs shortlex Knuth-Bendix completion. Throws std::runtime_error when no
  /// confluent system with at most `rule_limit` rules is found.
  static std::shared_ptr<const GroupModel> presentation(std::vector<std::string> generator_names,
                                                        std::vector<Rational> weights,
                                                        std::vector<Word> relators, std::size_t rule_limit = 400);

  GroupKind kind() const { return kind_; }
  std::size_t rank() const { return weights_.size(); }
  const std::vector<Rational>& weights() const { return weights_; }
  const std::vector<std::string>& generator_names() const { return names_; }
  const std::vector<Word>& relators() const { return relators_; }
  /// Weight of a signed letter; phi(s) = phi(s^-1).
  const Rational& letter_weight(long letter) const;

  GroupElement identity() const;
  bool is_identity(const GroupElement& g) const;
  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& a) const;
  /// Element represented by a word of signed letters.
  GroupElement evaluate(const Word& w) const;
  GroupElement letter(long signed_letter) const { return evaluate({signed_letter}); }
  /// All signed letters, in the order 1, -1, 2, -2, ...
  std::vector<long> letters() const;
  /// Checks that g is a valid normal form for this group.
  void validate(const GroupElement& g) const;

  std::string to_string(const GroupElement& g) const;
  std::size_t rewriting_rule_count() const;

 private:
  GroupModel() = default;
  GroupKind kind_ = GroupKind::Zn;
  std::vector<Rational> weights_;
  std::vector<std::string> names_;
  std::vector<Word> relators_;
  std::shared_ptr<const RewritingSystem> rws_;
};

using GroupPtr = std::shared_ptr<const GroupModel>;

struct OutOfTruncation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Word length L with L(1) = identity_value and, for g != 1, the minimum of
/// sum phi(x_i) over nonempty words x_1...x_k representing g.
class LengthOracle {
 public:
  explicit LengthOracle(GroupPtr group, Rational identity_value = Rational(1), Rational truncation_radius = Rational(64),
                        bool fast_paths = true);

  const GroupModel& group() const { return *group_; }
  GroupPtr group_ptr() const { return group_; }
  const Rational& identity_value() const { return identity_value_; }
  const Rational& truncation_radius() const { return radius_; }

  /// Throws OutOfTruncation when the search would exceed the radius.
  Rational length(const GroupElement& g) const;
  /// Cayley-graph Dijkstra search, bypassing closed forms and overrides.
  Rational search_length(const GroupElement& g) const;
  /// All elements with search length <= radius (identity included), sorted.
  std::vector<GroupElement> ball(const Rational& radius) const;

  /// Replaces the value reported for g. Used to plant defects in tests.
  void override_length(const GroupElement& g, const Rational& value);

 private:
  void explore(const Rational& radius, const GroupElement* target) const;

  GroupPtr group_;
  Rational identity_value_;
  Rational radius_;
  bool fast_paths_;
  mutable std::mutex mutex_;
  mutable std::map<GroupElement, Rational> settled_;  // search distances, nonempty words
  mutable Rational explored_to_{-1};
  std::map<GroupElement, Rational> overrides_;
};

using OraclePtr = std::shared_ptr<LengthOracle>;

/// Uniform random word of length in [0, max_letters], evaluated in the group.
GroupElement random_element(const GroupModel& group, Rng& rng, std::size_t max_letters);

struct LengthViolation {
  std::string axiom;  // "subadditivity", "symmetry", "positivity", "identity"
  GroupElement g, h;
  std::string detail;
};

struct LengthAxiomReport {
  std::size_t checked = 0;
  std::vector<LengthViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Random pairs of words of up to max_letters letters.
LengthAxiomReport check_length_axioms(const LengthOracle& oracle, std::size_t samples, std::uint64_t seed,
                                      std::size_t max_letters = 6);
/// Every pair from the search ball of the given radius.
LengthAxiomReport check_length_axioms_ball(const LengthOracle& oracle, const Rational& radius);

/// A point of a weighted set acted on by G: a group coordinate plus a label.
struct GSetPoint {
  GroupElement g;
  std::string x;
  auto operator<=>(const GSetPoint&) const = default;
};

struct WeightedGSet {
  std::function<GSetPoint(const GroupElement&, const GSetPoint&)> action;
  std::function<Rational(const GSetPoint&)> weight;
  std::function<GSetPoint(Rng&)> sample_point;
  Rational constant_C{1};
};

struct GSetReport {
  std::size_t checked = 0;
  Rational tightest_C{0};  // max of w(gs) / (L(g) + w(s)) over samples
  std::optional<std::pair<GroupElement, GSetPoint>> counterexample;
  std::vector<std::string> weight_errors;  // points with weight < 1
  bool ok() const { return !counterexample && weight_errors.empty(); }
};

GSetReport check_gset(const WeightedGSet& ws, const LengthOracle& oracle, std::size_t samples, std::uint64_t seed,
                      std::size_t max_letters = 6);

/// G acting on itself by left translation with w = L.
WeightedGSet left_translation_gset(OraclePtr oracle, std::size_t max_letters = 6);
/// G acting on G x X by translation in the first factor, w(g, x) = L(g) + w_X(x).
WeightedGSet product_gset(OraclePtr oracle, std::map<std::string, Rational> label_weights,
                          std::size_t max_letters = 6);

}  // namespace bhk
