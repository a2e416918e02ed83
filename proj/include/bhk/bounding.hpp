#pragma once

#include <climits>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhk/rational.hpp"

namespace bhk {

enum class FunctionKind { constant, linear, polynomial, exponential, chain, sum };

std::string to_string(FunctionKind kind);

/// A symbolic non-decreasing function [0, inf) -> [0, inf).
///
/// Parameter layout per kind:
///   constant     c
///   linear       a*x + b
///   polynomial   sum coeffs[i] * x^i (ascending)
///   exponential  c * a^x with a >= 1; evaluated at ceil(x) for non-integer x
///   chain        parts[0] o parts[1] o ... o parts[k-1] (last applied first)
///   sum          sum weight_i * part_i with positive rational weights
///
/// Values are immutable.
class BoundingFunction {
 public:
  BoundingFunction() : coeffs_{Rational(0)} {}

  static BoundingFunction constant(const Rational& c);
  static BoundingFunction linear(const Rational& a, const Rational& b);
  static BoundingFunction polynomial(std::vector<Rational> ascending);
  static BoundingFunction exponential(const Rational& c, const Rational& base);
  static BoundingFunction chain(std::vector<BoundingFunction> outer_to_inner);
  static BoundingFunction sum(std::vector<std::pair<Rational, BoundingFunction>> terms);
  static BoundingFunction identity() { return linear(Rational(1), Rational(0)); }

  /// Parses the compact notation used by the CLI: "1", "t", "2t+3", "t^2",
  /// "1/2t^2+t", "3*2^t". The variable may be written t or x.
  static BoundingFunction parse(std::string_view text);

  FunctionKind kind() const { return kind_; }

  /// Exact value at x >= 0. Throws std::domain_error for x < 0 and
  /// std::overflow_error when an exponential would exceed 2^(2^28).
  Rational eval(const Rational& x) const;

  bool is_polynomial_like() const;
  /// Ascending coefficients with trailing zeros dropped (polynomial-like kinds).
  std::vector<Rational> poly_coeffs() const;
  long degree() const;  // polynomial-like only

  const Rational& exp_coeff() const { return exp_coeff_; }
  const Rational& exp_base() const { return exp_base_; }
  const std::vector<BoundingFunction>& parts() const { return parts_; }
  const std::vector<Rational>& weights() const { return weights_; }

  std::string to_string() const;
  bool operator==(const BoundingFunction& other) const;

 private:
  FunctionKind kind_ = FunctionKind::constant;
  std::vector<Rational> coeffs_;
  Rational exp_coeff_, exp_base_;
  std::vector<BoundingFunction> parts_;
  std::vector<Rational> weights_;  // sum kind, parallel to parts_
};

/// Coarse growth order: (tower height, inner degree). Compares
/// lexicographically; a function of rank r is dominated, up to a class
/// operation, by any function with rank >= r built from the same kinds.
struct GrowthRank {
  static constexpr int unbounded_tower = INT_MAX;
  static constexpr long unbounded_degree = LONG_MAX;
  int tower = 0;
  long degree = 0;
  auto operator<=>(const GrowthRank&) const = default;
  std::string to_string() const;
};

GrowthRank growth_rank(const BoundingFunction& f);

enum class ClassName { L, P, E, Etilde, custom };

std::string to_string(ClassName name);

/// A bounding class presented by finitely many generators plus closure
/// flags. Rational combinations and precomposition with linear functions are
/// always available; full composition only when `full_composition` is set.
class BoundingClass {
 public:
  BoundingClass(ClassName name, std::vector<BoundingFunction> generators, bool full_composition);

  static BoundingClass linear();       // L
  static BoundingClass polynomial();   // P
  static BoundingClass exponential();  // E
  static BoundingClass iterated_exponential();  // Ẽ
  static BoundingClass named(ClassName name);
  /// "L", "P", "E", "Etilde" (also "Ẽ").
  static BoundingClass by_name(std::string_view name);

  ClassName name() const { return name_; }
  const std::vector<BoundingFunction>& generators() const { return generators_; }
  bool full_composition() const { return full_composition_; }
  GrowthRank cap() const { return cap_; }

  /// Membership up to the weak closure: true when some class operation
  /// applied to the generators dominates f.
  bool contains(const BoundingFunction& f) const;
  std::string label() const;

 private:
  ClassName name_;
  std::vector<BoundingFunction> generators_;
  bool full_composition_;
  GrowthRank cap_;
};

/// Formal combination of class members, the input to dominator().
class Expr {
 public:
  static Expr leaf(BoundingFunction f);
  static Expr combination(std::vector<std::pair<Rational, Expr>> terms);
  static Expr compose(Expr outer, Expr inner);

  /// Evaluates the expression literally (compositions evaluate the outer
  /// function at the inner value).
  Rational eval(const Rational& x) const;
  std::string to_string() const;

  enum class Op { leaf, combination, compose };
  Op op() const { return op_; }
  const BoundingFunction& function() const { return leaf_; }
  const std::vector<std::pair<Rational, Expr>>& terms() const { return terms_; }
  const Expr& outer() const { return *outer_; }
  const Expr& inner() const { return *inner_; }

 private:
  Op op_ = Op::leaf;
  BoundingFunction leaf_;
  std::vector<std::pair<Rational, Expr>> terms_;
  std::shared_ptr<const Expr> outer_, inner_;
};

/// Returns a class member f with f >= expr (f > expr when strict). Throws
/// std::invalid_argument when expr uses a leaf outside the class or a
/// composition the class does not permit.
BoundingFunction dominator(const BoundingClass& cls, const Expr& expr, bool strict = false);

/// Pointwise operations that produce dominating closed forms; the results
/// satisfy out(x) >= literal(x) for all x >= 0.
BoundingFunction dominate_combination(const std::vector<std::pair<Rational, BoundingFunction>>& terms);
BoundingFunction dominate_composition(const BoundingFunction& outer, const BoundingFunction& inner);

/// f >= g on all of [0, inf), when decidable from the symbolic forms.
/// nullopt means "not decided", never "false".
std::optional<bool> dominates_everywhere(const BoundingFunction& f, const BoundingFunction& g);
/// f >= g for all sufficiently large x, when decidable.
std::optional<bool> dominates_eventually(const BoundingFunction& f, const BoundingFunction& g);

/// Grid check of f >= g on `points`. Returns the first failing point.
std::optional<Rational> first_grid_violation(const BoundingFunction& f, const BoundingFunction& g,
                                             const std::vector<Rational>& points);
std::vector<Rational> geometric_grid(const Rational& lo, const Rational& hi, int count);

enum class PrecedenceVerdict { yes_witnessed, no_counterexample, inconclusive };
std::string to_string(PrecedenceVerdict v);

struct PrecedenceResult {
  PrecedenceVerdict verdict = PrecedenceVerdict::inconclusive;
  /// yes: generator of A paired with its dominating member of B.
  std::vector<std::pair<BoundingFunction, BoundingFunction>> witnesses;
  std::optional<BoundingFunction> counterexample;
  std::string sketch;
};

/// Decides A ≼ B as far as the symbolic kinds allow.
PrecedenceResult precedes(const BoundingClass& a, const BoundingClass& b, const Rational& horizon);

struct DilationTriple {
  BoundingFunction f2;  // f2(x) >= f(2x)
  BoundingFunction f4;  // f4(x) >= f(4x)
  BoundingFunction F;   // F(x) >= max{x, f2(x)}
};

DilationTriple make_f2_f4_F(const BoundingClass& cls, const BoundingFunction& f);

}  // namespace bhk
