#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bhk/module.hpp"

namespace bhk {

/// R-linear map between weighted modules.
///
/// Matrix maps are R[G]-linear with finitely many generators in the domain;
/// they are stored by the image of each generator (1, x) and extended by left
/// translation. Rule maps evaluate an arbitrary function on basis keys (left
/// multiplication, maps of lazily enumerated bases).
class ModuleMap {
 public:
  using KeyRule = std::function<FormalSum(const BasisKey&)>;
  enum class Form { matrix, rule };
  enum class Hint { none, identity, zero, basis_map, left_multiplication };

  ModuleMap() = default;
  static ModuleMap matrix(ModulePtr domain, ModulePtr codomain, std::map<std::string, FormalSum> columns,
                          std::string name = "");
  static ModuleMap rule(ModulePtr domain, ModulePtr codomain, KeyRule rule, std::string name = "");
  static ModuleMap identity(ModulePtr m);
  static ModuleMap zero(ModulePtr domain, ModulePtr codomain);
  /// Map induced by a map of generator labels (finite domain) or of basis keys.
  static ModuleMap label_map(ModulePtr domain, ModulePtr codomain, std::map<std::string, std::string> labels,
                             std::string name = "");
  static ModuleMap key_map(ModulePtr domain, ModulePtr codomain, std::function<BasisKey(const BasisKey&)> keys,
                           std::string name = "");
  /// b -> a * b on a free R[G]-module (left translation of group coordinates).
  static ModuleMap left_multiplication(ModulePtr m, FormalSum a);

  const ModulePtr& domain() const { return domain_; }
  const ModulePtr& codomain() const { return codomain_; }
  Form form() const { return form_; }
  Hint hint() const { return hint_; }
  const std::string& name() const { return name_; }
  ModuleMap named(std::string name) const;

  /// Image of generator x (matrix maps only).
  const FormalSum& column(const std::string& x) const;
  const std::map<std::string, FormalSum>& columns() const;
  /// Entry h_xy in R[G]: the part of column x on label y, as a group ring element.
  FormalSum entry(const std::string& x, const std::string& y) const;
  const FormalSum& multiplier() const { return multiplier_; }  // left multiplication only

  FormalSum apply(const BasisKey& key) const;
  FormalSum apply(const FormalSum& a) const;

  /// this o other.
  ModuleMap after(const ModuleMap& other) const;
  ModuleMap operator+(const ModuleMap& o) const;
  ModuleMap operator-(const ModuleMap& o) const;
  ModuleMap scaled(const Rational& r) const;
  ModuleMap operator-() const { return scaled(Rational(-1)); }

  /// Exact equality of matrix maps; rule maps compare on keys up to cutoff.
  bool equals(const ModuleMap& o, const Rational& cutoff = Rational(8)) const;
  bool is_zero(const Rational& cutoff = Rational(8)) const;

 private:
  ModulePtr domain_, codomain_;
  Form form_ = Form::matrix;
  Hint hint_ = Hint::none;
  std::string name_;
  std::shared_ptr<const std::map<std::string, FormalSum>> columns_;
  KeyRule rule_;
  FormalSum multiplier_;
};

/// Left translation of every group coordinate: g * a.
FormalSum translate(const WeightedModule& m, const GroupElement& g, const FormalSum& a);

/// Block map between direct sums: blocks[j][i] maps summand i of the domain
/// to summand j of the codomain (missing blocks are zero).
ModuleMap block_map(ModulePtr domain_sum, const std::vector<ModulePtr>& domain_parts, ModulePtr codomain_sum,
                    const std::vector<ModulePtr>& codomain_parts,
                    const std::vector<std::vector<std::optional<ModuleMap>>>& blocks);
ModuleMap inclusion(ModulePtr sum, const std::vector<ModulePtr>& parts, std::size_t index);
ModuleMap projection(ModulePtr sum, const std::vector<ModulePtr>& parts, std::size_t index);

}  // namespace bhk
