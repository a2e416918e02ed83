#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "bhk/chain.hpp"

namespace bhk {

/// Element of W_n(G) = Sigma_n x| (+-G)^n acting on Z[G]^n by
/// e_i -> sign[i] g[i] e_{perm[i]}, extended by left translation.
struct MonomialMatrix {
  std::vector<std::size_t> perm;
  std::vector<int> sign;  // +1 or -1
  std::vector<GroupElement> g;

  std::size_t n() const { return perm.size(); }
  static MonomialMatrix identity(const GroupModel& group, std::size_t n);
  /// Throws std::invalid_argument when perm is not a bijection, a sign is not
  /// +-1 or an element is invalid for the group.
  void validate(const GroupModel& group) const;
  auto operator<=>(const MonomialMatrix&) const = default;
};

/// a o b (apply b first). Throws std::invalid_argument on a size mismatch.
MonomialMatrix compose_w(const GroupModel& group, const MonomialMatrix& a, const MonomialMatrix& b);
MonomialMatrix inverse_w(const GroupModel& group, const MonomialMatrix& a);
MonomialMatrix random_monomial(const GroupModel& group, std::size_t n, Rng& rng, std::size_t max_letters = 2);
/// Closure of the generators under composition (the identity included).
/// Throws std::length_error beyond `limit` elements.
std::set<MonomialMatrix> composition_closure(const GroupModel& group, std::size_t n,
                                             const std::vector<MonomialMatrix>& generators, std::size_t limit = 100000);
/// Adjacent transpositions and the sign flip / letter twists of the first coordinate.
std::vector<MonomialMatrix> standard_generators(const GroupModel& group, std::size_t n);

/// Object Z[G][X] of Monomial(G): a finite weighted basis.
struct MonomialObject {
  OraclePtr oracle;
  std::vector<std::pair<std::string, Rational>> basis;
  std::string name = "M";

  std::size_t size() const { return basis.size(); }
  std::optional<std::size_t> index(const std::string& label) const;
  ModulePtr module() const;
};

/// Signed basis element s g x_i, or zero.
struct MonomialImage {
  int sign = 1;
  GroupElement g;
  std::size_t index = 0;
  auto operator<=>(const MonomialImage&) const = default;
};

/// Morphism in normal form: projection of X onto the sub-basis `kept`
/// (ascending), the monomial matrix on it, inclusion onto target indices
/// `image` (ascending): x_{kept[a]} -> sign g y_{image[perm[a]]}.
struct MonomialMorphism {
  MonomialObject source, target;
  std::vector<std::size_t> kept;
  MonomialMatrix middle;
  std::vector<std::size_t> image;

  std::optional<MonomialImage> apply(std::size_t i) const;
  /// Trivial projection part.
  bool is_cofibration() const { return kept.size() == source.size(); }
  /// The induced Z[G]-linear map of modules.
  ModuleMap module_map() const;
};

/// Generators: label inclusion X -> Y (labels of X among those of Y, same
/// weights), label projection Y -> X (other labels go to zero), monomial
/// matrix on an object.
struct MonomialGenerator {
  enum class Kind { inclusion, projection, monomial };
  Kind kind = Kind::monomial;
  MonomialObject source, target;
  MonomialMatrix matrix;  // monomial kind only

  static MonomialGenerator inclusion(MonomialObject sub, MonomialObject whole);
  static MonomialGenerator projection(MonomialObject whole, MonomialObject sub);
  static MonomialGenerator monomial(MonomialObject object, MonomialMatrix m);
  std::optional<MonomialImage> apply(const GroupModel& group, std::size_t i) const;
};

/// chain[0] is applied first. Throws std::invalid_argument when adjacent
/// targets and sources differ or a generator is malformed.
MonomialMorphism normalize(const std::vector<MonomialGenerator>& chain);
/// Raw action of the chain on basis element i of its source.
std::optional<MonomialImage> apply_chain(const std::vector<MonomialGenerator>& chain, std::size_t i);
/// a o b in normal form.
MonomialMorphism compose(const MonomialMorphism& a, const MonomialMorphism& b);
MonomialMorphism identity_morphism(const MonomialObject& x);

/// Word in the generator names ("e" for the identity, "a b^-1", "(1,-2)" for Z^n).
GroupElement parse_element(const GroupModel& group, const std::string& text);

// ------------------------------------------------------------------ pairing

/// F(M, C)_n = M (x) C_n on the basis x|c with weight w(x) + w(c) and
/// differential 1 (x) d. C lives over the integers with a weighted basis.
ChainComplex pair(const MonomialObject& m, const ChainComplex& c);
/// f (x) 1 : F(M, C) -> F(M', C).
ChainMap pair(const MonomialMorphism& f, const ChainComplex& c);
/// 1 (x) phi : F(M, C) -> F(M, C'). Also used for degree-1 families.
GradedMap pair(const MonomialObject& m, const GradedMap& phi);

/// For M -> M' = M + M'' (a label inclusion) and a cofibration C' of C with
/// quotient C'': the comparison map from F(M', C) u_{F(M, C)} F(M, C') to
/// F(M', C') with its complement F(M'', C'').
struct PairingCofibration {
  Pushout pushout;
  MonomialObject complement;  // M''
  CofibrationCertificate comparison;
};
PairingCofibration pairing_cofibration(const MonomialObject& m, const MonomialObject& m_prime,
                                       const CofibrationCertificate& c);

}  // namespace bhk
