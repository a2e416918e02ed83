#include "bhk/monomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "chain_internal.hpp"

namespace bhk {

namespace {

std::string label_of(const std::string& x, const std::string& c) { return x + "|" + c; }

const GroupModel& group_of(const MonomialObject& x) {
  if (!x.oracle) throw std::invalid_argument("monomial object without a group");
  return x.oracle->group();
}

bool same_object(const MonomialObject& a, const MonomialObject& b) { return a.oracle == b.oracle && a.basis == b.basis; }

MonomialImage then(const GroupModel& group, const MonomialImage& x, const MonomialImage& y) {
  return {x.sign * y.sign, group.multiply(x.g, y.g), y.index};
}

MonomialMorphism from_action(const MonomialObject& source, const MonomialObject& target,
                             const std::vector<std::optional<MonomialImage>>& act) {
  const auto& group = group_of(source);
  MonomialMorphism m;
  m.source = source;
  m.target = target;
  for (std::size_t i = 0; i < act.size(); ++i)
    if (act[i]) {
      m.kept.push_back(i);
      m.image.push_back(act[i]->index);
    }
  std::sort(m.image.begin(), m.image.end());
  if (std::adjacent_find(m.image.begin(), m.image.end()) != m.image.end())
    throw std::invalid_argument("monomial morphism is not injective on its support");
  m.middle = MonomialMatrix::identity(group, m.kept.size());
  for (std::size_t a = 0; a < m.kept.size(); ++a) {
    const auto& im = *act[m.kept[a]];
    m.middle.perm[a] = static_cast<std::size_t>(std::lower_bound(m.image.begin(), m.image.end(), im.index) - m.image.begin());
    m.middle.sign[a] = im.sign;
    m.middle.g[a] = im.g;
  }
  return m;
}

}  // namespace

MonomialMatrix MonomialMatrix::identity(const GroupModel& group, std::size_t n) {
  MonomialMatrix m;
  for (std::size_t i = 0; i < n; ++i) {
    m.perm.push_back(i);
    m.sign.push_back(1);
    m.g.push_back(group.identity());
  }
  return m;
}

void MonomialMatrix::validate(const GroupModel& group) const {
  std::size_t k = perm.size();
  if (sign.size() != k || g.size() != k) throw std::invalid_argument("monomial matrix: inconsistent sizes");
  std::vector<bool> seen(k, false);
  for (std::size_t p : perm) {
    if (p >= k || seen[p]) throw std::invalid_argument("monomial matrix: perm is not a bijection");
    seen[p] = true;
  }
  for (int s : sign)
    if (s != 1 && s != -1) throw std::invalid_argument("monomial matrix: signs must be +1 or -1");
  for (const auto& x : g) group.validate(x);
}

MonomialMatrix compose_w(const GroupModel& group, const MonomialMatrix& a, const MonomialMatrix& b) {
  if (a.n() != b.n()) throw std::invalid_argument("compose_w: size mismatch");
  MonomialMatrix out = b;
  for (std::size_t i = 0; i < b.n(); ++i) {
    std::size_t j = b.perm[i];
    out.perm[i] = a.perm[j];
    out.sign[i] = b.sign[i] * a.sign[j];
    out.g[i] = group.multiply(b.g[i], a.g[j]);
  }
  return out;
}

MonomialMatrix inverse_w(const GroupModel& group, const MonomialMatrix& a) {
  MonomialMatrix out = a;
  for (std::size_t i = 0; i < a.n(); ++i) {
    std::size_t j = a.perm[i];
    out.perm[j] = i;
    out.sign[j] = a.sign[i];
    out.g[j] = group.inverse(a.g[i]);
  }
  return out;
}

MonomialMatrix random_monomial(const GroupModel& group, std::size_t n, Rng& rng, std::size_t max_letters) {
  MonomialMatrix m = MonomialMatrix::identity(group, n);
  for (std::size_t i = n; i > 1; --i) std::swap(m.perm[i - 1], m.perm[rng.below(i)]);
  for (std::size_t i = 0; i < n; ++i) {
    m.sign[i] = rng.coin() ? 1 : -1;
    m.g[i] = random_element(group, rng, max_letters);
  }
  return m;
}

std::vector<MonomialMatrix> standard_generators(const GroupModel& group, std::size_t n) {
  std::vector<MonomialMatrix> out;
  if (n == 0) return out;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    auto t = MonomialMatrix::identity(group, n);
    std::swap(t.perm[i], t.perm[i + 1]);
    out.push_back(t);
  }
  auto flip = MonomialMatrix::identity(group, n);
  flip.sign[0] = -1;
  out.push_back(flip);
  for (long s : group.letters()) {
    if (s < 0) continue;
    auto t = MonomialMatrix::identity(group, n);
    t.g[0] = group.letter(s);
    out.push_back(t);
  }
  return out;
}

std::set<MonomialMatrix> composition_closure(const GroupModel& group, std::size_t n,
                                             const std::vector<MonomialMatrix>& generators, std::size_t limit) {
  std::set<MonomialMatrix> seen{MonomialMatrix::identity(group, n)};
  std::vector<MonomialMatrix> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<MonomialMatrix> next;
    for (const auto& x : frontier)
      for (const auto& g : generators) {
        auto y = compose_w(group, g, x);
        if (seen.insert(y).second) {
          if (seen.size() > limit) throw std::length_error("composition closure exceeds the limit");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return seen;
}

std::optional<std::size_t> MonomialObject::index(const std::string& label) const {
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis[i].first == label) return i;
  return std::nullopt;
}

ModulePtr MonomialObject::module() const { return WeightedModule::free(oracle, basis, name); }

std::optional<MonomialImage> MonomialMorphism::apply(std::size_t i) const {
  auto it = std::lower_bound(kept.begin(), kept.end(), i);
  if (it == kept.end() || *it != i) return std::nullopt;
  std::size_t a = static_cast<std::size_t>(it - kept.begin());
  return MonomialImage{middle.sign[a], middle.g[a], image[middle.perm[a]]};
}

ModuleMap MonomialMorphism::module_map() const {
  auto dom = source.module(), cod = target.module();
  std::map<std::string, FormalSum> cols;
  for (std::size_t i = 0; i < source.size(); ++i) {
    FormalSum col;
    if (auto im = apply(i)) col.add(BasisKey{im->g, target.basis[im->index].first}, Rational(im->sign));
    cols[source.basis[i].first] = col;
  }
  return ModuleMap::matrix(dom, cod, std::move(cols), "monomial");
}

MonomialGenerator MonomialGenerator::inclusion(MonomialObject sub, MonomialObject whole) {
  if (sub.oracle != whole.oracle) throw std::invalid_argument("inclusion between different groups");
  for (const auto& [x, w] : sub.basis) {
    auto k = whole.index(x);
    if (!k || whole.basis[*k].second != w)
      throw std::invalid_argument("inclusion: label '" + x + "' missing from the target or weighted differently");
  }
  return {Kind::inclusion, std::move(sub), std::move(whole), {}};
}

MonomialGenerator MonomialGenerator::projection(MonomialObject whole, MonomialObject sub) {
  auto inc = inclusion(sub, whole);
  return {Kind::projection, std::move(inc.target), std::move(inc.source), {}};
}

MonomialGenerator MonomialGenerator::monomial(MonomialObject object, MonomialMatrix m) {
  m.validate(group_of(object));
  if (m.n() != object.size()) throw std::invalid_argument("monomial matrix size differs from the object");
  MonomialGenerator g{Kind::monomial, object, object, std::move(m)};
  return g;
}

std::optional<MonomialImage> MonomialGenerator::apply(const GroupModel& group, std::size_t i) const {
  switch (kind) {
    case Kind::inclusion:
      return MonomialImage{1, group.identity(), *target.index(source.basis.at(i).first)};
    case Kind::projection: {
      auto k = target.index(source.basis.at(i).first);
      if (!k) return std::nullopt;
      return MonomialImage{1, group.identity(), *k};
    }
    case Kind::monomial:
      return MonomialImage{matrix.sign.at(i), matrix.g.at(i), matrix.perm.at(i)};
  }
  return std::nullopt;
}

std::optional<MonomialImage> apply_chain(const std::vector<MonomialGenerator>& chain, std::size_t i) {
  if (chain.empty()) throw std::invalid_argument("empty chain");
  const auto& group = group_of(chain.front().source);
  std::optional<MonomialImage> cur = MonomialImage{1, group.identity(), i};
  for (const auto& gen : chain) {
    if (!cur) return cur;
    auto step = gen.apply(group, cur->index);
    if (!step) return std::nullopt;
    cur = then(group, *cur, *step);
  }
  return cur;
}

MonomialMorphism normalize(const std::vector<MonomialGenerator>& chain) {
  if (chain.empty()) throw std::invalid_argument("empty chain");
  for (std::size_t k = 0; k + 1 < chain.size(); ++k)
    if (!same_object(chain[k].target, chain[k + 1].source))
      throw std::invalid_argument("chain is not composable at position " + std::to_string(k + 1));
  std::vector<std::optional<MonomialImage>> act;
  for (std::size_t i = 0; i < chain.front().source.size(); ++i) act.push_back(apply_chain(chain, i));
  return from_action(chain.front().source, chain.back().target, act);
}

MonomialMorphism compose(const MonomialMorphism& a, const MonomialMorphism& b) {
  if (!same_object(b.target, a.source)) throw std::invalid_argument("compose: morphisms are not composable");
  const auto& group = group_of(b.source);
  std::vector<std::optional<MonomialImage>> act;
  for (std::size_t i = 0; i < b.source.size(); ++i) {
    auto x = b.apply(i);
    std::optional<MonomialImage> y;
    if (x) {
      if (auto z = a.apply(x->index)) y = then(group, *x, *z);
    }
    act.push_back(y);
  }
  return from_action(b.source, a.target, act);
}

MonomialMorphism identity_morphism(const MonomialObject& x) {
  return normalize({MonomialGenerator::monomial(x, MonomialMatrix::identity(group_of(x), x.size()))});
}

GroupElement parse_element(const GroupModel& group, const std::string& text) {
  std::string s = text;
  s.erase(0, s.find_first_not_of(' '));
  s.erase(s.find_last_not_of(' ') + 1);
  if (s.empty() || s == "e" || s == "1") return group.identity();
  if (s.front() == '(') {
    if (group.kind() != GroupKind::Zn || s.back() != ')') throw std::invalid_argument("bad group element '" + text + "'");
    GroupElement g;
    std::stringstream ss(s.substr(1, s.size() - 2));
    std::string part;
    while (std::getline(ss, part, ',')) g.push_back(std::stol(part));
    if (s.size() == 2) g.clear();
    group.validate(g);
    return g;
  }
  Word w;
  std::stringstream ss(s);
  std::string tok;
  const auto& names = group.generator_names();
  while (ss >> tok) {
    long power = 1;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    if (caret != std::string::npos) {
      try {
        power = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in '" + tok + "'");
      }
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw std::invalid_argument("unknown generator '" + name + "'");
    long letter = static_cast<long>(it - names.begin()) + 1;
    for (long k = 0; k < std::labs(power); ++k) w.push_back(power < 0 ? -letter : letter);
  }
  return group.evaluate(w);
}

// ------------------------------------------------------------------ pairing

namespace {

void require_plain(const ChainComplex& c) {
  for (int n = c.lo(); n <= c.hi(); ++n)
    if (c.module(n)->has_group() || !c.module(n)->finite_labels())
      throw std::invalid_argument("pairing needs a finite complex over the integers with a weighted basis");
}

ModulePtr tensor_module(const MonomialObject& m, const ModulePtr& c, const std::string& name) {
  std::vector<std::pair<std::string, Rational>> labels;
  for (const auto& [x, w] : m.basis)
    for (const auto& y : c->labels()) labels.push_back({label_of(x, y), Rational(w + c->label_weight(y))});
  return WeightedModule::free(m.oracle, std::move(labels), name);
}

// 1 (x) phi on one component.
ModuleMap tensor_right(const MonomialObject& m, const ModulePtr& dom, const ModulePtr& cod, const ModuleMap& phi) {
  std::map<std::string, FormalSum> cols;
  const auto& group = group_of(m);
  for (const auto& [x, w] : m.basis)
    for (const auto& y : phi.domain()->labels()) {
      FormalSum col;
      for (const auto& [key, coeff] : phi.column(y)) col.add(BasisKey{group.identity(), label_of(x, key.x)}, coeff);
      cols[label_of(x, y)] = col;
    }
  return ModuleMap::matrix(dom, cod, std::move(cols));
}

}  // namespace

ChainComplex pair(const MonomialObject& m, const ChainComplex& c) {
  require_plain(c);
  group_of(m);
  std::vector<ModulePtr> mods;
  std::vector<ModuleMap> diffs;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    mods.push_back(tensor_module(m, c.module(n), "F(" + m.name + "," + c.name() + ")" + std::to_string(n)));
    if (n > c.lo()) diffs.push_back(tensor_right(m, mods.back(), mods[mods.size() - 2], c.d(n)));
  }
  return ChainComplex::make(m.oracle, c.ring(), c.lo(), std::move(mods), std::move(diffs),
                            "F(" + m.name + "," + c.name() + ")");
}

ChainMap pair(const MonomialMorphism& f, const ChainComplex& c) {
  auto src = pair(f.source, c), dst = pair(f.target, c);
  std::map<int, ModuleMap> parts;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    if (c.module(n)->is_zero_module()) continue;
    std::map<std::string, FormalSum> cols;
    for (std::size_t i = 0; i < f.source.size(); ++i)
      for (const auto& y : c.module(n)->labels()) {
        FormalSum col;
        if (auto im = f.apply(i)) col.add(BasisKey{im->g, label_of(f.target.basis[im->index].first, y)}, Rational(im->sign));
        cols[label_of(f.source.basis[i].first, y)] = col;
      }
    parts.emplace(n, ModuleMap::matrix(src.module(n), dst.module(n), std::move(cols)));
  }
  return GradedMap(src, dst, 0, std::move(parts), "F(f,1)");
}

GradedMap pair(const MonomialObject& m, const GradedMap& phi) {
  auto src = pair(m, phi.source()), dst = pair(m, phi.target());
  std::map<int, ModuleMap> parts;
  for (int n : phi.source_degrees()) {
    if (phi.source().module(n)->is_zero_module()) continue;
    parts.emplace(n, tensor_right(m, src.module(n), dst.module(n + phi.degree()), phi.at(n)));
  }
  return GradedMap(src, dst, phi.degree(), std::move(parts), "F(1," + phi.name() + ")");
}

PairingCofibration pairing_cofibration(const MonomialObject& m, const MonomialObject& m_prime,
                                       const CofibrationCertificate& c) {
  using namespace detail;
  PairingCofibration out;
  out.complement = MonomialObject{m_prime.oracle, {}, m_prime.name + "/" + m.name};
  for (const auto& b : m_prime.basis)
    if (!m.index(b.first)) out.complement.basis.push_back(b);
  auto jm = normalize({MonomialGenerator::inclusion(m, m_prime)});
  auto pm = normalize({MonomialGenerator::projection(m_prime, m)});
  auto j2 = normalize({MonomialGenerator::inclusion(out.complement, m_prime)});
  auto p2 = normalize({MonomialGenerator::projection(m_prime, out.complement)});

  const auto& C = c.i.source();
  const auto& C2 = c.i.target();
  CofibrationCertificate left;
  left.i = pair(m, c.i);
  left.U = pair(m, c.U);
  left.q = pair(m, c.q);
  left.s = pair(m, c.s);
  left.r = pair(m, c.r);
  Rational a = c.bound.a < 1 ? Rational(1) : c.bound.a;
  left.bound = LinearBound{a, c.bound.b};
  out.pushout = pushout_along_cofibration(left, pair(jm, C));

  const auto& W = out.pushout.W;
  ChainComplex Z = pair(m_prime, C), Ufm = left.U;
  ChainComplex T = pair(m_prime, C2);
  auto pW = parts_of({Z, Ufm}, {0, 0});
  auto top_i = pair(m_prime, c.i);
  auto top_u = pair(jm, C2).after(left.s);
  auto cmp = layout_map(
      W, pW, T, single(T), 0,
      [&](int n) {
        Blocks bl = empty_blocks(1, 2);
        if (!top_i.source().module(n)->is_zero_module()) bl[0][0] = top_i.at(n);
        if (!Ufm.module(n)->is_zero_module()) bl[0][1] = top_u.at(n);
        return bl;
      },
      "comparison");
  auto r_z = pair(m_prime, c.r);
  auto r_u = pair(pm, c.U).after(pair(m_prime, c.q));
  auto r = layout_map(
      T, single(T), W, pW, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 1);
        bl[0][0] = r_z.at(n);
        bl[1][0] = r_u.at(n);
        return bl;
      },
      "r");
  out.comparison.i = cmp;
  out.comparison.U = pair(out.complement, c.U);
  out.comparison.q = pair(p2, c.U).after(pair(m_prime, c.q)).named("q");
  out.comparison.s = pair(j2, C2).after(pair(out.complement, c.s)).named("s");
  out.comparison.r = r;
  out.comparison.bound = left.bound;
  return out;
}

}  // namespace bhk
