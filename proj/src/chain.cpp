#include "bhk/chain.hpp"

#include "chain_internal.hpp"

#include <algorithm>
#include <stdexcept>

namespace bhk {

std::string to_string(Finiteness f) {
  switch (f) {
    case Finiteness::finite: return "Fin";
    case Finiteness::homotopically_finite: return "hFin";
    case Finiteness::bounded_homotopically_finite: return "BhFin";
    case Finiteness::lazy: return "lazy";
  }
  return "?";
}

struct ChainComplex::Impl {
  std::string name;
  OraclePtr oracle;
  RingKind ring = RingKind::integers;
  int lo = 0, hi = -1;
  std::vector<ModulePtr> modules;
  std::vector<ModuleMap> diffs;
  ModulePtr zero_module;
  ModuleMap d_lo, d_top, d_none;  // d(lo), d(hi + 1), and zero -> zero
  Finiteness finiteness = Finiteness::finite;
  std::shared_ptr<const HomotopyCertificate> cert;
};

ChainComplex ChainComplex::make(OraclePtr oracle, RingKind ring, int lo, std::vector<ModulePtr> modules,
                                std::vector<ModuleMap> diffs, std::string name) {
  auto impl = std::make_shared<Impl>();
  impl->name = std::move(name);
  impl->oracle = oracle;
  impl->ring = ring;
  impl->lo = lo;
  impl->hi = lo + static_cast<int>(modules.size()) - 1;
  if (modules.empty()) diffs.clear();
  if (!modules.empty() && diffs.size() + 1 != modules.size())
    throw std::invalid_argument("complex needs one differential between consecutive degrees");
  for (const auto& m : modules) {
    if (m->oracle() != oracle) throw std::invalid_argument("complex modules over different groups");
    if (m->ring() != ring) throw std::invalid_argument("complex modules over different rings");
  }
  for (std::size_t k = 0; k < diffs.size(); ++k) {
    if (!diffs[k].domain()->same_as(*modules[k + 1]) || !diffs[k].codomain()->same_as(*modules[k]))
      throw std::invalid_argument("differential d(" + std::to_string(lo + static_cast<int>(k) + 1) +
                                  ") has the wrong domain or codomain");
  }
  impl->zero_module = WeightedModule::zero(oracle, ring);
  impl->d_none = ModuleMap::zero(impl->zero_module, impl->zero_module);
  if (!modules.empty()) {
    impl->d_lo = ModuleMap::zero(modules.front(), impl->zero_module);
    impl->d_top = ModuleMap::zero(impl->zero_module, modules.back());
  }
  impl->finiteness = std::all_of(modules.begin(), modules.end(), [](const ModulePtr& m) { return m->finite_labels(); })
                         ? Finiteness::finite
                         : Finiteness::lazy;
  impl->modules = std::move(modules);
  impl->diffs = std::move(diffs);
  ChainComplex c;
  c.impl_ = impl;
  return c;
}

ChainComplex ChainComplex::zero(OraclePtr oracle, RingKind ring) { return make(std::move(oracle), ring, 0, {}, {}, "0"); }

ChainComplex ChainComplex::concentrated(ModulePtr m, int degree, std::string name) {
  if (name.empty()) name = m->name();
  return make(m->oracle(), m->ring(), degree, {m}, {}, std::move(name));
}

const std::string& ChainComplex::name() const { return impl_->name; }
const OraclePtr& ChainComplex::oracle() const { return impl_->oracle; }
RingKind ChainComplex::ring() const { return impl_->ring; }
int ChainComplex::lo() const { return impl_->lo; }
int ChainComplex::hi() const { return impl_->hi; }

bool ChainComplex::is_zero() const {
  return std::all_of(impl_->modules.begin(), impl_->modules.end(),
                     [](const ModulePtr& m) { return m->is_zero_module(); });
}

const ModulePtr& ChainComplex::module(int n) const {
  if (n < impl_->lo || n > impl_->hi) return impl_->zero_module;
  return impl_->modules[n - impl_->lo];
}

const ModuleMap& ChainComplex::d(int n) const {
  if (impl_->modules.empty()) return impl_->d_none;
  if (n > impl_->lo && n <= impl_->hi) return impl_->diffs[n - impl_->lo - 1];
  if (n == impl_->lo) return impl_->d_lo;
  if (n == impl_->hi + 1) return impl_->d_top;
  return impl_->d_none;
}

std::size_t ChainComplex::rank(int n) const { return module(n)->rank(); }
Finiteness ChainComplex::finiteness() const { return impl_->finiteness; }
const std::shared_ptr<const HomotopyCertificate>& ChainComplex::finiteness_certificate() const { return impl_->cert; }

ChainComplex ChainComplex::with_certificate(Finiteness f, std::shared_ptr<const HomotopyCertificate> cert) const {
  if (f != Finiteness::finite && !cert) throw std::invalid_argument("homotopy finiteness needs a certificate");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->finiteness = f;
  impl->cert = std::move(cert);
  ChainComplex c;
  c.impl_ = impl;
  return c;
}

ChainComplex ChainComplex::named(std::string name) const {
  auto impl = std::make_shared<Impl>(*impl_);
  impl->name = std::move(name);
  ChainComplex c;
  c.impl_ = impl;
  return c;
}

ChainComplex ChainComplex::shifted() const {
  std::vector<ModuleMap> diffs;
  for (const auto& d : impl_->diffs) diffs.push_back(-d);
  return make(oracle(), ring(), lo() + 1, impl_->modules, std::move(diffs), "S" + name());
}

GradedMap::GradedMap(ChainComplex source, ChainComplex target, int degree, std::map<int, ModuleMap> parts,
                     std::string name)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree), name_(std::move(name)) {
  for (auto& [n, m] : parts) {
    if (!m.domain()->same_as(*source_.module(n)) || !m.codomain()->same_as(*target_.module(n + degree_)))
      throw std::invalid_argument("graded map component in degree " + std::to_string(n) + " has the wrong shape");
    parts_.emplace(n, std::move(m));
  }
}

GradedMap GradedMap::identity(const ChainComplex& c) {
  std::map<int, ModuleMap> parts;
  for (int n = c.lo(); n <= c.hi(); ++n) parts.emplace(n, ModuleMap::identity(c.module(n)));
  return GradedMap(c, c, 0, std::move(parts), "id");
}

GradedMap GradedMap::zero(const ChainComplex& source, const ChainComplex& target, int degree) {
  return GradedMap(source, target, degree, {}, "0");
}

GradedMap GradedMap::named(std::string name) const {
  GradedMap g = *this;
  g.name_ = std::move(name);
  return g;
}

ModuleMap GradedMap::at(int n) const {
  auto it = parts_.find(n);
  if (it != parts_.end()) return it->second;
  return ModuleMap::zero(source_.module(n), target_.module(n + degree_));
}

std::vector<int> GradedMap::source_degrees() const {
  std::vector<int> out;
  for (int n = source_.lo(); n <= source_.hi(); ++n)
    if (!source_.module(n)->is_zero_module()) out.push_back(n);
  return out;
}

GradedMap GradedMap::after(const GradedMap& inner) const {
  std::map<int, ModuleMap> parts;
  for (int n : inner.source_degrees()) parts.emplace(n, at(n + inner.degree()).after(inner.at(n)));
  return GradedMap(inner.source(), target_, degree_ + inner.degree(), std::move(parts), name_ + "*" + inner.name());
}

GradedMap GradedMap::operator+(const GradedMap& o) const {
  if (degree_ != o.degree_) throw std::invalid_argument("sum of graded maps of different degrees");
  std::map<int, ModuleMap> parts;
  for (int n : source_degrees()) parts.emplace(n, at(n) + o.at(n));
  return GradedMap(source_, target_, degree_, std::move(parts), name_ + "+" + o.name_);
}

GradedMap GradedMap::operator-(const GradedMap& o) const { return *this + o.scaled(Rational(-1)); }

GradedMap GradedMap::scaled(const Rational& r) const {
  std::map<int, ModuleMap> parts;
  for (const auto& [n, m] : parts_) parts.emplace(n, m.scaled(r));
  return GradedMap(source_, target_, degree_, std::move(parts), name_);
}

GradedMap homotopy_boundary(const GradedMap& h) {
  const auto& A = h.source();
  const auto& B = h.target();
  int k = h.degree();
  std::map<int, ModuleMap> parts;
  for (int n : h.source_degrees()) {
    // d o h + (-1)^(k+1) h o d; for k = 1 this is d h + h d.
    ModuleMap dh = B.d(n + k).after(h.at(n));
    ModuleMap hd = h.at(n - 1).after(A.d(n));
    parts.emplace(n, (k % 2 != 0) ? dh + hd : dh - hd);
  }
  return GradedMap(A, B, k - 1, std::move(parts), "[d," + h.name() + "]");
}

GradedMap commutator_with_d(const GradedMap& f) { return homotopy_boundary(f); }

namespace {

std::optional<BasisKey> first_map_difference(const ModuleMap& x, const ModuleMap& y, const Rational& cutoff) {
  const auto& D = *x.domain();
  if (x.form() == ModuleMap::Form::matrix && y.form() == ModuleMap::Form::matrix) {
    for (const auto& label : D.labels()) {
      BasisKey k = D.generator(label);
      if (x.apply(k) != y.apply(k)) return k;
    }
    return std::nullopt;
  }
  for (const auto& k : D.basis_up_to(cutoff))
    if (x.apply(k) != y.apply(k)) return k;
  return std::nullopt;
}

}  // namespace

std::optional<IdentityFailure> first_difference(const GradedMap& a, const GradedMap& b, const std::string& identity,
                                                const Rational& cutoff) {
  for (int n : a.source_degrees()) {
    auto k = first_map_difference(a.at(n), b.at(n), cutoff);
    if (k) return IdentityFailure{identity, n, key_to_string(*a.source().module(n), *k)};
  }
  return std::nullopt;
}

std::vector<IdentityFailure> check_d_squared(const ChainComplex& c, const Rational& cutoff) {
  std::vector<IdentityFailure> out;
  for (int n = c.lo() + 2; n <= c.hi(); ++n) {
    ModuleMap dd = c.d(n - 1).after(c.d(n));
    ModuleMap z = ModuleMap::zero(c.module(n), c.module(n - 2));
    if (auto k = first_map_difference(dd, z, cutoff)) out.push_back({"d*d = 0", n, key_to_string(*c.module(n), *k)});
  }
  return out;
}

std::vector<IdentityFailure> check_chain_map(const ChainMap& f, const Rational& cutoff) {
  std::vector<IdentityFailure> out;
  const auto& A = f.source();
  const auto& B = f.target();
  for (int n : f.source_degrees()) {
    ModuleMap df = B.d(n + f.degree()).after(f.at(n));
    ModuleMap fd = f.at(n - 1).after(A.d(n));
    if (auto k = first_map_difference(df, fd, cutoff))
      out.push_back({"d*f = f*d", n, key_to_string(*A.module(n), *k)});
  }
  return out;
}

std::optional<BoundingFunction> linear_witness(const GradedMap& f) {
  Rational K(0);
  for (int n : f.source_degrees()) {
    auto k = dehn_constant(f.at(n));
    if (!k) return std::nullopt;
    K = std::max(K, *k);
  }
  return BoundingFunction::linear(K, Rational(0));
}

Verdict check_family_bounded(const GradedMap& f, const BoundingFunction& witness, const SampleOptions& opts,
                             const Rational& cutoff) {
  Verdict v = Verdict::symbolically_verified;
  for (int n : f.source_degrees()) {
    auto c = check_dehn_bounded(f.at(n), witness, ball_sampler(f.source().module(n), cutoff), opts);
    v = combine(v, c.overall());
  }
  return v;
}

namespace {

using namespace detail;

// Degreewise direct sums laid out by parts_of(parts, shifts).
struct SumLayout {
  int lo = 0, hi = -1;
  PartsFn parts_at;
  std::vector<ModulePtr> sums;  // by degree - lo
  const ModulePtr& sum_at(int n) const { return sums.at(n - lo); }
};

SumLayout layout(const std::vector<ChainComplex>& parts, const std::vector<int>& shifts, const std::string& name) {
  SumLayout L;
  L.parts_at = parts_of(parts, shifts);
  bool first = true;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& c = parts[k];
    if (c.hi() < c.lo()) continue;
    int a = c.lo() + shifts[k], b = c.hi() + shifts[k];
    L.lo = first ? a : std::min(L.lo, a);
    L.hi = first ? b : std::max(L.hi, b);
    first = false;
  }
  for (int n = L.lo; n <= L.hi; ++n) L.sums.push_back(direct_sum(L.parts_at(n), name + "_" + std::to_string(n)));
  return L;
}

ChainComplex assemble(const SumLayout& L, const ChainComplex& ref, const std::function<Blocks(int)>& d_blocks,
                      const std::string& name) {
  std::vector<ModulePtr> modules(L.sums.begin(), L.sums.end());
  std::vector<ModuleMap> diffs;
  for (int n = L.lo + 1; n <= L.hi; ++n)
    diffs.push_back(block_map(L.sum_at(n), L.parts_at(n), L.sum_at(n - 1), L.parts_at(n - 1), d_blocks(n)));
  return ChainComplex::make(ref.oracle(), ref.ring(), L.lo, std::move(modules), std::move(diffs), name);
}

}  // namespace

ChainComplex direct_sum(const ChainComplex& a, const ChainComplex& b, std::string name) {
  if (name.empty()) name = a.name() + "+" + b.name();
  return assemble(
      layout({a, b}, {0, 0}, name), a,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = a.d(n);
        bl[1][1] = b.d(n);
        return bl;
      },
      name);
}

ChainComplex cone(const ChainMap& f) {
  if (f.degree() != 0) throw std::invalid_argument("cone of a map of nonzero degree");
  const auto& A = f.source();
  const auto& B = f.target();
  std::string name = "Cone(" + f.name() + ")";
  return assemble(
      layout({B, A}, {0, 1}, name), B,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = B.d(n);
        bl[0][1] = f.at(n - 1);
        bl[1][1] = -A.d(n - 1);
        return bl;
      },
      name);
}

ChainMap cone_inclusion(const ChainMap& f, const ChainComplex& c) {
  const auto& B = f.target();
  return layout_map(B, single(B), c, cone_parts(f), 0, [&](int n) { return one_block(2, 1, 0, 0, id_at(B, n)); },
                    "in");
}

ChainMap cone_projection(const ChainMap& f, const ChainComplex& c) {
  ChainComplex SA = f.source().shifted();
  return layout_map(c, cone_parts(f), SA, single(SA), 0, [&](int n) { return one_block(1, 2, 0, 1, id_at(SA, n)); },
                    "pr");
}

Cylinder cylinder(const ChainMap& f) {
  if (f.degree() != 0) throw std::invalid_argument("cylinder of a map of nonzero degree");
  const auto& A = f.source();
  const auto& B = f.target();
  Cylinder out;
  if (A.is_zero()) {
    out.cyl = B;
    out.j1 = GradedMap::zero(A, B);
    out.j2 = GradedMap::identity(B);
    out.p = GradedMap::identity(B);
    out.h = GradedMap::zero(B, B, 1);
    out.degenerate = true;
    return out;
  }
  std::string name = "Cyl(" + f.name() + ")";
  out.cyl = assemble(
      layout({A, B, A}, {0, 0, 1}, name), A,
      [&](int n) {
        Blocks bl = empty_blocks(3, 3);
        bl[0][0] = A.d(n);
        bl[0][2] = -id_at(A, n - 1);
        bl[1][1] = B.d(n);
        bl[1][2] = f.at(n - 1);
        bl[2][2] = -A.d(n - 1);
        return bl;
      },
      name);
  auto parts = cylinder_parts(f);
  out.j1 = layout_map(A, single(A), out.cyl, parts, 0, [&](int n) { return one_block(3, 1, 0, 0, id_at(A, n)); }, "j1");
  out.j2 = layout_map(B, single(B), out.cyl, parts, 0, [&](int n) { return one_block(3, 1, 1, 0, id_at(B, n)); }, "j2");
  out.p = layout_map(
      out.cyl, parts, B, single(B), 0,
      [&](int n) {
        Blocks bl = empty_blocks(1, 3);
        bl[0][0] = f.at(n);
        bl[0][1] = id_at(B, n);
        return bl;
      },
      "p");
  out.h = layout_map(out.cyl, parts, out.cyl, parts, 1, [&](int n) { return one_block(3, 3, 2, 0, id_at(A, n)); },
                     "h");
  return out;
}

CofibrationReport verify_cofibration(const CofibrationCertificate& c, const SampleOptions& opts,
                                     const Rational& cutoff) {
  CofibrationReport rep;
  auto add = [&](std::vector<IdentityFailure> v) { rep.failures.insert(rep.failures.end(), v.begin(), v.end()); };
  auto same = [&](const GradedMap& a, const GradedMap& b, const std::string& what) {
    if (auto f = first_difference(a, b, what, cutoff)) rep.failures.push_back(*f);
  };
  const auto& A = c.i.source();
  const auto& B = c.i.target();
  add(check_d_squared(c.U, cutoff));
  add(check_chain_map(c.i, cutoff));
  add(check_chain_map(c.q, cutoff));
  same(c.q.after(c.s), GradedMap::identity(c.U), "q*s = 1");
  same(c.r.after(c.i), GradedMap::identity(A), "r*i = 1");
  same(c.i.after(c.r) + c.s.after(c.q), GradedMap::identity(B), "i*r + s*q = 1");
  same(c.q.after(c.i), GradedMap::zero(A, c.U), "q*i = 0");
  if (!rep.failures.empty()) {
    rep.section_bound = Verdict::refuted;
    return rep;
  }
  Verdict v = Verdict::symbolically_verified;
  for (int n = c.U.lo(); n <= c.U.hi(); ++n) {
    if (c.U.module(n)->is_zero_module()) continue;
    auto r = verify_admissible(c.q.at(n), {c.s.at(n), c.bound}, ball_sampler(c.U.module(n), cutoff), opts, cutoff);
    v = combine(v, r.verdict);
  }
  rep.section_bound = v;
  return rep;
}

CofibrationCertificate summand_cofibration(const ChainComplex& a, const ChainComplex& b) {
  ChainComplex B = direct_sum(a, b);
  auto parts = parts_of({a, b}, {0, 0});
  CofibrationCertificate c;
  c.i = layout_map(a, single(a), B, parts, 0, [&](int n) { return one_block(2, 1, 0, 0, id_at(a, n)); }, "i");
  c.U = b;
  c.q = layout_map(B, parts, b, single(b), 0, [&](int n) { return one_block(1, 2, 0, 1, id_at(b, n)); }, "q");
  c.s = layout_map(b, single(b), B, parts, 0, [&](int n) { return one_block(2, 1, 1, 0, id_at(b, n)); }, "s");
  c.r = layout_map(B, parts, a, single(a), 0, [&](int n) { return one_block(1, 2, 0, 0, id_at(a, n)); }, "r");
  return c;
}

CofibrationCertificate zero_cofibration(const ChainComplex& x) {
  ChainComplex z = ChainComplex::zero(x.oracle(), x.ring());
  CofibrationCertificate c;
  c.i = GradedMap::zero(z, x);
  c.U = x;
  c.q = GradedMap::identity(x);
  c.s = GradedMap::identity(x);
  c.r = GradedMap::zero(x, z);
  return c;
}

CofibrationCertificate iso_cofibration(const ChainMap& f, const ChainMap& inverse) {
  ChainComplex z = ChainComplex::zero(f.source().oracle(), f.source().ring());
  CofibrationCertificate c;
  c.i = f;
  c.U = z;
  c.q = GradedMap::zero(f.target(), z);
  c.s = GradedMap::zero(z, f.target());
  c.r = inverse;
  return c;
}

CofibrationCertificate cylinder_front_cofibration(const ChainMap& f, const Cylinder& cyl) {
  if (cyl.degenerate) {
    CofibrationCertificate c = zero_cofibration(cyl.cyl);
    c.i = cyl.j1;
    c.r = GradedMap::zero(cyl.cyl, f.source());
    return c;
  }
  const auto& A = f.source();
  const auto& B = f.target();
  auto cyl_parts = cylinder_parts(f);
  auto cparts = cone_parts(f);
  CofibrationCertificate c;
  c.i = cyl.j1;
  c.U = cone(f);
  c.q = layout_map(
      cyl.cyl, cyl_parts, c.U, cparts, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 3);
        bl[0][1] = id_at(B, n);
        bl[1][2] = id_at(A, n - 1);
        return bl;
      },
      "q");
  c.s = layout_map(
      c.U, cparts, cyl.cyl, cyl_parts, 0,
      [&](int n) {
        Blocks bl = empty_blocks(3, 2);
        bl[1][0] = id_at(B, n);
        bl[2][1] = id_at(A, n - 1);
        return bl;
      },
      "s");
  c.r = layout_map(cyl.cyl, cyl_parts, A, single(A), 0, [&](int n) { return one_block(1, 3, 0, 0, id_at(A, n)); },
                   "r");
  return c;
}

Pushout pushout_along_cofibration(const CofibrationCertificate& ic, const ChainMap& f) {
  const auto& A = ic.i.source();
  const auto& B = ic.i.target();
  const auto& Z = f.target();
  for (int n = A.lo(); n <= A.hi(); ++n)
    if (!f.source().module(n)->same_as(*A.module(n)))
      throw std::invalid_argument("pushout: f does not start at the source of the cofibration");
  const auto& U = ic.U;
  auto parts = parts_of({Z, U}, {0, 0});
  Pushout out;
  out.W = assemble(
      layout({Z, U}, {0, 0}, "W"), Z,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = Z.d(n);
        bl[0][1] = f.at(n - 1).after(ic.r.at(n - 1)).after(B.d(n)).after(ic.s.at(n));
        bl[1][1] = U.d(n);
        return bl;
      },
      "W");
  out.j.i = layout_map(Z, single(Z), out.W, parts, 0, [&](int n) { return one_block(2, 1, 0, 0, id_at(Z, n)); }, "j");
  out.j.U = U;
  out.j.q = layout_map(out.W, parts, U, single(U), 0, [&](int n) { return one_block(1, 2, 0, 1, id_at(U, n)); }, "q'");
  out.j.s = layout_map(U, single(U), out.W, parts, 0, [&](int n) { return one_block(2, 1, 1, 0, id_at(U, n)); }, "s'");
  out.j.r = layout_map(out.W, parts, Z, single(Z), 0, [&](int n) { return one_block(1, 2, 0, 0, id_at(Z, n)); }, "r'");
  out.j.bound = LinearBound{Rational(1), Rational(0)};
  out.b_to_w = layout_map(
      B, single(B), out.W, parts, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 1);
        bl[0][0] = f.at(n).after(ic.r.at(n));
        bl[1][0] = ic.q.at(n);
        return bl;
      },
      "B->W");
  return out;
}

}  // namespace bhk
