#include "bhk/homotopy.hpp"

#include <stdexcept>

#include "chain_internal.hpp"

namespace bhk {

namespace {

using namespace detail;
using OW = std::optional<BoundingFunction>;

OW comp(const OW& outer, const OW& inner) {
  if (!outer || !inner) return std::nullopt;
  return dominate_composition(*outer, *inner);
}

OW comb(const std::vector<OW>& ws) {
  std::vector<std::pair<Rational, BoundingFunction>> terms;
  for (const auto& w : ws) {
    if (!w) return std::nullopt;
    terms.emplace_back(Rational(1), *w);
  }
  return dominate_combination(terms);
}

OW given_or_columns(const OW& w, const GradedMap& m) { return w ? w : linear_witness(m); }

std::string larger_class(const std::string& a, const std::string& b) {
  auto rank = [](const std::string& c) { return growth_rank(BoundingClass::by_name(c).generators().back()); };
  return rank(a) < rank(b) ? b : a;
}

GradedMap differential(const ChainComplex& c) {
  std::map<int, ModuleMap> parts;
  for (int n = c.lo(); n <= c.hi(); ++n) parts.emplace(n, c.d(n));
  return GradedMap(c, c, -1, std::move(parts), "d");
}

void expect_degree(std::vector<IdentityFailure>& out, const GradedMap& m, int degree, const std::string& what) {
  if (m.degree() != degree) out.push_back({what + " has degree " + std::to_string(degree), m.degree(), ""});
}

std::vector<IdentityFailure> exact_failures(const HomotopyCertificate& c, const Rational& cutoff) {
  std::vector<IdentityFailure> out;
  expect_degree(out, c.F, 0, "F");
  expect_degree(out, c.G, 0, "G");
  expect_degree(out, c.h, 1, "h");
  expect_degree(out, c.k, 1, "k");
  if (!out.empty()) return out;
  auto add = [&](std::vector<IdentityFailure> v) { out.insert(out.end(), v.begin(), v.end()); };
  add(check_chain_map(c.F, cutoff));
  add(check_chain_map(c.G, cutoff));
  const auto& A = c.F.source();
  const auto& B = c.F.target();
  if (auto f = first_difference(c.G.after(c.F) - GradedMap::identity(A), homotopy_boundary(c.h), "G*F - 1 = dh + hd",
                                cutoff))
    out.push_back(*f);
  if (auto f = first_difference(c.F.after(c.G) - GradedMap::identity(B), homotopy_boundary(c.k), "F*G - 1 = dk + kd",
                                cutoff))
    out.push_back(*f);
  return out;
}

void require_exact(const HomotopyCertificate& c, const std::string& what) {
  auto fails = exact_failures(c, Rational(8));
  if (!fails.empty())
    throw std::invalid_argument(what + " fails " + fails.front().identity + " in degree " +
                                std::to_string(fails.front().degree) + " at " + fails.front().element);
}

}  // namespace

EquivalenceReport verify_equivalence(const HomotopyCertificate& cert, const SampleOptions& opts,
                                     const Rational& cutoff) {
  EquivalenceReport rep;
  rep.exact_failures = exact_failures(cert, cutoff);
  BoundingClass cls = BoundingClass::by_name(cert.cls);
  struct Item {
    const char* name;
    const GradedMap* map;
    const OW* witness;
  };
  Verdict v = rep.exact() ? Verdict::symbolically_verified : Verdict::refuted;
  for (const Item& it : {Item{"F", &cert.F, &cert.wF}, Item{"G", &cert.G, &cert.wG}, Item{"h", &cert.h, &cert.wh},
                         Item{"k", &cert.k, &cert.wk}}) {
    FamilyCheck fc;
    fc.family = it.name;
    fc.witness = given_or_columns(*it.witness, *it.map);
    if (fc.witness) {
      fc.in_class = cls.contains(*fc.witness);
      fc.verdict = fc.in_class ? check_family_bounded(*it.map, *fc.witness, opts, cutoff) : Verdict::inconclusive;
    }
    v = combine(v, fc.verdict);
    rep.families.push_back(std::move(fc));
  }
  rep.verdict = v;
  return rep;
}

HomotopyCertificate identity_certificate(const ChainComplex& c, std::string cls) {
  HomotopyCertificate h;
  h.F = GradedMap::identity(c);
  h.G = GradedMap::identity(c);
  h.h = GradedMap::zero(c, c, 1);
  h.k = GradedMap::zero(c, c, 1);
  h.wF = h.wG = BoundingFunction::identity();
  h.wh = h.wk = BoundingFunction::constant(Rational(0));
  h.cls = std::move(cls);
  return h;
}

HomotopyCertificate inverse_certificate(const HomotopyCertificate& c) {
  HomotopyCertificate out = c;
  std::swap(out.F, out.G);
  std::swap(out.h, out.k);
  std::swap(out.wF, out.wG);
  std::swap(out.wh, out.wk);
  return out;
}

HomotopyCertificate compose_certificates(const HomotopyCertificate& a, const HomotopyCertificate& b) {
  HomotopyCertificate out;
  out.F = b.F.after(a.F);
  out.G = a.G.after(b.G);
  out.h = a.h + a.G.after(b.h).after(a.F);
  out.k = b.k + b.F.after(a.k).after(b.G);
  OW waF = given_or_columns(a.wF, a.F), waG = given_or_columns(a.wG, a.G);
  OW wbF = given_or_columns(b.wF, b.F), wbG = given_or_columns(b.wG, b.G);
  out.wF = comp(wbF, waF);
  out.wG = comp(waG, wbG);
  out.wh = comb({given_or_columns(a.wh, a.h), comp(waG, comp(given_or_columns(b.wh, b.h), waF))});
  out.wk = comb({given_or_columns(b.wk, b.k), comp(wbF, comp(given_or_columns(a.wk, a.k), wbG))});
  out.cls = larger_class(a.cls, b.cls);
  return out;
}

HomotopyCertificate cylinder_certificate(const Cylinder& cyl) {
  HomotopyCertificate c;
  c.F = cyl.p;
  c.G = cyl.j2;
  c.h = cyl.h;
  c.k = GradedMap::zero(cyl.p.target(), cyl.p.target(), 1);
  c.wF = linear_witness(cyl.p);
  c.wG = BoundingFunction::identity();
  c.wh = cyl.degenerate ? BoundingFunction::constant(Rational(0)) : BoundingFunction::identity();
  c.wk = BoundingFunction::constant(Rational(0));
  return c;
}

ContractionReport verify_contraction(const ChainComplex& a, const ContractionCertificate& cert,
                                     const SampleOptions& opts, const Rational& cutoff) {
  ContractionReport rep;
  if (cert.c.degree() != 1) {
    rep.failures.push_back({"contraction has degree 1", cert.c.degree(), ""});
    rep.bounded = Verdict::refuted;
    return rep;
  }
  if (auto f = first_difference(homotopy_boundary(cert.c), GradedMap::identity(a), "dc + cd = 1", cutoff))
    rep.failures.push_back(*f);
  OW w = given_or_columns(cert.witness, cert.c);
  Verdict v = w ? check_family_bounded(cert.c, *w, opts, cutoff) : Verdict::inconclusive;
  rep.bounded = rep.failures.empty() ? v : Verdict::refuted;
  return rep;
}

ContractionCertificate cone_contraction(const HomotopyCertificate& cert) {
  const auto& F = cert.F;
  ChainComplex K = cone(F);
  auto parts = cone_parts(F);
  // s0(y, x) = (-k y, G y + h x) has d s0 + s0 d = 1 + E with E(y, x) = ((F h - k F) x, 0),
  // E^2 = 0 and [d, E] = 0, so s0 (1 - E) contracts.
  GradedMap s0 = layout_map(
      K, parts, K, parts, 1,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = -cert.k.at(n);
        bl[1][0] = cert.G.at(n);
        bl[1][1] = cert.h.at(n - 1);
        return bl;
      },
      "s0");
  GradedMap E = layout_map(
      K, parts, K, parts, 0,
      [&](int n) {
        return one_block(2, 2, 0, 1, F.at(n).after(cert.h.at(n - 1)) - cert.k.at(n - 1).after(F.at(n - 1)));
      },
      "E");
  ContractionCertificate out;
  out.c = (s0 - s0.after(E)).named("c");
  OW wF = given_or_columns(cert.wF, F), wG = given_or_columns(cert.wG, cert.G);
  OW wh = given_or_columns(cert.wh, cert.h), wk = given_or_columns(cert.wk, cert.k);
  OW w_s0 = comb({wk, wG, wh});
  OW w_E = comb({comp(wF, wh), comp(wk, wF)});
  out.witness = comp(w_s0, comb({BoundingFunction::identity(), w_E}));
  return out;
}

HomotopyCertificate quotient_equivalence(const CofibrationCertificate& ses, const ContractionCertificate& contraction,
                                         std::string cls) {
  const auto& A = ses.i.source();
  const auto& B = ses.i.target();
  const auto& C = ses.U;
  SampleOptions quick;
  quick.trials = 20;
  auto cof = verify_cofibration(ses, quick);
  if (!cof.failures.empty())
    throw std::invalid_argument("quotient_equivalence: sequence fails " + cof.failures.front().identity);
  auto con = verify_contraction(A, contraction, quick);
  if (!con.failures.empty()) throw std::invalid_argument("quotient_equivalence: contraction fails dc + cd = 1");

  // tau = d s - s d lands in i A; phi = r tau.
  std::map<int, ModuleMap> tau_parts;
  for (int n = C.lo(); n <= C.hi(); ++n) {
    if (C.module(n)->is_zero_module()) continue;
    tau_parts.emplace(n, B.d(n).after(ses.s.at(n)) - ses.s.at(n - 1).after(C.d(n)));
  }
  GradedMap tau(C, B, -1, std::move(tau_parts), "tau");
  GradedMap phi = ses.r.after(tau);
  const auto& c = contraction.c;

  HomotopyCertificate out;
  out.F = ses.q;
  out.G = (ses.s - ses.i.after(c.after(phi))).named("G");
  out.h = -ses.i.after(c).after(ses.r);
  out.k = GradedMap::zero(C, C, 1);
  out.cls = std::move(cls);

  OW ws = BoundingFunction::linear(ses.bound.a, ses.bound.b);
  OW wi = linear_witness(ses.i), wr = linear_witness(ses.r), wq = linear_witness(ses.q);
  OW wc = given_or_columns(contraction.witness, c);
  OW w_tau = comb({comp(linear_witness(differential(B)), ws), comp(ws, linear_witness(differential(C)))});
  out.wF = wq;
  out.wG = comb({ws, comp(wi, comp(wc, comp(wr, w_tau)))});
  out.wh = comp(wi, comp(wc, wr));
  out.wk = BoundingFunction::constant(Rational(0));
  return out;
}

HomotopyCertificate equivalence_from_cone_contraction(const ChainMap& f, const ContractionCertificate& s,
                                                     std::string cls) {
  const auto& X = f.source();
  const auto& Y = f.target();
  ChainComplex K = cone(f);
  auto parts = cone_parts(f);
  auto block = [&](std::size_t row, std::size_t col, const ChainComplex& from, const ChainComplex& to, int shift_in,
                   int degree, const std::string& name) {
    // component from (degree n of `from`) through the cone and back out
    std::map<int, ModuleMap> out;
    for (int n = from.lo(); n <= from.hi(); ++n) {
      if (from.module(n)->is_zero_module()) continue;
      int m = n + shift_in;  // cone degree holding from_n
      auto in = inclusion(K.module(m), parts(m), col);
      auto pr = projection(K.module(m + 1), parts(m + 1), row);
      out.emplace(n, pr.after(s.c.at(m)).after(in));
    }
    return GradedMap(from, to, degree, std::move(out), name);
  };
  HomotopyCertificate out;
  out.F = f;
  out.G = block(1, 0, Y, X, 0, 0, "G");
  out.h = block(1, 1, X, X, 1, 1, "h");
  out.k = -block(0, 0, Y, Y, 0, 1, "k");
  out.wF = linear_witness(f);
  out.wG = out.wh = out.wk = s.witness ? s.witness : linear_witness(s.c);
  out.cls = std::move(cls);
  return out;
}

ContractionCertificate extension_contraction(const CofibrationCertificate& ses, const ContractionCertificate& kernel,
                                             const ContractionCertificate& quotient) {
  // q: B -> Q is an equivalence (G, h); 1 = G [c_Q] q - [h] = [G c_Q q - h].
  auto eq = quotient_equivalence(ses, kernel);
  ContractionCertificate out;
  out.c = (eq.G.after(quotient.c).after(eq.F) - eq.h).named("c");
  OW wq = quotient.witness ? quotient.witness : linear_witness(quotient.c);
  out.witness = comb({comp(eq.wG, comp(wq, eq.wF)), eq.wh});
  return out;
}

HomotopyCertificate saturation_complete(const ChainMap& f, const ChainMap& g,
                                        const std::optional<HomotopyCertificate>& cf,
                                        const std::optional<HomotopyCertificate>& cg,
                                        const std::optional<HomotopyCertificate>& cgf) {
  int given = int(cf.has_value()) + int(cg.has_value()) + int(cgf.has_value());
  if (given != 2) throw std::invalid_argument("saturation needs exactly two of the three certificates");
  ChainMap gf = g.after(f);
  auto match = [](const HomotopyCertificate& c, const ChainMap& m, const std::string& what) {
    require_exact(c, what);
    if (first_difference(c.F, m, what + " forward map"))
      throw std::invalid_argument(what + " does not certify the given map");
  };
  if (cf) match(*cf, f, "certificate for f");
  if (cg) match(*cg, g, "certificate for g");
  if (cgf) match(*cgf, gf, "certificate for g*f");

  if (cf && cg) return compose_certificates(*cf, *cg);

  HomotopyCertificate out;
  const auto& H = cgf->G;  // C -> A
  OW wH = given_or_columns(cgf->wG, H), wf = linear_witness(f), wg = linear_witness(g);
  OW w_hgf = given_or_columns(cgf->wh, cgf->h), w_kgf = given_or_columns(cgf->wk, cgf->k);
  out.cls = cgf->cls;
  if (cf) {
    // inverse of g is f H
    const auto& finv = cf->G;
    const auto& kf = cf->k;
    out.F = g;
    out.G = f.after(H);
    out.h = kf - f.after(H).after(g).after(kf) + f.after(cgf->h).after(finv);
    out.k = cgf->k;
    OW wkf = given_or_columns(cf->wk, kf);
    out.wF = wg;
    out.wG = comp(wf, wH);
    out.wh = comb({wkf, comp(wf, comp(wH, comp(wg, wkf))),
                   comp(wf, comp(w_hgf, given_or_columns(cf->wG, finv)))});
    out.wk = w_kgf;
    return out;
  }
  // inverse of f is H g
  const auto& ginv = cg->G;
  const auto& hg = cg->h;
  out.F = f;
  out.G = H.after(g);
  out.h = cgf->h;
  out.k = hg - hg.after(f).after(H).after(g) + ginv.after(cgf->k).after(g);
  OW whg = given_or_columns(cg->wh, hg);
  out.wF = wf;
  out.wG = comp(wH, wg);
  out.wh = w_hgf;
  out.wk = comb({whg, comp(whg, comp(wf, comp(wH, wg))), comp(given_or_columns(cg->wG, ginv), comp(w_kgf, wg))});
  return out;
}

std::vector<IdentityFailure> check_homotopic(const ChainMap& a, const ChainMap& b, const Homotopy& H,
                                             const Rational& cutoff) {
  std::vector<IdentityFailure> out;
  if (auto f = first_difference(a - b, homotopy_boundary(H), "a - b = dH + Hd", cutoff)) out.push_back(*f);
  return out;
}

App2Result app2_factorize(const ChainMap& f, const HomotopyCertificate& j) {
  if (!f.source().finite()) throw std::invalid_argument("app2: source complex is not finite");
  if (!j.F.target().finite()) throw std::invalid_argument("app2: replacement complex is not finite");
  require_exact(j, "equivalence D ~ D'");
  ChainMap Ff = j.F.after(f).named("Ff");
  App2Result out;
  out.cylinder = cylinder(Ff);
  out.g = cylinder_front_cofibration(Ff, out.cylinder);
  out.h = j.G.after(out.cylinder.p).named("h");
  out.h_cert = compose_certificates(cylinder_certificate(out.cylinder), inverse_certificate(j));
  out.hg_to_f = j.h.after(f);
  return out;
}

}  // namespace bhk
