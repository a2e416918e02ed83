#include "bhk/waldhausen.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "bhk/parallel.hpp"
#include "chain_internal.hpp"

namespace bhk {

namespace {

using namespace detail;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) out.push_back(part);
  return out;
}

}  // namespace

CategoryProfile CategoryProfile::parse(const std::string& text, const std::string& cls) {
  // also accepts the lower-case dashed spelling, e.g. fin-free-bh
  std::string norm = text;
  for (auto& ch : norm)
    if (ch == '-') ch = '/';
  auto parts = split(norm, '/');
  static const std::map<std::string, std::string> canon = {{"fin", "Fin"},     {"hfin", "hFin"}, {"bhfin", "BhFin"},
                                                           {"bh", "Bh"},       {"h", "h"},       {"free", "free"},
                                                           {"projective", "projective"}, {"all", "all"},
                                                           {"bounded", "bounded"}};
  for (auto& part : parts) {
    std::string lower = part;
    for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (auto it = canon.find(lower); it != canon.end()) part = it->second;
  }
  if (parts.size() < 3 || parts.size() > 4)
    throw std::invalid_argument("profile must look like Fin/free/Bh[/bounded], got '" + text + "'");
  CategoryProfile p;
  p.cls = cls;
  if (parts[0] == "Fin") p.objects = ObjectKind::Fin;
  else if (parts[0] == "hFin") p.objects = ObjectKind::hFin;
  else if (parts[0] == "BhFin") p.objects = ObjectKind::BhFin;
  else throw std::invalid_argument("unknown object kind '" + parts[0] + "'");
  if (parts[1] == "free") p.modules = ModuleKind::free;
  else if (parts[1] == "projective") p.modules = ModuleKind::projective;
  else throw std::invalid_argument("unknown module kind '" + parts[1] + "'");
  if (parts[2] == "h") p.weq = WeqKind::h;
  else if (parts[2] == "Bh") p.weq = WeqKind::Bh;
  else throw std::invalid_argument("unknown weak equivalence kind '" + parts[2] + "'");
  p.morphisms = p.weq == WeqKind::Bh ? MorphismKind::bounded : MorphismKind::all;
  if (parts.size() == 4) {
    if (parts[3] == "all") p.morphisms = MorphismKind::all;
    else if (parts[3] == "bounded") p.morphisms = MorphismKind::bounded;
    else throw std::invalid_argument("unknown morphism kind '" + parts[3] + "'");
  }
  BoundingClass::by_name(cls);
  p.validate();
  return p;
}

std::string CategoryProfile::to_string() const {
  std::string o = objects == ObjectKind::Fin ? "Fin" : objects == ObjectKind::hFin ? "hFin" : "BhFin";
  std::string m = modules == ModuleKind::free ? "free" : "projective";
  std::string w = weq == WeqKind::h ? "h" : "Bh";
  std::string f = morphisms == MorphismKind::all ? "all" : "bounded";
  return o + "/" + m + "/" + w + "/" + f;
}

void CategoryProfile::validate() const {
  if (objects == ObjectKind::BhFin && weq != WeqKind::Bh)
    throw std::invalid_argument("BhFin objects need bounded weak equivalences");
  if (objects == ObjectKind::hFin && weq != WeqKind::h)
    throw std::invalid_argument("hFin objects come with unbounded weak equivalences");
  if (weq == WeqKind::Bh && morphisms != MorphismKind::bounded)
    throw std::invalid_argument("bounded weak equivalences live in a category of bounded maps");
}

InstanceGenerator default_generator(OraclePtr oracle) {
  if (!oracle) oracle = std::make_shared<LengthOracle>(GroupModel::Zn(1));
  return [oracle](Rng& rng, const std::string& name) {
    RandomComplexOptions o;
    o.lo = 0;
    o.hi = 1;
    o.max_pieces = 1;
    o.max_homology = 1;
    o.transvections = 2;
    o.group_letters = 1;
    return random_complex(oracle, rng, o, name);
  };
}

bool AxiomSuiteReport::ok() const {
  for (const auto& a : axioms)
    if (a.failed > 0) return false;
  return !axioms.empty();
}

GlueingResult glue_equivalence(const CofibrationCertificate& i, const ChainMap& f, const HomotopyCertificate& gamma) {
  GlueingResult out;
  const auto& C = f.target();
  const auto& C2 = gamma.F.target();
  const auto& U = i.U;
  out.left = pushout_along_cofibration(i, f);
  out.right = pushout_along_cofibration(i, gamma.F.after(f));
  const auto& W = out.left.W;
  const auto& W2 = out.right.W;
  auto pW = parts_of({C, U}, {0, 0});
  auto pW2 = parts_of({C2, U}, {0, 0});
  out.phi = layout_map(
      W, pW, W2, pW2, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = gamma.F.at(n);
        bl[1][1] = id_at(U, n);
        return bl;
      },
      "Phi");

  // Cone(gamma) -> Cone(Phi) -> Cone(id_U), both ends contractible.
  ChainComplex Kg = cone(gamma.F);
  ChainComplex Kphi = cone(out.phi);
  ChainComplex Ku = cone(GradedMap::identity(U));
  auto pKg = cone_parts(gamma.F);
  auto pKphi = cone_parts(out.phi);
  auto pKu = cone_parts(GradedMap::identity(U));
  auto inc = [](const ChainComplex& sum, const PartsFn& parts, int n, std::size_t k) {
    return inclusion(sum.module(n), parts(n), k);
  };
  auto pr = [](const ChainComplex& sum, const PartsFn& parts, int n, std::size_t k) {
    return projection(sum.module(n), parts(n), k);
  };
  CofibrationCertificate ses;
  ses.i = layout_map(
      Kg, pKg, Kphi, pKphi, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = inc(W2, pW2, n, 0);
        bl[1][1] = inc(W, pW, n - 1, 0);
        return bl;
      },
      "i");
  ses.U = Ku;
  ses.q = layout_map(
      Kphi, pKphi, Ku, pKu, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = pr(W2, pW2, n, 1);
        bl[1][1] = pr(W, pW, n - 1, 1);
        return bl;
      },
      "q");
  ses.s = layout_map(
      Ku, pKu, Kphi, pKphi, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = inc(W2, pW2, n, 1);
        bl[1][1] = inc(W, pW, n - 1, 1);
        return bl;
      },
      "s");
  ses.r = layout_map(
      Kphi, pKphi, Kg, pKg, 0,
      [&](int n) {
        Blocks bl = empty_blocks(2, 2);
        bl[0][0] = pr(W2, pW2, n, 0);
        bl[1][1] = pr(W, pW, n - 1, 0);
        return bl;
      },
      "r");
  auto c = extension_contraction(ses, cone_contraction(gamma), cone_contraction(identity_certificate(U)));
  out.cert = equivalence_from_cone_contraction(out.phi, c, gamma.cls);
  return out;
}

namespace {

std::string dump(const ChainComplex& c) {
  std::string s = c.name() + "[";
  for (int n = c.lo(); n <= c.hi(); ++n) {
    if (n > c.lo()) s += ",";
    s += std::to_string(c.rank(n));
  }
  return s + "]";
}

std::string describe(const std::vector<IdentityFailure>& f) {
  if (f.empty()) return "";
  return f.front().identity + " fails in degree " + std::to_string(f.front().degree) + " at " + f.front().element;
}

bool accepted(const CategoryProfile& p, const EquivalenceReport& r) {
  return p.weq == WeqKind::h ? r.exact() : r.ok();
}

SampleOptions quick_opts(std::uint64_t seed) {
  SampleOptions o;
  o.trials = 20;
  o.seed = seed;
  return o;
}

// Random cofibration out of a: summand inclusion or cylinder front inclusion.
CofibrationCertificate random_cofibration(const RandomComplex& a, Rng& rng, const InstanceGenerator& gen) {
  auto b = gen(rng, "B");
  if (rng.coin()) return summand_cofibration(a.complex, b.complex);
  auto f = random_chain_map(a, b, rng);
  return cylinder_front_cofibration(f, cylinder(f));
}

// Mono without a section: multiplication by 2 with r = 1.
CofibrationCertificate bad_mono(const ChainComplex& x) {
  CofibrationCertificate c;
  ChainComplex z = ChainComplex::zero(x.oracle(), x.ring());
  c.i = GradedMap::identity(x).scaled(Rational(2)).named("2");
  c.U = z;
  c.q = GradedMap::zero(x, z);
  c.s = GradedMap::zero(z, x);
  c.r = GradedMap::identity(x);
  return c;
}

using TrialResult = std::vector<std::optional<std::string>>;  // per axiom: failure dump or nullopt

TrialResult run_trial(const CategoryProfile& p, const AxiomSuiteOptions& opts, const InstanceGenerator& gen,
                      std::size_t t) {
  Rng rng(sample_seed(opts.seed, t));
  TrialResult res(5);
  SampleOptions so = quick_opts(sample_seed(opts.seed ^ 0x5bd1e995ULL, t));
  auto A = gen(rng, "A");
  std::string tag = "trial " + std::to_string(t) + " A=" + dump(A.complex);

  // Cof1 and Weq1: isomorphism with bounded inverse
  auto iso = random_isomorphism(A.complex, rng);
  auto c1 = verify_cofibration(iso_cofibration(iso.f, iso.inverse), so);
  if (!c1.ok()) res[0] = tag + ": " + (c1.failures.empty() ? "section bound " + to_string(c1.section_bound) : describe(c1.failures));
  HomotopyCertificate w1;
  w1.F = iso.f;
  w1.G = iso.inverse;
  w1.h = GradedMap::zero(A.complex, A.complex, 1);
  w1.k = GradedMap::zero(iso.target, iso.target, 1);
  w1.cls = p.cls;
  auto r1 = verify_equivalence(w1, so);
  if (!accepted(p, r1)) res[3] = tag + ": " + (r1.exact() ? "bounds " + to_string(r1.verdict) : describe(r1.exact_failures));

  // Cof2: * -> X; objects of hFin / BhFin carry their finiteness certificate.
  auto c2 = verify_cofibration(zero_cofibration(A.complex), so);
  std::optional<std::string> obj;
  if (p.objects != ObjectKind::Fin) {
    auto cert = A.to_homology;
    cert.cls = p.cls;
    auto r = verify_equivalence(cert, so);
    if (!(p.objects == ObjectKind::hFin ? r.exact() : r.ok())) obj = "finiteness certificate rejected";
  }
  if (!c2.ok()) res[1] = tag + ": " + describe(c2.failures);
  else if (obj) res[1] = tag + ": " + *obj;

  // Cof3: pushout along a cofibration
  auto Z = gen(rng, "Z");
  auto cof = opts.plant_bad_mono ? bad_mono(A.complex) : random_cofibration(A, rng, gen);
  auto input = verify_cofibration(cof, so);
  if (!input.ok()) {
    res[2] = tag + ": input rejected: " + (input.failures.empty() ? "section bound" : describe(input.failures));
  } else {
    auto f = random_chain_map(A, Z, rng);
    std::string why;
    if (p.morphisms == MorphismKind::bounded) {
      auto w = linear_witness(f);
      if (!w || exit_code(check_family_bounded(f, *w, so)) != 0) why = "map not bounded";
    }
    auto po = pushout_along_cofibration(cof, f);
    auto jr = verify_cofibration(po.j, so);
    if (why.empty() && !check_d_squared(po.W).empty()) why = "d^2 != 0 on the pushout";
    if (why.empty() && !jr.ok()) why = "pushout inclusion: " + describe(jr.failures);
    if (why.empty() && !check_chain_map(po.b_to_w).empty()) why = "B -> W is not a chain map";
    if (why.empty() && first_difference(po.b_to_w.after(cof.i), po.j.i.after(f), "square")) why = "square fails";
    if (!why.empty()) res[2] = tag + " Z=" + dump(Z.complex) + ": " + why;
  }

  // Weq2: glueing along C ~ H(C)
  auto C = gen(rng, "C");
  auto cof2 = random_cofibration(A, rng, gen);
  auto g = random_chain_map(A, C, rng);
  auto gamma = C.to_homology;
  gamma.cls = p.cls;
  auto glued = glue_equivalence(cof2, g, gamma);
  auto r2 = verify_equivalence(glued.cert, so);
  if (!accepted(p, r2))
    res[4] = tag + " C=" + dump(C.complex) + ": " + (r2.exact() ? "bounds " + to_string(r2.verdict) : describe(r2.exact_failures));
  return res;
}

}  // namespace

AxiomSuiteReport run_axiom_suite(const CategoryProfile& profile, const AxiomSuiteOptions& opts,
                                 const InstanceGenerator& generator) {
  profile.validate();
  AxiomSuiteReport rep;
  rep.profile = profile;
  rep.options = opts;
  for (const char* name : {"Cof1", "Cof2", "Cof3", "Weq1", "Weq2"}) rep.axioms.push_back({name, 0, 0, {}});
  auto results = parallel_map<TrialResult>(opts.trials, opts.jobs, [&](std::size_t t) {
    return run_trial(profile, opts, generator, t);
  });
  for (const auto& r : results) {
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (r[a]) {
        ++rep.axioms[a].failed;
        if (rep.axioms[a].failures.size() < 5) rep.axioms[a].failures.push_back(*r[a]);
      } else {
        ++rep.axioms[a].passed;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------- staircases

namespace {

struct SquareData {
  GradedMap iota, theta, s, r;
};

}  // namespace

Staircase build_staircase(const std::vector<CofibrationCertificate>& filtration) {
  int n = static_cast<int>(filtration.size()) + 1;
  if (filtration.empty() || n > 4) throw std::invalid_argument("staircase needs 2 <= n <= 4");
  for (std::size_t k = 0; k < filtration.size(); ++k) {
    SampleOptions so = quick_opts(k + 1);
    auto rep = verify_cofibration(filtration[k], so);
    if (!rep.failures.empty())
      throw std::invalid_argument("filtration step " + std::to_string(k + 1) + " is not a cofibration: " +
                                  describe(rep.failures));
    if (k > 0) {
      const auto& prev = filtration[k - 1].i.target();
      const auto& cur = filtration[k].i.source();
      for (int d = std::min(prev.lo(), cur.lo()); d <= std::max(prev.hi(), cur.hi()); ++d)
        if (!prev.module(d)->same_as(*cur.module(d)))
          throw std::invalid_argument("filtration steps do not compose at step " + std::to_string(k + 1));
    }
  }
  // steps[k]: X_k -> X_{k+1}, X_0 = 0
  std::vector<CofibrationCertificate> steps;
  steps.push_back(zero_cofibration(filtration.front().i.source()));
  for (const auto& c : filtration) steps.push_back(c);
  std::vector<ChainComplex> X;
  for (const auto& c : steps) X.push_back(c.i.source());
  X.push_back(steps.back().i.target());
  ChainComplex zero = steps.front().i.source();

  Staircase s;
  s.n = n;
  std::map<std::pair<int, int>, ChainMap> pi;  // X_k -> A(i, k)
  for (int i = 0; i <= n; ++i) {
    s.A[{i, i}] = zero;
    pi[{i, i}] = GradedMap::zero(X[i], zero);
    for (int k = i; k < n; ++k) {
      auto po = pushout_along_cofibration(steps[k], pi.at({i, k}));
      s.A[{i, k + 1}] = po.W;
      pi[{i, k + 1}] = po.b_to_w;
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const auto& Aij = s.at(i, j);
      SquareData q{GradedMap::identity(Aij), GradedMap::zero(Aij, zero), GradedMap::zero(zero, Aij),
                   GradedMap::identity(Aij)};
      for (int k = j;; ++k) {
        CofibrationCertificate c;
        c.i = q.iota;
        c.U = s.at(j, k);
        c.q = q.theta;
        c.s = q.s;
        c.r = q.r;
        s.square[{i, j, k}] = c;
        if (k == n) break;
        const auto& U = steps[k].U;
        const auto& Aik1 = s.at(i, k + 1);
        const auto& Ajk1 = s.at(j, k + 1);
        auto pik = parts_of({s.at(i, k), U}, {0, 0});
        auto pjk = parts_of({s.at(j, k), U}, {0, 0});
        SquareData nq;
        nq.iota = layout_map(Aij, single(Aij), Aik1, pik, 0, [&](int d) { return one_block(2, 1, 0, 0, q.iota.at(d)); },
                             "iota");
        nq.theta = layout_map(
            Aik1, pik, Ajk1, pjk, 0,
            [&](int d) {
              Blocks bl = empty_blocks(2, 2);
              bl[0][0] = q.theta.at(d);
              bl[1][1] = id_at(U, d);
              return bl;
            },
            "theta");
        nq.s = layout_map(
            Ajk1, pjk, Aik1, pik, 0,
            [&](int d) {
              Blocks bl = empty_blocks(2, 2);
              bl[0][0] = q.s.at(d);
              bl[1][1] = id_at(U, d);
              return bl;
            },
            "s");
        nq.r = layout_map(Aik1, pik, Aij, single(Aij), 0, [&](int d) { return one_block(1, 2, 0, 0, q.r.at(d)); }, "r");
        q = std::move(nq);
      }
    }
  }
  return s;
}

std::vector<CofibrationCertificate> random_filtration(int n, Rng& rng, const InstanceGenerator& generator) {
  std::vector<CofibrationCertificate> out;
  ChainComplex X = generator(rng, "X1").complex;
  for (int k = 1; k < n; ++k) {
    auto B = generator(rng, "B" + std::to_string(k)).complex;
    CofibrationCertificate c;
    if (rng.coin()) {
      c = summand_cofibration(X, B);
    } else {
      auto f = random_nullhomotopic_map(X, B, rng);
      c = cylinder_front_cofibration(f, cylinder(f));
    }
    X = c.i.target();
    out.push_back(std::move(c));
  }
  return out;
}

StaircaseReport verify_staircase(const Staircase& s) {
  StaircaseReport rep;
  auto fail = [&](const std::string& m) { rep.failures.push_back(m); };
  for (int j = 0; j <= s.n; ++j)
    if (!s.at(j, j).is_zero()) fail("A(" + std::to_string(j) + "," + std::to_string(j) + ") is not zero");
  for (const auto& [key, c] : s.A)
    if (!check_d_squared(c).empty()) fail("d^2 != 0 on A(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
  for (const auto& [key, c] : s.square) {
    auto [i, j, k] = key;
    std::string name = "square (" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")";
    ++rep.squares_checked;
    auto r = verify_cofibration(c, quick_opts(rep.squares_checked));
    if (!r.ok()) fail(name + ": " + (r.failures.empty() ? "section bound" : describe(r.failures)));
  }
  return rep;
}

namespace {

Staircase reindex(const Staircase& s, int n, const std::function<int(int)>& idx) {
  Staircase out;
  out.n = n;
  for (int i = 0; i <= n; ++i)
    for (int j = i; j <= n; ++j) {
      out.A[{i, j}] = s.at(idx(i), idx(j));
      for (int k = j; k <= n; ++k) out.square[{i, j, k}] = s.sq(idx(i), idx(j), idx(k));
    }
  return out;
}

bool same_complex(const ChainComplex& a, const ChainComplex& b) {
  int lo = std::min(a.lo(), b.lo()), hi = std::max(a.hi(), b.hi());
  for (int n = lo; n <= hi + 1; ++n) {
    if (!a.module(n)->same_as(*b.module(n))) return false;
    if (!a.d(n).equals(b.d(n))) return false;
  }
  return true;
}

bool same_family(const GradedMap& a, const GradedMap& b) {
  return a.degree() == b.degree() && a.source_degrees() == b.source_degrees() && !first_difference(a, b, "same");
}

}  // namespace

Staircase face(const Staircase& s, int i) {
  if (i < 0 || i > s.n || s.n < 1) throw std::invalid_argument("face index out of range");
  return reindex(s, s.n - 1, [i](int a) { return a < i ? a : a + 1; });
}

Staircase degeneracy(const Staircase& s, int i) {
  if (i < 0 || i > s.n) throw std::invalid_argument("degeneracy index out of range");
  return reindex(s, s.n + 1, [i](int a) { return a <= i ? a : a - 1; });
}

bool same_staircase(const Staircase& a, const Staircase& b) {
  if (a.n != b.n) return false;
  for (const auto& [key, c] : a.A)
    if (!same_complex(c, b.A.at(key))) return false;
  for (const auto& [key, c] : a.square) {
    const auto& d = b.square.at(key);
    if (!same_family(c.i, d.i) || !same_family(c.q, d.q) || !same_family(c.s, d.s) || !same_family(c.r, d.r))
      return false;
  }
  return true;
}

SimplicialReport check_simplicial_identities(const std::vector<Staircase>& instances) {
  SimplicialReport rep;
  for (std::size_t t = 0; t < instances.size(); ++t) {
    const auto& s = instances[t];
    ++rep.instances;
    std::string tag = "instance " + std::to_string(t) + " (n=" + std::to_string(s.n) + ")";
    for (int j = 0; j <= s.n; ++j) {
      auto dj = face(s, j);
      auto vr = verify_staircase(dj);
      if (!vr.ok()) rep.failures.push_back(tag + ": face " + std::to_string(j) + ": " + vr.failures.front());
      for (int i = 0; i < j; ++i) {
        ++rep.identities_checked;
        if (!same_staircase(face(dj, i), face(face(s, i), j - 1)))
          rep.failures.push_back(tag + ": d" + std::to_string(i) + " d" + std::to_string(j) + " != d" +
                                 std::to_string(j - 1) + " d" + std::to_string(i));
      }
    }
    for (int i = 0; i <= s.n; ++i) {
      auto si = degeneracy(s, i);
      rep.identities_checked += 2;
      if (!same_staircase(face(si, i), s)) rep.failures.push_back(tag + ": d" + std::to_string(i) + " s" + std::to_string(i) + " != 1");
      if (!same_staircase(face(si, i + 1), s))
        rep.failures.push_back(tag + ": d" + std::to_string(i + 1) + " s" + std::to_string(i) + " != 1");
    }
  }
  return rep;
}

App1Report check_app1(const CategoryProfile& larger, const std::vector<HomotopyCertificate>& instances,
                      const SampleOptions& opts) {
  larger.validate();
  if (larger.objects == ObjectKind::Fin) throw std::invalid_argument("App1 compares Fin with hFin or BhFin");
  CategoryProfile small = larger;
  small.objects = ObjectKind::Fin;
  BoundingClass cls = BoundingClass::by_name(larger.cls);
  BoundingClass lin = BoundingClass::linear();
  App1Report rep;
  for (std::size_t t = 0; t < instances.size(); ++t) {
    ++rep.instances;
    std::string tag = "instance " + std::to_string(t);
    auto cert = instances[t];
    cert.cls = larger.cls;
    if (!cert.F.source().finite() || !cert.F.target().finite()) {
      rep.failures.push_back(tag + ": complexes are not finite");
      continue;
    }
    // witnesses outside the class are replaced by column witnesses; between
    // finite complexes these always exist and are linear
    bool outside = false, vacuous = true;
    auto audit = [&](std::optional<BoundingFunction>& w, const GradedMap& m) {
      if (!w || cls.contains(*w)) return;
      outside = true;
      auto col = linear_witness(m);
      if (!col || !lin.contains(*col)) vacuous = false;
      w = col;
    };
    audit(cert.wF, cert.F);
    audit(cert.wG, cert.G);
    audit(cert.wh, cert.h);
    audit(cert.wk, cert.k);
    if (outside) {
      ++rep.outside_class;
      if (vacuous) ++rep.vacuous;
    }
    // the same data is checked; only the acceptance rule of each category applies
    auto r = verify_equivalence(cert, opts);
    if (!accepted(larger, r)) {
      rep.failures.push_back(tag + ": not an equivalence in " + larger.to_string());
      continue;
    }
    if (accepted(small, r)) ++rep.reflected;
    else rep.failures.push_back(tag + ": not reflected into " + small.to_string());
  }
  return rep;
}

}  // namespace bhk
