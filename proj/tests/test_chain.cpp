#include "doctest.h"

#include "bhk/random_complex.hpp"

using namespace bhk;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

ChainComplex point(const std::string& label = "e", long w = 1) {
  return ChainComplex::concentrated(WeightedModule::plain({{label, q(w)}}, "Z"), 0, "Z");
}

// Z -id-> Z in degrees 1, 0.
ChainComplex interval() {
  auto top = WeightedModule::plain({{"a", q(1)}}, "I1");
  auto bot = WeightedModule::plain({{"b", q(1)}}, "I0");
  auto d = ModuleMap::matrix(top, bot, {{"a", FormalSum::single(bot->generator("b"))}});
  return ChainComplex::make(nullptr, RingKind::integers, 0, {bot, top}, {d}, "I");
}

RandomComplexOptions small(std::vector<std::size_t> hom) {
  RandomComplexOptions o;
  o.lo = 0;
  o.hi = static_cast<int>(hom.size()) - 1;
  o.homology_ranks = hom;
  return o;
}

bool exact_ok(const EquivalenceReport& r) { return r.exact() && r.ok(); }

}  // namespace

TEST_CASE("cone of the identity on Z is contractible") {
  auto Z = point();
  auto K = cone(GradedMap::identity(Z));
  CHECK(K.rank(0) == 1);
  CHECK(K.rank(1) == 1);
  CHECK(check_d_squared(K).empty());
  auto c = cone_contraction(identity_certificate(Z));
  auto r = verify_contraction(K, c);
  CHECK(r.failures.empty());
  CHECK(r.ok());
}

TEST_CASE("cone of the zero self-map is C plus its shift") {
  Rng rng(7);
  auto C = random_complex(nullptr, rng, small({1, 1, 0}));
  auto K = cone(GradedMap::zero(C.complex, C.complex));
  CHECK(check_d_squared(K).empty());
  for (int n = -1; n <= 4; ++n) CHECK(K.rank(n) == C.complex.rank(n) + C.complex.rank(n - 1));
}

TEST_CASE("cone of a degreewise isomorphism contracts with a linear witness") {
  Rng rng(11);
  RandomComplexOptions o = small({1, 1});
  o.max_pieces = 1;
  auto A = random_complex(nullptr, rng, o);
  auto cert = identity_certificate(A.complex);
  cert.F = -cert.F;
  cert.G = -cert.G;
  auto c = cone_contraction(cert);
  REQUIRE(c.witness);
  CHECK(BoundingClass::linear().contains(*c.witness));
  auto r = verify_contraction(cone(cert.F), c);
  CHECK(r.failures.empty());
  CHECK(r.ok());
}

TEST_CASE("cone contraction from a nontrivial equivalence") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    Rng rng(seed);
    auto A = random_complex(nullptr, rng, small({1, 0, 1}));
    auto c = cone_contraction(A.to_homology);
    auto r = verify_contraction(cone(A.to_homology.F), c);
    CHECK(r.failures.empty());
    CHECK(r.ok());
  }
}

TEST_CASE("cylinder of zero to A is A") {
  Rng rng(3);
  auto A = random_complex(nullptr, rng, small({1, 1}));
  auto zero = ChainComplex::zero(nullptr);
  auto cyl = cylinder(GradedMap::zero(zero, A.complex));
  CHECK(cyl.degenerate);
  CHECK(cyl.cyl.rank(0) == A.complex.rank(0));
  CHECK_FALSE(first_difference(cyl.p, GradedMap::identity(A.complex), "p = 1"));
  CHECK_FALSE(first_difference(cyl.j2, GradedMap::identity(A.complex), "j2 = 1"));
  CHECK(exact_ok(verify_equivalence(cylinder_certificate(cyl))));
}

TEST_CASE("cylinder structure maps and the cylinder certificate") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    auto A = random_complex(nullptr, rng, small({1, 1, 0}), "A");
    auto B = random_complex(nullptr, rng, small({1, 0, 1}), "B");
    auto f = random_chain_map(A, B, rng);
    REQUIRE(check_chain_map(f).empty());
    auto cyl = cylinder(f);
    CHECK(check_d_squared(cyl.cyl).empty());
    CHECK(check_chain_map(cyl.j1).empty());
    CHECK(check_chain_map(cyl.j2).empty());
    CHECK(check_chain_map(cyl.p).empty());
    CHECK_FALSE(first_difference(cyl.p.after(cyl.j2), GradedMap::identity(B.complex), "p j2 = 1"));
    CHECK_FALSE(first_difference(cyl.p.after(cyl.j1), f, "p j1 = f"));
    CHECK(exact_ok(verify_equivalence(cylinder_certificate(cyl))));
    auto front = verify_cofibration(cylinder_front_cofibration(f, cyl));
    CHECK(front.failures.empty());
    CHECK(front.ok());
  }
}

TEST_CASE("cylinder homotopy of the identity lands in the shifted summand") {
  auto I = interval();
  auto cyl = cylinder(GradedMap::identity(I));
  for (const auto& [n, m] : cyl.h.parts())
    for (const auto& x : m.domain()->labels())
      for (const auto& [key, c] : m.apply(m.domain()->generator(x))) CHECK(untag_label(key.x).first == 2);
}

TEST_CASE("cofibration axioms for isomorphisms and the zero map") {
  Rng rng(5);
  auto A = random_complex(nullptr, rng, small({1, 1}));
  auto z = verify_cofibration(zero_cofibration(A.complex));
  CHECK(z.ok());
  auto id = GradedMap::identity(A.complex);
  auto iso = verify_cofibration(iso_cofibration(id, id));
  CHECK(iso.ok());
}

TEST_CASE("pushout along a summand inclusion") {
  Rng rng(17);
  auto A = random_complex(nullptr, rng, small({1, 1}), "A");
  auto Bc = random_complex(nullptr, rng, small({0, 1}), "B");
  auto Z = random_complex(nullptr, rng, small({1, 0}), "Z");
  auto i = summand_cofibration(A.complex, Bc.complex);
  REQUIRE(verify_cofibration(i).ok());
  auto f = random_chain_map(A, Z, rng);
  auto po = pushout_along_cofibration(i, f);
  CHECK(check_d_squared(po.W).empty());
  for (int n = 0; n <= 1; ++n) CHECK(po.W.rank(n) == Z.complex.rank(n) + Bc.complex.rank(n));
  CHECK(check_chain_map(po.b_to_w).empty());
  CHECK(verify_cofibration(po.j).ok());
  CHECK_FALSE(first_difference(po.b_to_w.after(i.i), po.j.i.after(f), "square commutes"));
  // cofiber of j matches cofiber of i
  for (int n = 0; n <= 1; ++n) CHECK(po.j.U.module(n)->same_as(*i.U.module(n)));
}

TEST_CASE("pushout along a nonsplit cofibration") {
  Rng rng(23);
  auto A = random_complex(nullptr, rng, small({1, 1}), "A");
  auto B = random_complex(nullptr, rng, small({1, 1}), "B");
  auto Z = random_complex(nullptr, rng, small({0, 1}), "Z");
  auto f = random_chain_map(A, B, rng);
  auto cyl = cylinder(f);
  auto i = cylinder_front_cofibration(f, cyl);
  auto g = random_chain_map(A, Z, rng);
  auto po = pushout_along_cofibration(i, g);
  CHECK(check_d_squared(po.W).empty());
  CHECK(check_chain_map(po.b_to_w).empty());
  CHECK(verify_cofibration(po.j).ok());
  CHECK_FALSE(first_difference(po.b_to_w.after(i.i), po.j.i.after(g), "square commutes"));
}

TEST_CASE("pushout of a cofibration along the identity") {
  Rng rng(29);
  auto A = random_complex(nullptr, rng, small({1, 0}), "A");
  auto B = random_complex(nullptr, rng, small({0, 1}), "B");
  auto i = summand_cofibration(A.complex, B.complex);
  auto po = pushout_along_cofibration(i, GradedMap::identity(A.complex));
  for (int n = 0; n <= 1; ++n) CHECK(po.W.rank(n) == i.i.target().rank(n));
  CHECK(check_chain_map(po.b_to_w).empty());
}

TEST_CASE("verify_equivalence: identity passes, planted sign error is located") {
  Rng rng(31);
  auto A = random_complex(nullptr, rng, small({1, 1, 1}));
  CHECK(exact_ok(verify_equivalence(identity_certificate(A.complex, "L"))));
  CHECK(exact_ok(verify_equivalence(A.to_homology)));
  auto bad = A.to_homology;
  bad.h = -bad.h;
  bool any_h = !A.to_homology.h.parts().empty();
  auto r = verify_equivalence(bad);
  if (any_h) {
    REQUIRE_FALSE(r.exact());
    CHECK(r.verdict == Verdict::refuted);
    CHECK(r.exact_failures.front().identity == "G*F - 1 = dh + hd");
    CHECK_FALSE(r.exact_failures.front().element.empty());
  }
}

TEST_CASE("random complexes over a group") {
  auto o = std::make_shared<LengthOracle>(GroupModel::free_group(2));
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Rng rng(seed);
    auto opts = small({1, 0, 1});
    opts.group_letters = 2;
    auto A = random_complex(o, rng, opts);
    CHECK(check_d_squared(A.complex).empty());
    auto r = verify_equivalence(A.to_homology);
    CHECK(r.exact());
  }
}

TEST_CASE("quotient equivalence with A = 0 is the section") {
  Rng rng(37);
  auto C = random_complex(nullptr, rng, small({1, 1}));
  auto ses = zero_cofibration(C.complex);
  auto zero = ChainComplex::zero(nullptr);
  auto cert = quotient_equivalence(ses, ContractionCertificate{GradedMap::zero(zero, zero, 1), std::nullopt});
  CHECK_FALSE(first_difference(cert.G, ses.s, "G = s"));
  bool h_zero = cert.h.parts().empty() || !first_difference(cert.h, GradedMap::zero(C.complex, C.complex, 1), "h = 0");
  CHECK(h_zero);
  CHECK(exact_ok(verify_equivalence(cert)));
}

TEST_CASE("quotient equivalence for a split sequence with a contractible kernel") {
  auto I = interval();
  auto Z = point();
  auto ses = summand_cofibration(I, Z);
  // contraction of I: b -> a
  auto bot = I.module(0), top = I.module(1);
  std::map<int, ModuleMap> parts;
  parts.emplace(0, ModuleMap::matrix(bot, top, {{"b", FormalSum::single(top->generator("a"))}}));
  ContractionCertificate ci{GradedMap(I, I, 1, parts, "c"), std::nullopt};
  REQUIRE(verify_contraction(I, ci).ok());
  auto cert = quotient_equivalence(ses, ci);
  CHECK(exact_ok(verify_equivalence(cert)));
}

TEST_CASE("quotient equivalence onto a cone") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Rng rng(seed);
    auto A = random_complex(nullptr, rng, small({0, 0, 0}), "A");
    REQUIRE(A.contraction);
    auto B = random_complex(nullptr, rng, small({1, 1, 0}), "B");
    auto f = random_chain_map(A, B, rng);
    auto cyl = cylinder(f);
    auto ses = cylinder_front_cofibration(f, cyl);
    auto cert = quotient_equivalence(ses, *A.contraction);
    auto r = verify_equivalence(cert);
    CHECK(r.exact());
    CHECK(r.ok());
    for (const auto& fam : r.families) {
      REQUIRE(fam.witness);
      CHECK(BoundingClass::linear().contains(*fam.witness));
    }
  }
}

TEST_CASE("saturation: each pair determines the third") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Rng rng(seed * 101);
    std::vector<std::size_t> hom{1, 0, 1};
    auto A = random_complex(nullptr, rng, small(hom), "A");
    auto B = random_complex(nullptr, rng, small(hom), "B");
    auto C = random_complex(nullptr, rng, small(hom), "C");
    auto cf = compose_certificates(A.to_homology, inverse_certificate(B.to_homology));
    auto cg = compose_certificates(B.to_homology, inverse_certificate(C.to_homology));
    auto cgf = compose_certificates(cf, cg);
    const auto& f = cf.F;
    const auto& g = cg.F;
    REQUIRE(exact_ok(verify_equivalence(cf)));
    REQUIRE(exact_ok(verify_equivalence(cgf)));

    auto got_g = saturation_complete(f, g, cf, std::nullopt, cgf);
    CHECK(exact_ok(verify_equivalence(got_g)));
    CHECK_FALSE(first_difference(got_g.F, g, "F = g"));
    auto got_f = saturation_complete(f, g, std::nullopt, cg, cgf);
    CHECK(exact_ok(verify_equivalence(got_f)));
    auto got_gf = saturation_complete(f, g, cf, cg, std::nullopt);
    CHECK(exact_ok(verify_equivalence(got_gf)));
  }
}

TEST_CASE("saturation with identities and bad inputs") {
  auto Z = point();
  auto id = identity_certificate(Z);
  auto out = saturation_complete(id.F, id.F, id, id, std::nullopt);
  CHECK(exact_ok(verify_equivalence(out)));
  CHECK(out.h.parts().size() <= 1);
  CHECK_THROWS_AS(saturation_complete(id.F, id.F, id, std::nullopt, std::nullopt), std::invalid_argument);
  auto bad = id;
  bad.G = -bad.G;
  CHECK_THROWS_AS(saturation_complete(id.F, id.F, bad, id, std::nullopt), std::invalid_argument);
}

TEST_CASE("App2 factorization") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Rng rng(seed * 7);
    auto C = random_complex(nullptr, rng, small({1, 1, 0}), "C");
    auto D = random_complex(nullptr, rng, small({1, 0, 1}), "D");
    auto f = random_chain_map(C, D, rng);
    const auto& j = D.to_homology;  // D ~ H(D), finite
    auto out = app2_factorize(f, j);
    const auto& E = out.cylinder.cyl;
    for (int n = 0; n <= 2; ++n)
      CHECK(E.rank(n) == C.complex.rank(n) + D.homology.rank(n) + C.complex.rank(n - 1));
    CHECK(verify_cofibration(out.g).ok());
    CHECK(exact_ok(verify_equivalence(out.h_cert)));
    CHECK(check_homotopic(out.h.after(out.g.i), f, out.hg_to_f).empty());
  }
}

TEST_CASE("App2 with the identity certificate is the plain cylinder") {
  Rng rng(41);
  auto C = random_complex(nullptr, rng, small({1, 1}), "C");
  auto D = random_complex(nullptr, rng, small({1, 1}), "D");
  auto f = random_chain_map(C, D, rng);
  auto out = app2_factorize(f, identity_certificate(D.complex));
  auto cyl = cylinder(f);
  CHECK_FALSE(first_difference(out.h, cyl.p, "h = p"));
  auto zero_f = GradedMap::zero(C.complex, D.complex);
  auto z = app2_factorize(zero_f, identity_certificate(D.complex));
  for (int n = 0; n <= 2; ++n)
    CHECK(z.cylinder.cyl.rank(n) == C.complex.rank(n) + D.complex.rank(n) + C.complex.rank(n - 1));
  CHECK(z.g.U.module(0)->same_as(*cone(zero_f).module(0)));
}

TEST_CASE("random complexes: d^2 = 0, chain maps, certificates") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Rng rng(seed);
    RandomComplexOptions o;
    o.lo = -1;
    o.hi = 2;
    auto A = random_complex(nullptr, rng, o, "A");
    auto B = random_complex(nullptr, rng, o, "B");
    CHECK(check_d_squared(A.complex).empty());
    auto f = random_chain_map(A, B, rng);
    CHECK(check_chain_map(f).empty());
    CHECK(check_d_squared(cone(f)).empty());
    CHECK(check_d_squared(direct_sum(A.complex, B.complex)).empty());
    CHECK(check_d_squared(A.complex.shifted()).empty());
    CHECK(verify_equivalence(A.to_homology).exact());
  }
}
