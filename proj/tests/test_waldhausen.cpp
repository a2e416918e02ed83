#include "doctest.h"

#include "bhk/waldhausen.hpp"

using namespace bhk;

namespace {

std::size_t failed(const AxiomSuiteReport& r, const std::string& axiom) {
  for (const auto& a : r.axioms)
    if (a.axiom == axiom) return a.failed;
  return 999;
}

Staircase random_staircase(int n, std::uint64_t seed) {
  Rng rng(seed);
  return build_staircase(random_filtration(n, rng, default_generator()));
}

}  // namespace

TEST_CASE("profiles parse and validate") {
  auto p = CategoryProfile::parse("Fin/free/Bh");
  CHECK(p.to_string() == "Fin/free/Bh/bounded");
  CHECK(CategoryProfile::parse("hFin/free/h").to_string() == "hFin/free/h/all");
  CHECK(CategoryProfile::parse("fin-free-bh").to_string() == "Fin/free/Bh/bounded");
  CHECK_THROWS_AS(CategoryProfile::parse("BhFin/free/h"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryProfile::parse("Fin/free/Bh/all"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryProfile::parse("Fin/free"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryProfile::parse("Fin/flat/Bh"), std::invalid_argument);
  CHECK_THROWS_AS(CategoryProfile::parse("Fin/free/Bh", "Q"), std::invalid_argument);
}

TEST_CASE("axiom suite over Z[Z] passes on Fin/free/Bh") {
  AxiomSuiteOptions o;
  o.trials = 100;
  o.seed = 7;
  auto rep = run_axiom_suite(CategoryProfile::parse("Fin/free/Bh"), o);
  for (const auto& a : rep.axioms) {
    INFO(a.axiom, " ", (a.failures.empty() ? "" : a.failures.front()));
    CHECK(a.failed == 0);
    CHECK(a.passed == 100);
  }
  CHECK(rep.ok());
}

TEST_CASE("axiom suite on the other profiles") {
  AxiomSuiteOptions o;
  o.trials = 15;
  for (const char* p : {"hFin/free/h", "BhFin/free/Bh", "Fin/projective/h"}) {
    auto rep = run_axiom_suite(CategoryProfile::parse(p), o);
    INFO(p);
    CHECK(rep.ok());
  }
}

TEST_CASE("axiom suite is deterministic across job counts") {
  AxiomSuiteOptions a, b;
  a.trials = b.trials = 12;
  b.jobs = 3;
  auto p = CategoryProfile::parse("Fin/free/Bh");
  auto ra = run_axiom_suite(p, a), rb = run_axiom_suite(p, b);
  for (std::size_t i = 0; i < ra.axioms.size(); ++i) CHECK(ra.axioms[i].passed == rb.axioms[i].passed);
}

TEST_CASE("a mono without a section is rejected under Cof3") {
  AxiomSuiteOptions o;
  o.trials = 5;
  o.plant_bad_mono = true;
  auto rep = run_axiom_suite(CategoryProfile::parse("Fin/free/Bh"), o);
  CHECK(failed(rep, "Cof3") == 5);
  CHECK(failed(rep, "Cof1") == 0);
  CHECK_FALSE(rep.ok());
  const auto& cof3 = rep.axioms[2];
  REQUIRE_FALSE(cof3.failures.empty());
  CHECK(cof3.failures.front().find("input rejected") != std::string::npos);
}

TEST_CASE("glueing along the identity gives the identity") {
  Rng rng(3);
  auto gen = default_generator();
  auto A = gen(rng, "A");
  auto C = gen(rng, "C");
  auto B = gen(rng, "B");
  auto i = summand_cofibration(A.complex, B.complex);
  auto f = random_chain_map(A, C, rng);
  auto g = glue_equivalence(i, f, identity_certificate(C.complex));
  CHECK(!first_difference(g.phi, GradedMap::identity(g.left.W), "phi"));
  auto r = verify_equivalence(g.cert);
  CHECK(r.ok());
}

TEST_CASE("glueing along a nontrivial equivalence") {
  Rng rng(11);
  auto gen = default_generator();
  for (int t = 0; t < 10; ++t) {
    auto A = gen(rng, "A");
    auto C = gen(rng, "C");
    auto B = gen(rng, "B");
    auto f0 = random_chain_map(A, B, rng);
    auto i = cylinder_front_cofibration(f0, cylinder(f0));
    auto f = random_chain_map(A, C, rng);
    auto g = glue_equivalence(i, f, C.to_homology);
    CHECK(check_chain_map(g.phi).empty());
    auto r = verify_equivalence(g.cert);
    CHECK(r.ok());
  }
}

TEST_CASE("staircases for n = 2, 3, 4 verify") {
  for (int n = 2; n <= 4; ++n)
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
      auto s = random_staircase(n, seed * 17 + n);
      CHECK(s.n == n);
      auto r = verify_staircase(s);
      INFO("n=", n, " seed=", seed, " ", (r.failures.empty() ? "" : r.failures.front()));
      CHECK(r.ok());
      std::size_t expect = 0;
      for (int i = 0; i <= n; ++i)
        for (int j = i; j <= n; ++j) expect += n - j + 1;
      CHECK(r.squares_checked == expect);
      for (int k = 1; k <= n; ++k)
        for (int d = 0; d <= 3; ++d) CHECK(s.at(0, k).rank(d) >= s.at(0, k - 1).rank(d));
    }
}

TEST_CASE("staircase of identities has zero quotients") {
  Rng rng(5);
  auto gen = default_generator();
  auto X = gen(rng, "X").complex;
  while (X.is_zero()) X = gen(rng, "X").complex;
  auto id = iso_cofibration(GradedMap::identity(X), GradedMap::identity(X));
  auto s = build_staircase({id, id});
  CHECK(verify_staircase(s).ok());
  for (int i = 1; i <= 3; ++i)
    for (int j = i; j <= 3; ++j) CHECK(s.at(i, j).is_zero());
  CHECK(!s.at(0, 3).is_zero());
}

TEST_CASE("faces of a 2-staircase") {
  auto s = random_staircase(2, 99);
  auto d0 = face(s, 0), d1 = face(s, 1), d2 = face(s, 2);
  CHECK(d0.n == 1);
  // d2 keeps X_1, d0 keeps the quotient X_2 / X_1, d1 keeps X_2
  CHECK(d2.at(0, 1).rank(0) == s.at(0, 1).rank(0));
  for (int d = 0; d <= 3; ++d) {
    CHECK(d0.at(0, 1).rank(d) == s.at(1, 2).rank(d));
    CHECK(d1.at(0, 1).rank(d) == s.at(0, 2).rank(d));
    CHECK(d2.at(0, 1).rank(d) == s.at(0, 1).rank(d));
  }
  CHECK(verify_staircase(d0).ok());
  CHECK(same_staircase(face(degeneracy(s, 1), 1), s));
  CHECK_FALSE(same_staircase(d0, d2));
}

TEST_CASE("simplicial identities on random staircases") {
  std::vector<Staircase> xs;
  for (std::uint64_t t = 0; t < 48; ++t) xs.push_back(random_staircase(2 + int(t % 3), 1000 + t));
  auto r = check_simplicial_identities(xs);
  INFO((r.failures.empty() ? "" : r.failures.front()));
  CHECK(r.ok());
  CHECK(r.instances == 48);
  CHECK(r.identities_checked > 300);
}

TEST_CASE("bad filtrations are rejected") {
  Rng rng(8);
  auto gen = default_generator();
  auto A = gen(rng, "A").complex;
  auto B = gen(rng, "B").complex;
  auto C = gen(rng, "C").complex;
  auto s1 = summand_cofibration(A, B);
  auto s2 = summand_cofibration(C, B);
  CHECK_THROWS_AS(build_staircase({s1, s2}), std::invalid_argument);
  CHECK_THROWS_AS(build_staircase({}), std::invalid_argument);
}

TEST_CASE("App1: equivalences of finite complexes reflect into Fin") {
  Rng rng(21);
  auto gen = default_generator();
  std::vector<HomotopyCertificate> xs;
  auto A = gen(rng, "A");
  xs.push_back(identity_certificate(A.complex));
  xs.push_back(A.to_homology);
  auto f = random_chain_map(A, gen(rng, "B"), rng);
  xs.push_back(cylinder_certificate(cylinder(f)));
  auto planted = A.to_homology;
  planted.wF = BoundingFunction::exponential(Rational(1), Rational(2));
  xs.push_back(planted);
  auto r = check_app1(CategoryProfile::parse("BhFin/free/Bh"), xs);
  INFO((r.failures.empty() ? "" : r.failures.front()));
  CHECK(r.instances == 4);
  CHECK(r.reflected == 4);
  CHECK(r.outside_class == 1);
  CHECK(r.vacuous == 1);
  CHECK(r.ok());
  CHECK_THROWS_AS(check_app1(CategoryProfile::parse("Fin/free/Bh"), xs), std::invalid_argument);
  auto h = check_app1(CategoryProfile::parse("hFin/free/h"), xs);
  CHECK(h.ok());
}
