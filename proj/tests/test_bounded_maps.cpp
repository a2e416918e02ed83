#include "doctest.h"

#include "bhk/bounded_maps.hpp"

using namespace bhk;

namespace {

using BF = BoundingFunction;

Rational q(long p, long d = 1) { return Rational(p, d); }

OraclePtr z1() { return std::make_shared<LengthOracle>(GroupModel::Zn(1)); }

BasisKey nat(const Integer& n) { return BasisKey{{}, n.get_str()}; }

Integer two_pow(unsigned long e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

std::vector<BF> schedule() {
  return {BF::constant(q(1)), BF::identity(), BF::polynomial({q(0), q(0), q(1)}), BF::linear(q(2), q(3))};
}

// sum_{i<=d} c t^i
BF flat_poly(long d, long c) { return BF::polynomial(std::vector<Rational>(d + 1, Rational(c))); }

}  // namespace

TEST_CASE("zero map is symbolically Dehn-bounded by a constant") {
  auto o = z1();
  auto A = WeightedModule::free(o, {{"x", q(1)}});
  auto B = WeightedModule::free(o, {{"y", q(2)}});
  auto z = ModuleMap::zero(A, B);
  auto c = check_dehn_bounded(z, BF::constant(q(1)), ball_sampler(A, q(6)), {});
  CHECK(c.overall() == Verdict::symbolically_verified);
  CHECK(dehn_constant(z) == q(0));
}

TEST_CASE("forward and inverse maps between the natural-number weightings") {
  auto Nid = naturals_identity_weight();
  auto Nlog = naturals_log_weight();
  auto fwd = ModuleMap::key_map(Nid, Nlog, [](const BasisKey& k) { return k; }, "n->n");
  SampleOptions opts;
  opts.probes = {FormalSum::single(nat(two_pow(64))), FormalSum::single(nat(Integer(3)), q(-7))};
  auto c = check_dehn_bounded(fwd, BF::identity(), ball_sampler(Nid, q(64)), opts);
  CHECK(c.overall() == Verdict::sample_verified);
  CHECK(c.checks[0].samples == opts.trials + 2);

  auto inv = ModuleMap::key_map(Nlog, Nid, [](const BasisKey& k) { return k; }, "n->n inverse");
  SampleOptions at64;
  at64.probes = {FormalSum::single(nat(two_pow(64)))};
  at64.trials = 0;
  for (long d = 0; d <= 3; ++d) {
    auto r = check_dehn_bounded(inv, flat_poly(d, 1000000), nullptr, at64);
    CHECK(r.overall() == Verdict::refuted);
    REQUIRE(r.checks[0].counterexample);
    CHECK(r.checks[0].counterexample->lhs == Rational(two_pow(64)));
  }
  // 2^64 has weight 65 and 10^6 * sum 65^i exceeds 2^64 at degree 8, so that
  // witness survives the probe; 2^128 refutes it.
  CHECK(check_dehn_bounded(inv, flat_poly(8, 1000000), nullptr, at64).overall() == Verdict::sample_verified);
  SampleOptions at128 = at64;
  at128.probes = {FormalSum::single(nat(two_pow(128)))};
  CHECK(check_dehn_bounded(inv, flat_poly(8, 1000000), nullptr, at128).overall() == Verdict::refuted);
}

TEST_CASE("Dehn column constant matches the sup over the ball") {
  auto o = z1();
  auto A = WeightedModule::free(o, {{"x", q(1)}, {"y", q(3)}});
  auto B = WeightedModule::free(o, {{"u", q(2)}});
  std::map<std::string, FormalSum> cols{
      {"x", FormalSum{{BasisKey{{2}, "u"}, q(3)}, {BasisKey{{-1}, "u"}, q(-1)}}},
      {"y", FormalSum{{BasisKey{{0}, "u"}, q(5)}}}};
  auto m = ModuleMap::matrix(A, B, cols, "m");
  auto K = dehn_constant(m);
  REQUIRE(K);
  Rational sup(0);
  for (const auto& k : A->basis_up_to(q(40))) {
    Rational r = norm_id(*B, m.apply(k)) / A->weight(k);
    CHECK(r <= *K);
    sup = std::max(sup, r);
  }
  CHECK(sup > 0);
  CHECK(check_dehn_bounded(m, BF::linear(*K, q(0)), ball_sampler(A, q(8)), {}).overall() ==
        Verdict::symbolically_verified);
  // Below the true ratio at a basis element: refuted.
  CHECK(check_dehn_bounded(m, BF::linear(sup / 2, q(0)), ball_sampler(A, q(8)), {}).overall() == Verdict::refuted);
}

TEST_CASE("functional-analytic routes") {
  auto o = z1();
  auto P = BoundingClass::polynomial();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  auto id = ModuleMap::identity(M);
  auto ci = check_fa_bounded(id, schedule(), P, ball_sampler(M, q(6)), {});
  CHECK(ci.overall() == Verdict::symbolically_verified);
  for (const auto& w : ci.checks) CHECK(*w.f_prime == w.f);

  auto mult = ModuleMap::left_multiplication(M, group_ring_element({{{1}, q(2)}, {{-3}, q(-1)}}));
  auto cm = check_fa_bounded(mult, schedule(), P, ball_sampler(M, q(6)), {});
  CHECK(cm.overall() == Verdict::symbolically_verified);
  CHECK(cm.checks[0].route == "left-multiplication");

  auto N = WeightedModule::free(o, {{"u", q(1)}, {"v", q(3)}});
  std::map<std::string, FormalSum> cols{
      {"x", FormalSum{{BasisKey{{2}, "u"}, q(3)}, {BasisKey{{-1}, "v"}, q(-1)}}},
      {"y", FormalSum{{BasisKey{{0}, "u"}, q(5)}, {BasisKey{{4}, "u"}, q(1)}}}};
  auto m = ModuleMap::matrix(M, N, cols, "m");
  auto cmat = check_fa_bounded(m, schedule(), P, ball_sampler(M, q(8)), {});
  CHECK(cmat.overall() == Verdict::symbolically_verified);
  for (const auto& w : cmat.checks) CHECK(w.route == "matrix");

  // Exponential f is outside P: no witness in the class.
  auto ce = check_fa_bounded(m, {BF::exponential(q(1), q(2))}, P, ball_sampler(M, q(6)), {});
  CHECK(ce.overall() == Verdict::inconclusive);

  // Basis map induced by a bounded set map.
  auto Nid = naturals_identity_weight();
  auto Nlog = naturals_log_weight();
  auto fwd = ModuleMap::key_map(Nid, Nlog, [](const BasisKey& k) { return k; }, "n->n");
  auto cb = check_fa_bounded(fwd, schedule(), P, ball_sampler(Nid, q(64)), {}, BF::identity());
  CHECK(exit_code(cb.overall()) == 0);
  for (const auto& w : cb.checks) CHECK(w.route == "basis-map");
  // Without a Dehn witness a rule map has no route.
  CHECK(check_fa_bounded(fwd, schedule(), P, ball_sampler(Nid, q(64)), {}).overall() == Verdict::inconclusive);
}

TEST_CASE("composition of functional-analytic pairs") {
  auto o = z1();
  auto A = WeightedModule::free(o, {{"x", q(1)}});
  auto B = WeightedModule::free(o, {{"y", q(2)}});
  auto C = WeightedModule::free(o, {{"z", q(1)}});
  auto m1 = ModuleMap::matrix(A, B, {{"x", FormalSum{{BasisKey{{1}, "y"}, q(2)}}}}, "m1");
  auto m2 = ModuleMap::matrix(B, C, {{"y", FormalSum{{BasisKey{{-2}, "z"}, q(1)}, {BasisKey{{0}, "z"}, q(1)}}}}, "m2");
  auto P = BoundingClass::polynomial();
  for (const auto& f : schedule()) {
    auto c1 = check_fa_bounded(m1, {f}, P, ball_sampler(A, q(6)), {});
    REQUIRE(c1.checks[0].f_prime);
    auto c2 = check_fa_bounded(m2, {*c1.checks[0].f_prime}, P, ball_sampler(B, q(6)), {});
    REQUIRE(c2.checks[0].f_prime);
    auto w = check_fa_pair(m2.after(m1), f, *c2.checks[0].f_prime, ball_sampler(A, q(6)), {});
    CHECK(w.verdict == Verdict::sample_verified);
  }
}

TEST_CASE("Dehn to functional-analytic claims") {
  auto o = z1();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  auto basis = M->basis_up_to(q(8));
  auto id = ModuleMap::identity(M);
  auto r = dehn_implies_fa(id, BF::identity(), BF::polynomial({q(0), q(0), q(1)}), basis, ball_sampler(M, q(8)), {});
  CHECK(r.claims_hold());
  CHECK(r.dehn_violations == 0);
  CHECK(dominates_everywhere(r.f_prime, BF::polynomial({q(0), q(0), q(1)})) == true);

  // Shift n -> n+1 on (N, id), h = x^2. x + 1 bounds the shift on signed basis
  // elements only; sums gain ||a||_1 and need 2x.
  auto Nid = naturals_identity_weight();
  auto shift = ModuleMap::key_map(Nid, Nid, [](const BasisKey& k) { return nat(Integer(k.x) + 1); }, "shift");
  auto rs = dehn_implies_fa(shift, BF::linear(q(1), q(1)), BF::polynomial({q(0), q(0), q(1)}), Nid->basis_up_to(q(200)),
                            ball_sampler(Nid, q(200), 1, 1), {});
  CHECK(rs.claims_hold());
  CHECK(rs.dehn_violations == 0);
  CHECK(rs.elements_checked == 200);
  auto rs2 = dehn_implies_fa(shift, BF::linear(q(2), q(0)), BF::polynomial({q(0), q(0), q(1)}), {},
                             ball_sampler(Nid, q(200)), {});
  CHECK(rs2.claims_hold());
  CHECK(rs2.dehn_violations == 0);
  CHECK(dominates_everywhere(rs.f_prime, BF::polynomial({q(1), q(2), q(1)})) == true);

  // Diagonal map with entries 3: exact on the basis ball.
  auto D = ModuleMap::matrix(M, M, {{"x", FormalSum::single(BasisKey{{0}, "x"}, q(3))},
                                    {"y", FormalSum::single(BasisKey{{0}, "y"}, q(3))}}, "3");
  auto rd = dehn_implies_fa(D, BF::linear(q(3), q(0)), BF::polynomial({q(0), q(0), q(1)}), basis, nullptr, {});
  CHECK(rd.basis_checked == basis.size());
  CHECK(rd.claim1_basis_violations == 0);

  // h with a positive constant term: the claimed bound h o f fails as soon as
  // an image has more than one term; h o f + h(0) f holds.
  auto S = WeightedModule::plain({{"x", q(1)}}, "S");
  auto T = WeightedModule::plain({{"y1", q(1)}, {"y2", q(1)}}, "T");
  auto split = ModuleMap::matrix(S, T, {{"x", FormalSum{{BasisKey{{}, "y1"}, q(1)}, {BasisKey{{}, "y2"}, q(1)}}}}, "d");
  auto rc = dehn_implies_fa(split, BF::linear(q(2), q(0)), BF::constant(q(1)), S->basis_up_to(q(1)),
                            ball_sampler(S, q(1), 1, 6), {});
  CHECK(rc.claim1_basis_violations == 1);
  CHECK(rc.claim2_violations > 0);
  REQUIRE(rc.first_claim1);
  CHECK(rc.first_claim1->lhs == 2);
  CHECK(rc.first_claim1->rhs == 1);
  CHECK(rc.corrected_violations == 0);

  auto Q = WeightedModule::free(o, {{"x", q(1)}}, "Q", RingKind::rationals);
  CHECK_THROWS_AS(dehn_implies_fa(ModuleMap::identity(Q), BF::identity(), BF::identity(), {}, nullptr, {}),
                  std::invalid_argument);
}

TEST_CASE("matrix bound constants") {
  auto o = z1();
  auto P = BoundingClass::polynomial();
  auto X = WeightedModule::free(o, {{"x", q(1)}});
  auto Y = WeightedModule::free(o, {{"y", q(1)}});
  auto z = matrix_bound_constants(ModuleMap::zero(X, Y), P, BF::identity());
  CHECK(z.H_f4 == 0);
  CHECK(z.bound == 0);

  // 1x1 identity entry, f = id: f2 = 2x, f4 = 4x; the generator (1, y) has weight 2.
  auto one = ModuleMap::matrix(X, Y, {{"x", FormalSum::single(BasisKey{{0}, "y"})}}, "1");
  auto c1 = matrix_bound_constants(one, P, BF::identity());
  CHECK(c1.C_f == 4);
  CHECK(c1.H_f4 == 4);
  CHECK(c1.C == 1);
  CHECK(c1.bound == 32);
  auto chk1 = check_matrix_bound(one, BF::identity(), c1, ball_sampler(X, q(8)), {});
  CHECK(chk1.literal_violations == 0);
  CHECK(chk1.corrected_violations == 0);

  // 2x2 monomial matrix with entries +-t^{+-1}.
  auto X2 = WeightedModule::free(o, {{"x1", q(1)}, {"x2", q(1)}});
  auto Y2 = WeightedModule::free(o, {{"y1", q(1)}, {"y2", q(1)}});
  auto mono = ModuleMap::matrix(X2, Y2, {{"x1", FormalSum::single(BasisKey{{1}, "y2"}, q(-1))},
                                         {"x2", FormalSum::single(BasisKey{{-1}, "y1"})}}, "mono");
  for (const auto& f : schedule()) {
    auto c = matrix_bound_constants(mono, P, f);
    auto chk = check_matrix_bound(mono, f, c, ball_sampler(X2, q(4)), {});
    CHECK(chk.checked == 200);
    CHECK(chk.literal_violations == 0);
    CHECK(chk.corrected_violations == 0);
  }

  // One generator hitting three: ||h(x)||_1 = 3 exceeds 2 C_f H C = 2 at f = 1.
  auto Y3 = WeightedModule::free(o, {{"y1", q(1)}, {"y2", q(1)}, {"y3", q(1)}});
  auto row = ModuleMap::matrix(X, Y3, {{"x", FormalSum{{BasisKey{{0}, "y1"}, q(1)}, {BasisKey{{0}, "y2"}, q(1)},
                                                       {BasisKey{{0}, "y3"}, q(1)}}}}, "row");
  auto cr = matrix_bound_constants(row, P, BF::constant(q(1)));
  CHECK(cr.bound == 2);
  SampleOptions probe;
  probe.probes = {FormalSum::single(BasisKey{{0}, "x"})};
  auto chr = check_matrix_bound(row, BF::constant(q(1)), cr, ball_sampler(X, q(6)), probe);
  CHECK(chr.literal_violations > 0);
  REQUIRE(chr.first_literal);
  CHECK(chr.first_literal->lhs == 3);
  CHECK(chr.first_literal->rhs == 2);
  CHECK(chr.corrected_violations == 0);

  CHECK_THROWS_AS(matrix_bound_constants(ModuleMap::identity(naturals_identity_weight()), P, BF::identity()),
                  std::invalid_argument);
}

TEST_CASE("admissibility certificates") {
  auto o = z1();
  auto A = WeightedModule::free(o, {{"x", q(1)}}, "A");
  auto B = WeightedModule::free(o, {{"y", q(2)}}, "B");
  auto AB = direct_sum({A, B});
  auto pr = projection(AB, {A, B}, 0);
  auto in = inclusion(AB, {A, B}, 0);
  auto rep = verify_admissible(pr, {in, {q(1), q(0)}}, ball_sampler(A, q(6)), {});
  CHECK(rep.identity_exact);
  CHECK(rep.verdict == Verdict::symbolically_verified);

  auto S = WeightedModule::plain({{"s1", q(1)}, {"s2", q(3)}}, "S");
  auto T = WeightedModule::plain({{"s", q(2)}}, "T");
  auto qm = ModuleMap::label_map(S, T, {{"s1", "s"}, {"s2", "s"}}, "q");
  auto sec = ModuleMap::label_map(T, S, {{"s", "s1"}}, "sigma");
  CHECK(verify_admissible(qm, {sec, {q(1), q(0)}}, ball_sampler(T, q(2)), {}).verdict == Verdict::symbolically_verified);
  // The section through s2 needs a = 3/2.
  auto sec2 = ModuleMap::label_map(T, S, {{"s", "s2"}}, "sigma2");
  CHECK(verify_admissible(qm, {sec2, {q(1), q(0)}}, ball_sampler(T, q(2)), {}).verdict == Verdict::refuted);
  CHECK(verify_admissible(qm, {sec2, {q(3, 2), q(0)}}, ball_sampler(T, q(2)), {}).verdict ==
        Verdict::symbolically_verified);

  auto bad = ModuleMap::matrix(T, S, {{"s", FormalSum::single(BasisKey{{}, "s1"}, q(2))}}, "bad");
  auto rb = verify_admissible(qm, {bad, {q(1), q(0)}}, ball_sampler(T, q(2)), {});
  CHECK_FALSE(rb.identity_exact);
  CHECK(rb.verdict == Verdict::refuted);
}

TEST_CASE("projective modules") {
  auto o = z1();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  auto p = ModuleMap::matrix(M, M, {{"x", FormalSum::single(BasisKey{{0}, "x"})},
                                    {"y", FormalSum::single(BasisKey{{1}, "x"}, q(-1))}}, "p");
  ProjectiveModule pm{M, p, ModuleMap::identity(M)};
  auto rep = verify_projective(pm, ball_sampler(M, q(6)), {});
  CHECK(rep.idempotent);
  CHECK(rep.psp);
  CHECK(rep.section_idempotent);
  CHECK(rep.ok());

  auto notp = ModuleMap::matrix(M, M, {{"x", FormalSum::single(BasisKey{{0}, "x"}, q(2))}}, "2p");
  CHECK_FALSE(verify_projective({M, notp, ModuleMap::identity(M)}, ball_sampler(M, q(6)), {}).ok());
}

TEST_CASE("parallel checks agree with sequential ones") {
  auto Nlog = naturals_log_weight();
  auto Nid = naturals_identity_weight();
  auto inv = ModuleMap::key_map(Nlog, Nid, [](const BasisKey& k) { return k; }, "inv");
  SampleOptions seq, par;
  seq.trials = par.trials = 300;
  seq.seed = par.seed = 99;
  par.jobs = 4;
  auto f = BF::linear(q(3), q(0));
  auto a = check_dehn_bounded(inv, f, ball_sampler(Nlog, q(8)), seq);
  auto b = check_dehn_bounded(inv, f, ball_sampler(Nlog, q(8)), par);
  REQUIRE(a.checks[0].counterexample);
  REQUIRE(b.checks[0].counterexample);
  CHECK(a.checks[0].counterexample->index == b.checks[0].counterexample->index);
  CHECK(a.checks[0].counterexample->element == b.checks[0].counterexample->element);
  CHECK(a.checks[0].samples == b.checks[0].samples);
}
