#include "doctest.h"

#include "bhk/module.hpp"

using namespace bhk;

namespace {

using BF = BoundingFunction;

Rational q(long p, long d = 1) { return Rational(p, d); }

OraclePtr z1() { return std::make_shared<LengthOracle>(GroupModel::Zn(1)); }

// Independent seminorm for Z-modules: weight |n| (or 1 at 0) + w_X(x).
Rational zn_seminorm_oracle(const FormalSum& a, const std::map<std::string, Rational>& wx, const BF& f) {
  Rational s(0);
  for (const auto& [k, c] : a) {
    long n = k.g.at(0);
    Rational L = n == 0 ? Rational(1) : Rational(std::labs(n));
    s += abs_value(c) * f.eval(L + wx.at(k.x));
  }
  return s;
}

std::vector<BF> schedule() {
  return {BF::constant(q(1)), BF::identity(), BF::polynomial({q(0), q(0), q(1)}), BF::linear(q(3), q(2)),
          BF::exponential(q(1), q(2))};
}

}  // namespace

TEST_CASE("frozen seminorm examples") {
  auto o = z1();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  CHECK(seminorm(*M, FormalSum{}, BF::identity()) == 0);
  FormalSum a{{BasisKey{{3}, "x"}, q(2)}, {BasisKey{{-2}, "y"}, q(-3)}};
  CHECK(seminorm(*M, a, BF::polynomial({q(0), q(0), q(1)})) == 80);
  auto S = WeightedModule::plain({{"s", q(2)}});
  CHECK(seminorm(*S, FormalSum::single({{}, "s"}, q(5)), BF::constant(q(1))) == 5);
}

TEST_CASE("seminorm agrees with the independent oracle") {
  auto o = z1();
  std::map<std::string, Rational> wx{{"x", q(1)}, {"y", q(5, 2)}};
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(5, 2)}});
  auto basis = M->basis_up_to(q(12));
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    FormalSum a = random_sum(basis, rng, 5, 9);
    for (const auto& f : schedule()) CHECK(seminorm(*M, a, f) == zn_seminorm_oracle(a, wx, f));
  }
}

TEST_CASE("seminorm properties: triangle, homogeneity, monotonicity") {
  auto o = std::make_shared<LengthOracle>(GroupModel::Zn(2));
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(3)}});
  auto basis = M->basis_up_to(q(8));
  Rng rng(4);
  BF small = BF::identity(), big = BF::polynomial({q(1), q(1), q(1)});
  for (int i = 0; i < 300; ++i) {
    FormalSum a = random_sum(basis, rng, 6, 5), b = random_sum(basis, rng, 6, 5);
    Rational r(rng.uniform(-7, 7));
    for (const auto& f : schedule()) {
      CHECK(seminorm(*M, a + b, f) <= seminorm(*M, a, f) + seminorm(*M, b, f));
      CHECK(seminorm(*M, a.scaled(r), f) <= abs_value(r) * seminorm(*M, a, f));
    }
    CHECK(seminorm(*M, a, small) <= seminorm(*M, a, big));
  }
}

TEST_CASE("scalar_multiply examples") {
  auto o = z1();
  const auto& G = o->group();
  auto M = WeightedModule::free(o, {{"x", q(1)}});
  FormalSum b = FormalSum::single(BasisKey{{1}, "x"});
  CHECK(scalar_multiply(G, group_ring_element({{{0}, q(1)}}), b) == b);

  FormalSum r = group_ring_element({{{1}, q(1)}});
  FormalSum rb = scalar_multiply(G, r, b);
  CHECK(norm_id(*M, rb) == 3);
  // f = id, F = 2x: 2 ||r||_F ||b||_F = 2 * F(1) * F(2) = 16.
  auto R = WeightedModule::group_ring(o);
  BF F = BF::linear(q(2), q(0));
  CHECK(2 * seminorm(*R, r, F) * seminorm(*M, b, F) == 16);
  CHECK(norm_id(*M, rb) <= 16);

  FormalSum rr = group_ring_element({{{1}, q(1)}, {{-1}, q(1)}});
  FormalSum expect{{BasisKey{{1}, "x"}, q(1)}, {BasisKey{{-1}, "x"}, q(1)}};
  CHECK(scalar_multiply(G, rr, FormalSum::single(BasisKey{{0}, "x"})) == expect);
}

TEST_CASE("multiplication bound ||ab||_f <= 2 ||a||_F ||b||_F on the schedule") {
  auto o = std::make_shared<LengthOracle>(GroupModel::free_group(2));
  const auto& G = o->group();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  auto R = WeightedModule::group_ring(o);
  auto ring_basis = R->basis_up_to(q(5));
  auto mod_basis = M->basis_up_to(q(6));
  auto P = BoundingClass::polynomial();
  Rng rng(5);
  for (const auto& f : {BF::constant(q(1)), BF::identity(), BF::polynomial({q(0), q(0), q(1)}), BF::linear(q(2), q(3))}) {
    auto t = make_f2_f4_F(P, f);
    for (int i = 0; i < 150; ++i) {
      FormalSum a = random_sum(ring_basis, rng, 3, 4), b = random_sum(mod_basis, rng, 3, 4);
      CHECK(seminorm(*M, scalar_multiply(G, a, b), f) <= 2 * seminorm(*R, a, t.F) * seminorm(*M, b, t.F));
    }
  }
}

TEST_CASE("induced weight") {
  auto M = WeightedModule::plain({{"s1", q(1)}, {"s2", q(5)}});
  BasisKey s1{{}, "s1"}, s2{{}, "s2"};
  QuotientModule none{M, {}, q(6), 4};
  auto w0 = induced_weight(none, FormalSum::single(s2));
  CHECK(w0.value == 5);
  CHECK_FALSE(w0.upper_bound_only);

  QuotientModule qm{M, {FormalSum{{s2, q(1)}, {s1, q(-1)}}}, q(6), 4};
  auto w = induced_weight(qm, FormalSum::single(s2));
  CHECK(w.value == 1);
  CHECK(w.representative == FormalSum::single(s1));
  CHECK_FALSE(w.upper_bound_only);

  auto own = induced_weight(qm, FormalSum::single(s1, q(2)));
  CHECK(own.value == 2);
}

TEST_CASE("induced weight never exceeds the representative's norm") {
  auto o = z1();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  FormalSum rel{{BasisKey{{1}, "x"}, q(1)}, {BasisKey{{0}, "y"}, q(-1)}};
  QuotientModule qm{M, {rel}, q(5), 2};
  auto basis = M->basis_up_to(q(6));
  Rng rng(6);
  for (int i = 0; i < 30; ++i) {
    FormalSum rep = random_sum(basis, rng, 3, 3);
    auto w = induced_weight(qm, rep);
    CHECK(w.value <= norm_id(*M, rep));
    CHECK(w.upper_bound_only);
  }
}

TEST_CASE("direct sums") {
  auto o = z1();
  auto A = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}}, "A");
  auto B = WeightedModule::free(o, {{"z", q(3)}}, "B");
  auto Z = WeightedModule::zero(o);
  auto AZ = direct_sum({A, Z});
  CHECK(AZ->rank() == A->rank());
  for (const auto& x : A->labels()) CHECK(AZ->label_weight(tag_label(0, x)) == A->label_weight(x));

  auto AB = direct_sum({A, B});
  auto basisA = A->basis_up_to(q(6)), basisB = B->basis_up_to(q(6));
  Rng rng(7);
  for (int i = 0; i < 100; ++i) {
    FormalSum a = random_sum(basisA, rng, 4, 5), b = random_sum(basisB, rng, 4, 5);
    FormalSum ab = inject(0, a) + inject(1, b);
    CHECK(project(0, ab) == a);
    CHECK(project(1, ab) == b);
    for (const auto& f : schedule()) CHECK(seminorm(*AB, ab, f) == seminorm(*A, a, f) + seminorm(*B, b, f));
  }

  // Quotients of direct sums are direct sums of quotients.
  auto P1 = WeightedModule::plain({{"s1", q(1)}, {"s2", q(5)}});
  auto P2 = WeightedModule::plain({{"t", q(2)}, {"u", q(4)}});
  QuotientModule q1{P1, {FormalSum{{BasisKey{{}, "s2"}, q(1)}, {BasisKey{{}, "s1"}, q(-1)}}}, q(6), 3};
  QuotientModule q2{P2, {}, q(6), 3};
  auto qs = direct_sum(std::vector<QuotientModule>{q1, q2});
  FormalSum rep = inject(0, FormalSum::single({{}, "s2"})) + inject(1, FormalSum::single({{}, "u"}));
  CHECK(induced_weight(qs, rep).value ==
        induced_weight(q1, FormalSum::single({{}, "s2"})).value + induced_weight(q2, FormalSum::single({{}, "u"})).value);
}

TEST_CASE("weighted ring axioms") {
  auto o = z1();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  auto rep = check_weighted_ring_axioms(*M, 200, 8, q(4));
  CHECK(rep.ok());
  CHECK(rep.checked > 200);

  auto R = WeightedModule::group_ring(o);
  CHECK(check_weighted_ring_axioms(*R, 200, 9, q(4)).ok());

  // Planted weight-0 basis element.
  auto bad = WeightedModule::with_weight_override(M, [](const BasisKey& k) -> std::optional<Rational> {
    if (k.g == GroupElement{2} && k.x == "x") return Rational(0);
    return std::nullopt;
  });
  CHECK_FALSE(check_weighted_ring_axioms(*bad, 200, 10, q(4)).ok());
}

TEST_CASE("normed rings") {
  CHECK(check_normed_ring({RingKind::integers}, 500, 1).ok());
  CHECK(check_normed_ring({RingKind::rationals}, 500, 2).ok());
  CHECK(NormedRing{RingKind::integers}.norm_floor() == 1);
}

TEST_CASE("natural-number bases") {
  auto id = naturals_identity_weight();
  auto lg = naturals_log_weight();
  CHECK(id->weight({{}, "7"}) == 7);
  CHECK(lg->weight({{}, "7"}) == 3);
  CHECK(lg->weight({{}, "8"}) == 4);
  CHECK(lg->weight({{}, "1"}) == 1);
  CHECK(lg->basis_up_to(q(3)).size() == 7);
  CHECK(id->basis_up_to(q(5)).size() == 5);
  CHECK_THROWS(id->weight({{}, "0"}));
  CHECK(log_weight_extent(q(64)) + 1 == Integer("18446744073709551616"));
  // 2^64 has 65 binary digits.
  CHECK(lg->weight({{}, "18446744073709551616"}) == 65);
}

TEST_CASE("validation") {
  auto o = z1();
  auto M = WeightedModule::free(o, {{"x", q(1)}});
  CHECK_THROWS(M->validate(BasisKey{{0}, "nope"}));
  CHECK_THROWS(M->validate(FormalSum::single(BasisKey{{0}, "x"}, q(1, 2))));
  CHECK_THROWS(WeightedModule::plain({{"s", q(1, 2)}}));
  CHECK_THROWS(WeightedModule::plain({{"s", q(1)}, {"s", q(2)}}));
}
