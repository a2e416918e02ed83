#include "doctest.h"

#include "bhk/bounding.hpp"

using namespace bhk;

namespace {

using BF = BoundingFunction;

Rational q(long p, long d = 1) { return Rational(p, d); }

BF poly(std::initializer_list<long> ascending) {
  std::vector<Rational> c;
  for (long v : ascending) c.emplace_back(v);
  return BF::polynomial(c);
}

// 1000 exact sample points in [0, 2^20]: small integers, dyadic and
// non-dyadic fractions, and a geometric sweep.
std::vector<Rational> sample_points() {
  std::vector<Rational> out;
  Rng rng(20240601);
  for (int i = 0; i < 200; ++i) out.emplace_back(i);
  for (int i = 0; i < 400; ++i) out.emplace_back(Rational(static_cast<long>(rng.below(1 << 20)), 1 + static_cast<long>(rng.below(7))));
  for (int k = 0; k < 20; ++k)
    for (int j = 0; j < 20; ++j) out.push_back(pow(Rational(2), k) * Rational(20 + j, 20));
  for (auto& x : out)
    if (x > (1 << 20)) x = 1 << 20;
  return out;
}

// Random polynomial-or-linear-precomposed-exponential function with small
// parameters so evaluation on [0, 2^20] stays cheap.
BF random_function(Rng& rng, bool allow_exp) {
  switch (rng.below(allow_exp ? 4 : 3)) {
    case 0: return BF::constant(q(static_cast<long>(rng.below(10))));
    case 1: return BF::linear(q(static_cast<long>(rng.below(5)), 1 + static_cast<long>(rng.below(3))), q(static_cast<long>(rng.below(5))));
    case 2: {
      std::vector<Rational> c;
      for (int i = 0, n = 1 + static_cast<int>(rng.below(4)); i < n; ++i) c.emplace_back(static_cast<long>(rng.below(4)));
      return BF::polynomial(c);
    }
    default: return BF::exponential(q(1 + static_cast<long>(rng.below(3))), q(1 + static_cast<long>(rng.below(2)), 1));
  }
}

bool dominates_on(const BF& w, const Expr& e, const std::vector<Rational>& pts) {
  for (const auto& x : pts)
    if (w.eval(x) < e.eval(x)) return false;
  return true;
}

}  // namespace

TEST_CASE("frozen evaluation examples") {
  CHECK(BF::constant(q(1)).eval(q(57)) == 1);
  CHECK(BF::linear(q(2), q(3)).eval(q(5)) == 13);
  CHECK(poly({0, 0, 1}).eval(q(3, 2)) == q(9, 4));
  CHECK(BF::exponential(q(3), q(2)).eval(q(5, 2)) == 24);  // rounded up to 3
  CHECK_THROWS_AS(BF::linear(q(1), q(0)).eval(q(-1)), std::domain_error);
  CHECK_THROWS_AS(BF::exponential(q(1), q(2)).eval(Rational(1L << 30)), std::overflow_error);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(BF::constant(q(-1)), std::invalid_argument);
  CHECK_THROWS_AS(BF::exponential(q(1), q(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(BF::chain({}), std::invalid_argument);
  CHECK_THROWS_AS(poly({1, -1}), std::invalid_argument);
}

TEST_CASE("chain evaluates innermost first") {
  BF f = BF::chain({poly({0, 0, 1}), BF::linear(q(1), q(1))});  // (x+1)^2
  CHECK(f.eval(q(2)) == 9);
  BF g = BF::chain({BF::exponential(q(1), q(2)), BF::exponential(q(1), q(2))});
  CHECK(g.eval(q(3)) == 256);
}

TEST_CASE("parser") {
  CHECK(BF::parse("2t+3").eval(q(5)) == 13);
  CHECK(BF::parse("t^2").eval(q(3)) == 9);
  CHECK(BF::parse("1/2t^2 + t").eval(q(2)) == 4);
  CHECK(BF::parse("3*2^t").eval(q(4)) == 48);
  CHECK(BF::parse("x").eval(q(7)) == 7);
  CHECK(BF::parse("(t^2) o (2^t)").eval(q(3)) == 64);
  CHECK(BF::parse("2^t + t").eval(q(3)) == 11);
  CHECK_THROWS(BF::parse(""));
  CHECK_THROWS(BF::parse("t^"));
  CHECK_THROWS(BF::parse("2^t^2"));
}

TEST_CASE("dominator examples") {
  auto P = BoundingClass::polynomial();
  auto L = BoundingClass::linear();
  auto pts = sample_points();

  Expr half_sq = Expr::combination({{q(1, 2), Expr::leaf(poly({0, 0, 1}))}, {q(1, 2), Expr::leaf(poly({0, 0, 1}))}});
  BF d1 = dominator(P, half_sq);
  CHECK(dominates_on(d1, half_sq, pts));
  CHECK(*dominates_everywhere(d1, poly({0, 0, 1})));

  Expr lin = Expr::compose(Expr::leaf(BF::linear(q(2), q(1))), Expr::leaf(BF::linear(q(3), q(2))));
  BF d2 = dominator(L, lin);
  REQUIRE(d2.is_polynomial_like());
  CHECK(d2.degree() == 1);
  CHECK(*dominates_everywhere(d2, BF::linear(q(6), q(5))));

  Expr sq_cube = Expr::compose(Expr::leaf(poly({0, 0, 1})), Expr::leaf(poly({0, 0, 0, 1})));
  BF d3 = dominator(P, sq_cube);
  CHECK(d3.degree() >= 6);
  CHECK(dominates_on(d3, sq_cube, pts));

  BF strict = dominator(P, half_sq, true);
  for (const auto& x : pts) CHECK(strict.eval(x) > half_sq.eval(x));
}

TEST_CASE("dominator errors") {
  auto L = BoundingClass::linear();
  auto E = BoundingClass::exponential();
  CHECK_THROWS_AS(dominator(L, Expr::leaf(poly({0, 0, 1}))), std::invalid_argument);
  Expr nonlinear = Expr::compose(Expr::leaf(BF::exponential(q(1), q(2))), Expr::leaf(poly({0, 0, 1})));
  CHECK_THROWS_AS(dominator(E, nonlinear), std::invalid_argument);
  Expr ok = Expr::compose(Expr::leaf(BF::exponential(q(1), q(2))), Expr::leaf(BF::linear(q(3), q(1))));
  BF w = dominator(E, ok);
  CHECK(w.kind() == FunctionKind::exponential);
  CHECK(w.eval(q(4)) == 8192);
}

TEST_CASE("property: dominators dominate their expressions on 1000 points") {
  auto pts = sample_points();
  Rng rng(7);
  auto P = BoundingClass::polynomial();
  auto E = BoundingClass::exponential();
  for (int trial = 0; trial < 40; ++trial) {
    BF a = random_function(rng, false), b = random_function(rng, false);
    Expr comb = Expr::combination({{q(1 + static_cast<long>(rng.below(5)), 3), Expr::leaf(a)}, {q(2), Expr::leaf(b)}});
    CHECK(dominates_on(dominator(P, comb), comb, pts));
    Expr comp = Expr::compose(Expr::leaf(a), Expr::leaf(b));
    CHECK(dominates_on(dominator(P, comp), comp, pts));
  }
  // Exponential mixes stay small enough to evaluate on [0, 200].
  std::vector<Rational> small;
  for (const auto& x : pts)
    if (x <= 200) small.push_back(x);
  for (int trial = 0; trial < 40; ++trial) {
    BF a = random_function(rng, true), b = random_function(rng, false);
    Expr comb = Expr::combination({{q(1), Expr::leaf(a)}, {q(1), Expr::leaf(b)}});
    CHECK(dominates_on(dominator(E, comb), comb, small));
    BF lin = BF::linear(q(1 + static_cast<long>(rng.below(3)), 2), q(static_cast<long>(rng.below(3)), 2));
    Expr comp = Expr::compose(Expr::leaf(a), Expr::leaf(lin));
    CHECK(dominates_on(dominator(E, comp), comp, small));
    Expr outer = Expr::compose(Expr::leaf(b), Expr::leaf(BF::exponential(q(1 + static_cast<long>(rng.below(2))), q(2))));
    CHECK(dominates_on(dominator(BoundingClass::iterated_exponential(), outer), outer, small));
  }
}

TEST_CASE("property: monotonicity") {
  Rng rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    BF f = random_function(rng, true);
    Rational x(static_cast<long>(rng.below(300)), 1 + static_cast<long>(rng.below(5)));
    Rational y = x + Rational(static_cast<long>(rng.below(50)), 1 + static_cast<long>(rng.below(5)));
    CHECK(f.eval(x) <= f.eval(y));
  }
}

TEST_CASE("BC1: every class contains the constant 1") {
  for (auto name : {ClassName::L, ClassName::P, ClassName::E, ClassName::Etilde})
    CHECK(BoundingClass::named(name).contains(BF::constant(q(1))));
  BoundingClass custom(ClassName::custom, {poly({0, 0, 0, 1})}, false);
  CHECK(custom.contains(BF::constant(q(1))));
}

TEST_CASE("growth ranks and caps") {
  CHECK(growth_rank(poly({1, 0, 3})) == GrowthRank{0, 2});
  CHECK(growth_rank(BF::exponential(q(5), q(1))) == GrowthRank{0, 0});
  CHECK(growth_rank(BF::chain({BF::exponential(q(1), q(2)), poly({0, 0, 1})})) == GrowthRank{1, 2});
  CHECK(growth_rank(BF::chain({BF::exponential(q(1), q(2)), BF::exponential(q(1), q(2))})) == GrowthRank{2, 1});
  CHECK(BoundingClass::exponential().contains(poly({0, 0, 0, 0, 0, 7})));
  CHECK_FALSE(BoundingClass::exponential().contains(BF::chain({BF::exponential(q(1), q(2)), poly({0, 0, 1})})));
  CHECK(BoundingClass::iterated_exponential().contains(BF::chain({BF::exponential(q(1), q(2)), BF::exponential(q(1), q(2))})));
}

TEST_CASE("precedes examples") {
  auto L = BoundingClass::linear(), P = BoundingClass::polynomial(), E = BoundingClass::exponential();
  auto Et = BoundingClass::iterated_exponential();
  CHECK(precedes(L, P, q(1)).verdict == PrecedenceVerdict::yes_witnessed);
  auto pl = precedes(P, L, q(1));
  CHECK(pl.verdict == PrecedenceVerdict::no_counterexample);
  REQUIRE(pl.counterexample);
  CHECK(*pl.counterexample == poly({0, 0, 1}));
  CHECK(precedes(P, E, q(1)).verdict == PrecedenceVerdict::yes_witnessed);
  CHECK(precedes(E, P, q(1)).verdict == PrecedenceVerdict::no_counterexample);
  CHECK(precedes(Et, E, q(1)).verdict == PrecedenceVerdict::no_counterexample);
  CHECK(precedes(E, Et, q(1)).verdict == PrecedenceVerdict::yes_witnessed);
}

TEST_CASE("precedes: witnesses hold on the horizon grid") {
  auto P = BoundingClass::polynomial(), E = BoundingClass::exponential();
  auto r = precedes(P, E, q(3));
  REQUIRE(r.verdict == PrecedenceVerdict::yes_witnessed);
  auto grid = geometric_grid(q(3), q(3 * 1024), 64);
  for (const auto& [g, w] : r.witnesses) CHECK_FALSE(first_grid_violation(w, g, grid));
}

TEST_CASE("precedes is reflexive and transitive on L, P, E") {
  std::vector<BoundingClass> cs = {BoundingClass::linear(), BoundingClass::polynomial(), BoundingClass::exponential()};
  auto yes = [](const BoundingClass& a, const BoundingClass& b) {
    return precedes(a, b, q(1)).verdict == PrecedenceVerdict::yes_witnessed;
  };
  for (const auto& a : cs) CHECK(yes(a, a));
  for (const auto& a : cs)
    for (const auto& b : cs)
      for (const auto& c : cs)
        if (yes(a, b) && yes(b, c)) CHECK(yes(a, c));
}

TEST_CASE("make_f2_f4_F") {
  auto P = BoundingClass::polynomial();
  auto pts = sample_points();
  for (const BF& f : {BF::identity(), BF::constant(q(1)), poly({0, 0, 1}), poly({2, 1, 3})}) {
    auto t = make_f2_f4_F(P, f);
    for (const auto& x : pts) {
      CHECK(t.f2.eval(x) >= f.eval(2 * x));
      CHECK(t.f4.eval(x) >= f.eval(4 * x));
      CHECK(t.F.eval(x) >= x);
      CHECK(t.F.eval(x) >= t.f2.eval(x));
    }
  }
  auto one = make_f2_f4_F(P, BF::constant(q(1)));
  CHECK(one.f2 == BF::constant(q(1)));
  CHECK(one.F == BF::linear(q(1), q(1)));
  auto E = BoundingClass::exponential();
  auto te = make_f2_f4_F(E, BF::exponential(q(1), q(2)));
  CHECK(te.f2.eval(q(5)) == 1024);
  CHECK(te.F.eval(q(5)) >= 1024);
}

TEST_CASE("dominance deciders") {
  CHECK(*dominates_eventually(poly({0, 0, 1}), BF::linear(q(100), q(100))));
  CHECK_FALSE(*dominates_eventually(BF::linear(q(100), q(100)), poly({0, 0, 1})));
  CHECK(*dominates_eventually(BF::exponential(q(1), q(2)), poly({0, 0, 0, 9})));
  CHECK_FALSE(*dominates_eventually(BF::exponential(q(1), q(2)), BF::exponential(q(1), q(3))));
  CHECK_FALSE(*dominates_everywhere(BF::linear(q(1), q(0)), BF::constant(q(1))));
  CHECK(*dominates_everywhere(BF::exponential(q(4), q(3)), poly({1, 1, 1})));
  CHECK_FALSE(dominates_everywhere(BF::exponential(q(3), q(3)), poly({1, 1, 1})).has_value());
}
