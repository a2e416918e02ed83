#include "doctest.h"

#include "bhk/obstruction.hpp"
#include "bhk/random_complex.hpp"

using namespace bhk;

namespace {

Integer pow2(unsigned long e) { return Integer(1) << e; }

ChainComplex free_two_term(std::size_t top, std::size_t bottom, bool identity) {
  std::vector<std::pair<std::string, Rational>> a, b;
  for (std::size_t i = 0; i < top; ++i) a.push_back({"a" + std::to_string(i), Rational(1)});
  for (std::size_t i = 0; i < bottom; ++i) b.push_back({"b" + std::to_string(i), Rational(1)});
  auto A = WeightedModule::plain(a, "A"), B = WeightedModule::plain(b, "B");
  std::map<std::string, std::string> lab;
  if (identity)
    for (std::size_t i = 0; i < top; ++i) lab["a" + std::to_string(i)] = "b" + std::to_string(i);
  auto d = identity ? ModuleMap::label_map(A, B, lab) : ModuleMap::zero(A, B);
  return ChainComplex::make(nullptr, RingKind::integers, 0, {B, A}, {d});
}

}  // namespace

TEST_CASE("euler class examples") {
  CHECK(euler_class(free_two_term(1, 1, true)) == 0);
  CHECK(euler_class(ChainComplex::concentrated(WeightedModule::plain({{"x", Rational(1)}}), 0)) == 1);
  CHECK(euler_class(free_two_term(2, 3, false)) == 1);
  CHECK_THROWS_AS(euler_class(two_term_complex(NaturalWeight::id, NaturalWeight::id)), std::invalid_argument);
}

TEST_CASE("euler class is additive and flips under shift") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    auto a = random_complex(nullptr, rng).complex, b = random_complex(nullptr, rng).complex;
    CHECK(euler_class(direct_sum(a, b)) == euler_class(a) + euler_class(b));
    CHECK(euler_class(a.shifted()) == -euler_class(a));
  }
}

TEST_CASE("finiteness experiment vanishes with a verified certificate") {
  Rng rng(4);
  auto r = random_complex(nullptr, rng);
  FinitenessExperiment e{r.complex, r.homology, r.to_homology, "L"};
  auto rep = run_finiteness_experiment(e);
  CHECK(exit_code(rep.verdict) == 0);
  CHECK(rep.conclusion == "obstruction class vanishes at this witness level");
  CHECK(*rep.model_euler == euler_class(r.complex));
  FinitenessExperiment none{r.complex, r.homology, std::nullopt, "L"};
  CHECK(run_finiteness_experiment(none).verdict == Verdict::inconclusive);
}

TEST_CASE("inverse of (N,id) -> (N,log) is refuted at n = 2^64") {
  InverseSearchProblem p;
  p.map = naturals_inverse(NaturalWeight::id, NaturalWeight::log);
  p.degree = 3;
  p.coeff_bound = 1000000;
  p.n_max = pow2(64);
  auto r = falsify_poly_inverse(p);
  CHECK(r.verdict == Verdict::refuted);
  REQUIRE(r.witness);
  CHECK(r.witness->n == pow2(64));
  CHECK(r.witness->input_weight == 65);
  CHECK(r.witness->required == Rational(pow2(64)));
  // independent evaluation of the extremal polynomial
  Integer q = 1000000 * (Integer(65) * 65 * 65 + 65 * 65 + 65 + 1);
  CHECK(r.witness->extremal == Rational(q));
  CHECK(Integer(pow2(64)) > q);
}

TEST_CASE("identity map: no refutation, q = 1 + t survives") {
  InverseSearchProblem p;
  p.map = naturals_map(NaturalWeight::id, NaturalWeight::id);
  auto r = falsify_poly_inverse(p);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.witness);
  CHECK_FALSE(r.per_degree[0].survives);
  CHECK(r.per_degree[1].survives);
  CHECK(r.per_degree[1].min_coeff == 1);
  REQUIRE(r.surviving);
  CHECK(r.surviving->eval(Rational(5)) == 6);
}

TEST_CASE("squaring relabel: refuted in degree 1, survives degree 2") {
  InverseSearchProblem p;
  p.map = naturals_map(NaturalWeight::id, NaturalWeight::id, Relabel::square);
  p.degree = 1;
  CHECK(falsify_poly_inverse(p).verdict == Verdict::refuted);
  p.degree = 2;
  auto r = falsify_poly_inverse(p);
  CHECK(r.verdict == Verdict::inconclusive);
  CHECK_FALSE(r.per_degree[1].survives);
  CHECK(r.per_degree[2].survives);
  CHECK(r.per_degree[2].min_coeff == 1);
}

TEST_CASE("margin table along doubly exponential points") {
  InverseSearchProblem p;
  p.map = naturals_inverse(NaturalWeight::id, NaturalWeight::log);
  p.degree = 8;
  p.coeff_bound = 1000000000;
  p.n_max = pow2(256);
  auto r = falsify_poly_inverse(p, 3);
  CHECK(r.verdict == Verdict::refuted);
  CHECK(r.witness->n == pow2(256));
  std::vector<MarginRow> rows;
  for (const auto& row : r.table)
    if (row.n >= pow2(16)) rows.push_back(row);
  REQUIRE(rows.size() == 5);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    unsigned long e = 1UL << (k + 4);
    CHECK(rows[k].n == pow2(e));
    Integer t = e + 1, s = 0, pw = 1;
    for (int i = 0; i <= 8; ++i) {
      s += pw;
      pw *= t;
    }
    CHECK(rows[k].extremal == Rational(Integer(1000000000) * s));
    if (k > 0) CHECK(rows[k].margin > rows[k - 1].margin);
  }
  CHECK(rows.back().margin > 1);
  CHECK(rows.front().margin < 1);
  // same answer on one thread
  auto r1 = falsify_poly_inverse(p, 1);
  CHECK(r1.table.size() == r.table.size());
  for (std::size_t i = 0; i < r.table.size(); ++i) CHECK(r1.table[i].margin == r.table[i].margin);
}

TEST_CASE("two-term complexes") {
  auto bad = two_term_obstruction(NaturalWeight::id, NaturalWeight::log, "P", 8, Integer(1000000000), pow2(256));
  CHECK(bad.verdict == Verdict::refuted);
  CHECK(bad.conclusion.find("no P-bounded contraction") == 0);

  auto same = two_term_obstruction(NaturalWeight::id, NaturalWeight::id, "L", 3, Integer(1000), pow2(64));
  CHECK(exit_code(same.verdict) == 0);
  REQUIRE(same.contraction);
  CHECK(same.contraction->ok());

  auto flipped = two_term_obstruction(NaturalWeight::log, NaturalWeight::id, "P", 3, Integer(1000), pow2(64));
  CHECK(exit_code(flipped.verdict) == 0);

  auto logs = two_term_obstruction(NaturalWeight::log, NaturalWeight::log, "L", 2, Integer(10), pow2(128));
  CHECK(exit_code(logs.verdict) == 0);
}

TEST_CASE("forward map (N,id) -> (N,log) passes the Dehn check with witness t") {
  auto f = naturals_map(NaturalWeight::id, NaturalWeight::log);
  SampleOptions o;
  o.trials = 100;
  auto c = check_dehn_bounded(f, BoundingFunction::identity(), ball_sampler(f.domain(), Rational(64)), o);
  CHECK(exit_code(c.overall()) == 0);
}
