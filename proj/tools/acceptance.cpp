// Acceptance run: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "bhk/cli.hpp"
#include "bhk/io.hpp"
#include "bhk/parallel.hpp"
#include "bhk/random_complex.hpp"

using namespace bhk;
using BF = BoundingFunction;

namespace {

Rational q(long p, long d = 1) { return Rational(p, d); }

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> notes;  // informational, never affects pass
};

std::vector<BF> schedule() {
  return {BF::constant(q(1)), BF::identity(), BF::polynomial({q(0), q(0), q(1)}), BF::linear(q(2), q(3))};
}

RandomComplexOptions three_term(std::size_t max_h = 1) {
  RandomComplexOptions o;
  o.lo = 0;
  o.hi = 2;
  o.max_homology = max_h;
  return o;
}

RandomComplexOptions with_homology(std::vector<std::size_t> hom) {
  RandomComplexOptions o;
  o.lo = 0;
  o.hi = static_cast<int>(hom.size()) - 1;
  o.homology_ranks = hom;
  return o;
}

bool witnesses_in(const HomotopyCertificate& c, const BoundingClass& cls) {
  for (const auto* w : {&c.wF, &c.wG, &c.wh, &c.wk})
    if (*w && !cls.contains(**w)) return false;
  return true;
}

// Random matrix X -> Y over Z[Z], sizes up to 3x3, entries from the radius-3 ball.
ModuleMap random_matrix(const OraclePtr& o, Rng& rng, const std::vector<BasisKey>& ring_ball) {
  std::size_t rows = 1 + rng.below(3), cols = 1 + rng.below(3);
  std::vector<std::pair<std::string, Rational>> xs, ys;
  for (std::size_t i = 0; i < cols; ++i) xs.push_back({"x" + std::to_string(i), Rational(rng.uniform(1, 3))});
  for (std::size_t j = 0; j < rows; ++j) ys.push_back({"y" + std::to_string(j), Rational(rng.uniform(1, 3))});
  auto X = WeightedModule::free(o, xs, "X"), Y = WeightedModule::free(o, ys, "Y");
  std::map<std::string, FormalSum> columns;
  for (const auto& [x, w] : xs) {
    FormalSum col;
    for (const auto& [y, v] : ys) {
      if (rng.below(3) == 0) continue;
      auto a = random_sum(ring_ball, rng, 2, 3);
      for (const auto& [k, c] : a) col.add(BasisKey{k.g, y}, c);
    }
    columns[x] = col;
  }
  return ModuleMap::matrix(X, Y, columns, "h");
}

// ------------------------------------------------------------------ criteria

Outcome multiplication_bound() {
  auto o = std::make_shared<LengthOracle>(GroupModel::Zn(1));
  const auto& G = o->group();
  auto M = WeightedModule::free(o, {{"x", q(1)}, {"y", q(2)}});
  auto R = WeightedModule::group_ring(o);
  auto ring_ball = R->basis_up_to(q(6)), mod_ball = M->basis_up_to(q(6));
  auto P = BoundingClass::polynomial();
  std::vector<DilationTriple> ts;
  for (const auto& f : schedule()) ts.push_back(make_f2_f4_F(P, f));
  Rng rng(101);
  std::size_t checks = 0, bad = 0;
  for (int i = 0; i < 500; ++i) {
    FormalSum a = random_sum(ring_ball, rng, 3, 4), b = random_sum(mod_ball, rng, 3, 4);
    auto ab = scalar_multiply(G, a, b);
    for (std::size_t s = 0; s < ts.size(); ++s) {
      ++checks;
      if (!(seminorm(*M, ab, schedule()[s]) <= 2 * seminorm(*R, a, ts[s].F) * seminorm(*M, b, ts[s].F))) ++bad;
    }
  }
  return {bad == 0, std::to_string(checks) + " inequalities, " + std::to_string(bad) + " violations", {}};
}

Outcome matrix_bound() {
  auto o = std::make_shared<LengthOracle>(GroupModel::Zn(1));
  auto ring_ball = WeightedModule::group_ring(o)->basis_up_to(q(3));
  auto P = BoundingClass::polynomial();
  Rng rng(202);
  std::size_t checked = 0, literal = 0, corrected = 0, maps_bad = 0;
  std::string first;
  for (int t = 0; t < 100; ++t) {
    auto h = random_matrix(o, rng, ring_ball);
    bool map_bad = false;
    for (const auto& f : schedule()) {
      auto mc = matrix_bound_constants(h, P, f);
      SampleOptions so;
      so.trials = 100;
      so.seed = 1000 + static_cast<std::uint64_t>(t);
      auto r = check_matrix_bound(h, f, mc, ball_sampler(h.domain(), q(6)), so);
      checked += r.checked;
      literal += r.literal_violations;
      corrected += r.corrected_violations;
      if (r.literal_violations && first.empty() && r.first_literal)
        first = "map " + std::to_string(t) + ", f = " + f.to_string() + ": " + to_string(r.first_literal->lhs) + " > " +
                to_string(r.first_literal->rhs);
      map_bad = map_bad || r.literal_violations > 0;
    }
    maps_bad += map_bad;
  }
  Outcome out;
  out.pass = literal == 0;
  out.detail = std::to_string(checked) + " samples, literal constant 2*C_f*H_f4*C violated " + std::to_string(literal) +
               " times on " + std::to_string(maps_bad) + "/100 maps" + (first.empty() ? "" : " (first: " + first + ")");
  out.notes.push_back("corrected factor 4*m*C_f*H_f4 with exact dilations: " + std::to_string(corrected) + " violations");
  return out;
}

Outcome dehn_to_fa() {
  auto o = std::make_shared<LengthOracle>(GroupModel::Zn(1));
  auto ring_ball = WeightedModule::group_ring(o)->basis_up_to(q(3));
  Rng rng(303);
  std::size_t maps = 0, claim1 = 0, claim2 = 0, corrected = 0, hyp = 0, elements = 0;
  while (maps < 200) {
    auto m = random_matrix(o, rng, ring_ball);
    auto K = dehn_constant(m);
    if (!K) continue;
    BF f = BF::linear(*K, q(0));
    SampleOptions so;
    so.trials = 60;
    so.seed = 3000 + maps;
    auto cert = check_dehn_bounded(m, f, ball_sampler(m.domain(), q(6)), so);
    if (cert.overall() == Verdict::refuted) continue;
    ++maps;
    for (const auto& h : schedule()) {
      auto r = dehn_implies_fa(m, f, h, m.domain()->basis_up_to(q(5)), ball_sampler(m.domain(), q(6)), so);
      claim1 += r.claim1_basis_violations + r.claim1_element_violations;
      claim2 += r.claim2_violations;
      corrected += r.corrected_violations;
      hyp += r.dehn_violations;
      elements += r.elements_checked + r.basis_checked;
    }
  }
  Outcome out;
  out.pass = claim1 + claim2 == 0 && hyp == 0;
  out.detail = "200 maps, " + std::to_string(elements) + " checks: Claim 1 violated " + std::to_string(claim1) +
               ", Claim 2 violated " + std::to_string(claim2) + ", hypothesis failures " + std::to_string(hyp);
  out.notes.push_back("corrected witness h o f + h(0) f: " + std::to_string(corrected) + " violations");
  return out;
}

Outcome cylinder_axiom() {
  Rng rng(404);
  auto L = BoundingClass::linear();
  std::size_t bad_equiv = 0, bad_witness = 0, bad_degenerate = 0;
  auto zero = ChainComplex::zero(nullptr);
  for (int t = 0; t < 100; ++t) {
    auto A = random_complex(nullptr, rng, three_term(), "A");
    auto B = random_complex(nullptr, rng, three_term(), "B");
    auto f = random_chain_map(A, B, rng);
    auto cert = cylinder_certificate(cylinder(f));
    cert.cls = "L";
    auto r = verify_equivalence(cert);
    if (!(r.exact() && r.ok())) ++bad_equiv;
    if (!witnesses_in(cert, L)) ++bad_witness;
    auto c0 = cylinder(GradedMap::zero(zero, A.complex));
    bool same = c0.degenerate && c0.cyl.lo() == A.complex.lo() && c0.cyl.hi() == A.complex.hi() &&
                !first_difference(c0.p, GradedMap::identity(A.complex), "p = 1") &&
                !first_difference(c0.j2, GradedMap::identity(A.complex), "j2 = 1");
    for (int n = A.complex.lo(); same && n <= A.complex.hi(); ++n) same = c0.cyl.module(n)->same_as(*A.complex.module(n));
    for (int n = A.complex.lo() + 1; same && n <= A.complex.hi(); ++n) same = c0.cyl.d(n).equals(A.complex.d(n));
    if (!same) ++bad_degenerate;
  }
  return {bad_equiv + bad_witness + bad_degenerate == 0,
          "100 cylinders: equivalence failures " + std::to_string(bad_equiv) + ", witnesses outside L " +
              std::to_string(bad_witness) + ", Cyl(0 -> A) != A " + std::to_string(bad_degenerate),
          {}};
}

Outcome cof3_sections() {
  Rng rng(505);
  std::size_t bad = 0;
  for (int t = 0; t < 100; ++t) {
    auto A = random_complex(nullptr, rng, three_term(), "A");
    auto B = random_complex(nullptr, rng, three_term(), "B");
    auto C = random_complex(nullptr, rng, three_term(), "C");
    CofibrationCertificate i;
    if (t % 2 == 0) {
      i = summand_cofibration(A.complex, B.complex);
    } else {
      auto g = random_chain_map(A, B, rng);
      i = cylinder_front_cofibration(g, cylinder(g));
    }
    auto f = random_chain_map(A, C, rng);
    auto po = pushout_along_cofibration(i, f);
    bool ok = !first_difference(po.j.q.after(po.j.s), GradedMap::identity(po.j.U), "q s = 1") &&
              verify_cofibration(po.j).ok() && check_chain_map(po.b_to_w).empty();
    if (!ok) ++bad;
  }
  return {bad == 0, "100 pushouts, section failures " + std::to_string(bad), {}};
}

Outcome saturation() {
  Rng rng(606);
  std::size_t bad_g = 0, bad_f = 0;
  for (int t = 0; t < 50; ++t) {
    std::vector<std::size_t> hom{1, 0, 1};
    auto A = random_complex(nullptr, rng, with_homology(hom), "A");
    auto B = random_complex(nullptr, rng, with_homology(hom), "B");
    auto C = random_complex(nullptr, rng, with_homology(hom), "C");
    auto cf = compose_certificates(A.to_homology, inverse_certificate(B.to_homology));
    auto cg = compose_certificates(B.to_homology, inverse_certificate(C.to_homology));
    auto cgf = compose_certificates(cf, cg);
    auto g = saturation_complete(cf.F, cg.F, cf, std::nullopt, cgf);
    auto rg = verify_equivalence(g);
    if (!(rg.exact() && rg.ok())) ++bad_g;
    auto f = saturation_complete(cf.F, cg.F, std::nullopt, cg, cgf);
    auto rf = verify_equivalence(f);
    if (!(rf.exact() && rf.ok())) ++bad_f;
  }
  return {bad_g + bad_f == 0,
          "100 runs: third = g failures " + std::to_string(bad_g) + ", third = f failures " + std::to_string(bad_f),
          {}};
}

Outcome app2() {
  Rng rng(707);
  std::size_t bad = 0, bad_rank = 0;
  for (int t = 0; t < 50; ++t) {
    auto C = random_complex(nullptr, rng, three_term(), "C");
    auto D = random_complex(nullptr, rng, three_term(), "D");
    auto f = random_chain_map(C, D, rng);
    auto out = app2_factorize(f, D.to_homology);
    const auto& E = out.cylinder.cyl;
    for (int n = 0; n <= 2; ++n)
      if (E.rank(n) != C.complex.rank(n) + C.complex.rank(n - 1) + D.homology.rank(n)) ++bad_rank;
    auto rh = verify_equivalence(out.h_cert);
    bool ok = verify_cofibration(out.g).ok() && rh.exact() && rh.ok() &&
              check_homotopic(out.h.after(out.g.i), f, out.hg_to_f).empty();
    if (!ok) ++bad;
  }
  return {bad + bad_rank == 0,
          "50 factorizations: certificate failures " + std::to_string(bad) + ", rank mismatches " +
              std::to_string(bad_rank),
          {}};
}

Outcome simplicial() {
  std::size_t identities = 0, failures = 0;
  auto gen = default_generator();
  for (int n : {3, 4}) {
    std::vector<Staircase> xs;
    for (int t = 0; t < 50; ++t) {
      Rng rng(sample_seed(808 + static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(t)));
      xs.push_back(build_staircase(random_filtration(n, rng, gen)));
      if (!verify_staircase(xs.back()).ok()) ++failures;
    }
    auto r = check_simplicial_identities(xs);
    identities += r.identities_checked;
    failures += r.failures.size();
  }
  return {failures == 0 && identities > 0,
          "100 staircases (n = 3, 4): " + std::to_string(identities) + " identities, " + std::to_string(failures) +
              " failures",
          {}};
}

Outcome monomial() {
  auto triv = GroupModel::Zn(0);
  auto w2 = composition_closure(*triv, 2, standard_generators(*triv, 2));
  auto o = std::make_shared<LengthOracle>(GroupModel::Zn(1));
  const auto& G = o->group();
  Rng rng(909);
  std::size_t chain_bad = 0;
  auto object = [&](std::size_t size, const std::string& name) {
    MonomialObject m{o, {}, name};
    for (std::size_t i = 0; i < size; ++i) m.basis.push_back({"b" + std::to_string(rng.below(1000000)), Rational(rng.uniform(1, 3))});
    return m;
  };
  for (int t = 0; t < 200; ++t) {
    auto cur = object(1 + rng.below(4), "X");
    std::vector<MonomialGenerator> chain;
    for (int k = 0; k < 5; ++k) {
      std::size_t kind = rng.below(3);
      if (kind == 1 && cur.size() >= 4) kind = 2;
      if (kind == 2 && cur.size() <= 1) kind = 0;
      if (kind == 0) {
        chain.push_back(MonomialGenerator::monomial(cur, random_monomial(G, cur.size(), rng)));
      } else if (kind == 1) {
        auto bigger = cur;
        bigger.basis.push_back({"n" + std::to_string(rng.below(1000000)), Rational(1)});
        chain.push_back(MonomialGenerator::inclusion(cur, bigger));
      } else {
        auto smaller = cur;
        smaller.basis.erase(smaller.basis.begin() + static_cast<long>(rng.below(smaller.size())));
        chain.push_back(MonomialGenerator::projection(cur, smaller));
      }
      cur = chain.back().target;
    }
    auto m = normalize(chain);
    bool ok = true;
    for (std::size_t i = 0; i < m.source.size(); ++i) ok = ok && apply_chain(chain, i) == m.apply(i);
    auto raw = normalize({chain.front()}).module_map();
    for (std::size_t k = 1; k < chain.size(); ++k) raw = normalize({chain[k]}).module_map().after(raw);
    ok = ok && m.module_map().equals(raw);
    if (!ok) ++chain_bad;
  }
  std::size_t pair_bad = 0;
  for (int t = 0; t < 50; ++t) {
    auto M = object(1 + rng.below(3), "M");
    auto Mp = M;
    Mp.name = "M'";
    std::size_t extra = 1 + rng.below(2);
    for (std::size_t k = 0; k < extra; ++k) Mp.basis.push_back({"c" + std::to_string(k), Rational(rng.uniform(1, 3))});
    auto A = random_complex(nullptr, rng, three_term(), "A");
    auto B = random_complex(nullptr, rng, three_term(), "B");
    auto c = summand_cofibration(A.complex, B.complex);
    auto pc = pairing_cofibration(M, Mp, c);
    bool ok = pc.complement.size() == extra && verify_cofibration(pc.comparison).ok();
    auto T = pair(Mp, c.i.target());
    for (int n = T.lo(); n <= T.hi(); ++n) {
      // F(M', C') = F(M', C) + F(M, C'') + F(M'', C'') degreewise
      ok = ok && pc.pushout.W.rank(n) == pair(Mp, c.i.source()).rank(n) + pair(M, c.U).rank(n);
      ok = ok && pc.comparison.U.rank(n) == pair(pc.complement, c.U).rank(n);
      ok = ok && pc.pushout.W.rank(n) + pc.comparison.U.rank(n) == T.rank(n);
    }
    if (!ok) ++pair_bad;
  }
  return {w2.size() == 8 && chain_bad == 0 && pair_bad == 0,
          "|W_2(1)| = " + std::to_string(w2.size()) + ", 200 chains with " + std::to_string(chain_bad) +
              " mismatches, 50 pairings with " + std::to_string(pair_bad) + " complement failures",
          {}};
}

int cli(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

Outcome naturals_evidence(const std::string& data_dir) {
  std::string file = data_dir + "/naturals_id_log.json";
  int fwd = cli({"check-map", file, "--trials", "200"});
  std::string rep;
  int inv = cli({"check-map", file, "--direction", "inverse", "--degree", "8", "--coeff-bound", "10^9", "--nmax", "2^256"}, &rep);
  auto j = io::json::parse(rep);
  std::vector<Rational> margins;
  for (const auto& row : j["result"]["search"]["margin_table"]) {
    Integer n = io::integer(row["n"], "n");
    unsigned long bits = bit_length(n) - 1;
    if (bits >= 16 && bits <= 256) margins.push_back(io::rational(row["margin"], "margin"));
  }
  bool increasing = margins.size() == 5;
  for (std::size_t i = 1; i < margins.size(); ++i) increasing = increasing && margins[i] > margins[i - 1];
  Outcome out;
  out.pass = fwd == 0 && inv == 1 && increasing;
  out.detail = "forward exit " + std::to_string(fwd) + ", inverse exit " + std::to_string(inv) + ", margins at k = 4..8 " +
               (increasing ? "strictly increasing" : "NOT strictly increasing");
  return out;
}

Outcome word_length() {
  std::size_t checked = 0, bad = 0;
  for (const auto& w : std::vector<std::vector<Rational>>{{q(1), q(1)}, {q(1), q(3, 2)}, {q(2), q(5)}}) {
    auto G = GroupModel::Zn(2, w);
    LengthOracle bfs(G, q(1), q(8), false);
    for (const auto& v : bfs.ball(q(8))) {
      ++checked;
      Rational closed = G->is_identity(v) ? q(1) : Rational(Rational(std::labs(v[0])) * w[0] + Rational(std::labs(v[1])) * w[1]);
      if (bfs.length(v) != closed || bfs.length(G->inverse(v)) != bfs.length(v)) ++bad;
    }
  }
  return {bad == 0 && checked > 0, std::to_string(checked) + " ball elements, " + std::to_string(bad) + " mismatches", {}};
}

Outcome determinism(const std::string& data_dir) {
  std::vector<std::vector<std::string>> suites = {
      {"axiom-suite", "--profile", "Fin/free/Bh", "--trials", "100", "--seed", "7"},
      {"axiom-suite", "--profile", "hFin/free/h", "--trials", "40", "--seed", "3", "--jobs", "2"},
      {"staircase", "--n", "3", "--trials", "10", "--seed", "5"},
      {"check-map", data_dir + "/matrix_map.json", "--schedule", "t,t^2", "--class", "P", "--seed", "9"},
      {"obstruction", "--weights", "log,id", "--class", "P", "--seed", "2"},
      {"pair", data_dir + "/pair_example.json", "--seed", "4"}};
  std::size_t bad = 0;
  for (const auto& args : suites) {
    std::string a, b;
    cli(args, &a);
    cli(args, &b);
    if (a != b || a.empty()) ++bad;
  }
  return {bad == 0, std::to_string(suites.size()) + " reports rerun, " + std::to_string(bad) + " differ", {}};
}

}  // namespace

int main(int argc, char** argv) {
  std::string data_dir = argc > 1 ? argv[1] : "data";
  struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: none
    std::function<Outcome()> run;
  };
  std::vector<Criterion> cs = {
      {1, "multiplication bound", 10, multiplication_bound},
      {2, "matrix-map bound", 30, matrix_bound},
      {3, "Dehn implies functional-analytic", 0, dehn_to_fa},
      {4, "cylinder axiom", 0, cylinder_axiom},
      {5, "Cof3 sections", 0, cof3_sections},
      {6, "saturation", 0, saturation},
      {7, "App2 factorization", 0, app2},
      {8, "S_n simplicial identities", 0, simplicial},
      {9, "monomial soundness", 0, monomial},
      {10, "naturals evidence", 5, [&] { return naturals_evidence(data_dir); }},
      {11, "word length", 0, word_length},
      {12, "determinism", 0, [&] { return determinism(data_dir); }},
  };
  int failed = 0;
  for (const auto& c : cs) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = c.limit_s == 0 || s < c.limit_s;
    bool pass = o.pass && in_time;
    failed += !pass;
    std::ostringstream line;
    line << (pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << ": " << o.detail << " (" << std::fixed
         << std::setprecision(2) << s << " s";
    if (c.limit_s > 0) line << ", limit " << c.limit_s << " s";
    line << ")";
    std::cout << line.str() << "\n";
    for (const auto& n : o.notes) std::cout << "     note: " << n << "\n";
    std::cout.flush();
  }
  std::cout << (cs.size() - static_cast<std::size_t>(failed)) << "/" << cs.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
