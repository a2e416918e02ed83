#include "bhk/obstruction.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "bhk/parallel.hpp"

namespace bhk {

Integer euler_class(const ChainComplex& c) {
  if (!c.finite()) throw std::invalid_argument("euler_class needs a finite complex");
  Integer out = 0;
  for (int n = c.lo(); n <= c.hi(); ++n) {
    Integer r(static_cast<unsigned long>(c.rank(n)));
    if (n % 2 == 0) out += r;
    else out -= r;
  }
  return out;
}

FinitenessReport run_finiteness_experiment(const FinitenessExperiment& e, const SampleOptions& opts) {
  FinitenessReport rep;
  rep.model_finite = e.model.finite();
  if (rep.model_finite) rep.model_euler = euler_class(e.model);
  if (!rep.model_finite) {
    rep.verdict = Verdict::refuted;
    rep.conclusion = "candidate model is not finite";
    return rep;
  }
  if (!e.certificate) {
    rep.conclusion = "no certificate supplied";
    return rep;
  }
  auto cert = *e.certificate;
  cert.cls = e.cls;
  if (!cert.F.source().module(cert.F.source().lo())->same_as(*e.complex.module(e.complex.lo())) ||
      !cert.F.target().module(cert.F.target().lo())->same_as(*e.model.module(e.model.lo()))) {
    rep.verdict = Verdict::refuted;
    rep.conclusion = "certificate does not connect the complex to the model";
    return rep;
  }
  rep.equivalence = verify_equivalence(cert, opts);
  rep.verdict = rep.equivalence->exact() ? rep.equivalence->verdict : Verdict::refuted;
  if (exit_code(rep.verdict) == 0)
    rep.conclusion = "obstruction class vanishes at this witness level";
  else if (rep.verdict == Verdict::refuted)
    rep.conclusion = "certificate rejected";
  else
    rep.conclusion = "certificate exact, bounds inconclusive";
  return rep;
}

// ------------------------------------------------- naturals and inverse search

std::string to_string(NaturalWeight w) { return w == NaturalWeight::id ? "id" : "log"; }

NaturalWeight parse_natural_weight(const std::string& s) {
  if (s == "id") return NaturalWeight::id;
  if (s == "log") return NaturalWeight::log;
  throw std::invalid_argument("weighting must be id or log, got '" + s + "'");
}

ModulePtr naturals(NaturalWeight w) {
  static const ModulePtr id = naturals_identity_weight();
  static const ModulePtr log = naturals_log_weight();
  return w == NaturalWeight::id ? id : log;
}

ModuleMap naturals_map(NaturalWeight from, NaturalWeight to, Relabel relabel) {
  auto keys = [relabel](const BasisKey& k) -> BasisKey {
    if (relabel == Relabel::identity) return k;
    Integer n(k.x, 10);
    Integer sq = n * n;
    return BasisKey{k.g, sq.get_str()};
  };
  std::string name = "(N," + to_string(from) + ")->(N," + to_string(to) + ")";
  if (relabel == Relabel::square) name += " n->n^2";
  return ModuleMap::key_map(naturals(from), naturals(to), keys, name);
}

ModuleMap naturals_inverse(NaturalWeight from, NaturalWeight to) {
  return naturals_map(to, from).named("(N," + to_string(to) + ")->(N," + to_string(from) + ") inverse");
}

namespace {

Rational extremal(const Integer& m, long degree, const Rational& t) {
  Rational s = 0, p = 1;
  for (long i = 0; i <= degree; ++i) {
    s += p;
    p *= t;
  }
  return Rational(m) * s;
}

Rational geometric(long degree, const Rational& t) { return extremal(Integer(1), degree, t); }

std::vector<Integer> sample_points(const InverseSearchProblem& p) {
  std::set<Integer> pts;
  if (p.n_max < 1) return {};
  for (long n = 1; n <= 256 && Integer(n) <= p.n_max; ++n) pts.insert(Integer(n));
  for (Integer x = 1; x <= p.n_max; x *= 2) pts.insert(x);
  pts.insert(p.n_max);
  for (const auto& x : p.extra_samples)
    if (x >= 1 && x <= p.n_max) pts.insert(x);
  return {pts.begin(), pts.end()};
}

bool doubly_exponential(const Integer& n) {
  // n = 2^(2^k)
  if (n < 2) return false;
  unsigned long bits = bit_length(n) - 1;
  if (Integer(1) << bits != n) return false;
  return (bits & (bits - 1)) == 0;
}

}  // namespace

InverseSearchResult falsify_poly_inverse(const InverseSearchProblem& p, unsigned jobs) {
  if (p.degree < 0) throw std::invalid_argument("degree must be non-negative");
  InverseSearchResult res;
  auto pts = sample_points(p);
  res.samples = pts.size();
  const auto& dom = p.map.domain();
  const auto& cod = p.map.codomain();
  auto rows = parallel_map<MarginRow>(pts.size(), jobs, [&](std::size_t i) {
    MarginRow r;
    r.n = pts[i];
    BasisKey key{{}, pts[i].get_str()};
    r.input_weight = dom->weight(key);
    r.required = 0;
    for (const auto& [k, c] : p.map.apply(key)) r.required += abs(c) * cod->weight(k);
    r.extremal = extremal(p.coeff_bound, p.degree, r.input_weight);
    r.margin = r.extremal == 0 ? Rational(0) : Rational(r.required / r.extremal);
    return r;
  });
  for (const auto& r : rows) {
    if (doubly_exponential(r.n) || r.n == p.n_max) res.table.push_back(r);
    if (r.required > r.extremal && (!res.witness || r.margin > res.witness->margin)) res.witness = r;
  }
  for (long d = 0; d <= p.degree; ++d) {
    DegreeRow row;
    row.degree = d;
    row.min_coeff = 0;
    for (const auto& r : rows) {
      Integer c = ceil(Rational(r.required / geometric(d, r.input_weight)));
      if (c > row.min_coeff) row.min_coeff = c;
    }
    row.survives = row.min_coeff <= p.coeff_bound;
    res.per_degree.push_back(row);
  }
  if (res.witness) {
    res.verdict = Verdict::refuted;
  } else {
    res.verdict = Verdict::inconclusive;
    // constants only ever survive because the search is finite; start at degree 1
    for (const auto& row : res.per_degree)
      if (row.survives && (row.degree >= 1 || p.degree == 0)) {
        std::vector<Rational> coeffs(static_cast<std::size_t>(row.degree) + 1, Rational(row.min_coeff));
        res.surviving = BoundingFunction::polynomial(coeffs);
        break;
      }
  }
  return res;
}

ChainComplex two_term_complex(NaturalWeight degree1, NaturalWeight degree0) {
  auto d = naturals_map(degree1, degree0).named("d");
  return ChainComplex::make(nullptr, RingKind::integers, 0, {naturals(degree0), naturals(degree1)}, {d},
                            "Z[N," + to_string(degree1) + "]->Z[N," + to_string(degree0) + "]");
}

TwoTermReport two_term_obstruction(NaturalWeight degree1, NaturalWeight degree0, const std::string& cls, long degree,
                                   const Integer& coeff_bound, const Integer& n_max, unsigned jobs,
                                   const SampleOptions& opts) {
  TwoTermReport rep;
  rep.degree1 = degree1;
  rep.degree0 = degree0;
  rep.cls = cls;
  BoundingClass klass = BoundingClass::by_name(cls);
  InverseSearchProblem p;
  p.map = naturals_inverse(degree1, degree0);
  p.degree = degree;
  p.coeff_bound = coeff_bound;
  p.n_max = n_max;
  rep.search = falsify_poly_inverse(p, jobs);
  std::string family = "degree <= " + std::to_string(degree) + ", coefficients <= " + coeff_bound.get_str() +
                       ", n <= 2^" + std::to_string(bit_length(n_max) - 1);
  if (rep.search.verdict == Verdict::refuted) {
    rep.verdict = Verdict::refuted;
    rep.conclusion = "no " + cls + "-bounded contraction with witnesses in the searched family (" + family + ")";
    return rep;
  }
  if (!rep.search.surviving || !klass.contains(*rep.search.surviving)) {
    rep.verdict = Verdict::inconclusive;
    rep.conclusion = "no refutation in the searched family (" + family + "), and no surviving witness in " + cls;
    return rep;
  }
  ChainComplex C = two_term_complex(degree1, degree0);
  std::map<int, ModuleMap> parts;
  parts.emplace(0, p.map.named("c"));
  ContractionCertificate cert{GradedMap(C, C, 1, std::move(parts), "c"), rep.search.surviving};
  rep.contraction = verify_contraction(C, cert, opts);
  rep.verdict = rep.contraction->failures.empty() ? rep.contraction->bounded : Verdict::refuted;
  if (exit_code(rep.verdict) == 0)
    rep.conclusion = "contractible with witness " + rep.search.surviving->to_string() + "; obstruction vanishes";
  else
    rep.conclusion = "surviving witness " + rep.search.surviving->to_string() + " not confirmed";
  return rep;
}

}  // namespace bhk
