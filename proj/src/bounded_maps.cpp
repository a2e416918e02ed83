#include "bhk/bounded_maps.hpp"

#include <stdexcept>

#include "bhk/parallel.hpp"

namespace bhk {

namespace {

using Test = std::function<std::optional<std::pair<Rational, Rational>>(const FormalSum&)>;

// Smallest possible group length: L(1) or the lightest letter.
Rational min_length(const WeightedModule& m) {
  if (!m.has_group()) return Rational(0);
  const auto& o = *m.oracle();
  Rational best = o.identity_value();
  for (long s : o.group().letters()) best = std::min(best, o.group().letter_weight(s));
  return best;
}

// L(h) for h != 1, 0 for h = 1.
Rational reduced_length(const WeightedModule& m, const GroupElement& h) {
  if (!m.has_group() || m.oracle()->group().is_identity(h)) return Rational(0);
  return m.oracle()->length(h);
}

FormalSum element_at(const SampleOptions& opts, const Sampler& sampler, std::size_t i) {
  if (i < opts.probes.size()) return opts.probes[i];
  Rng rng(sample_seed(opts.seed, i - opts.probes.size()));
  return sampler(rng);
}

std::size_t total(const SampleOptions& opts, const Sampler& sampler) {
  return opts.probes.size() + (sampler ? opts.trials : 0);
}

// Runs `test` over probes and samples; returns the first violation and sets
// `checked` to the number of elements examined up to it.
std::optional<Counterexample> scan(const SampleOptions& opts, const Sampler& sampler, const Test& test,
                                   std::size_t& checked) {
  std::size_t n = total(opts, sampler);
  auto hit = first_failure<Counterexample>(n, opts.jobs, [&](std::size_t i) -> std::optional<Counterexample> {
    FormalSum a = element_at(opts, sampler, i);
    auto r = test(a);
    if (!r) return std::nullopt;
    return Counterexample{std::move(a), r->first, r->second, i};
  });
  checked = hit ? hit->first + 1 : n;
  if (!hit) return std::nullopt;
  return hit->second;
}

BoundingFunction scale(const Rational& k, const BoundingFunction& f) { return dominate_combination({{k, f}}); }

BoundingFunction dilation(const BoundingFunction& f, long factor) {
  return BoundingFunction::chain({f, BoundingFunction::linear(Rational(factor), Rational(0))});
}

struct Proposal {
  std::optional<BoundingFunction> f_prime;
  bool symbolic = false;
  std::string route, detail;
};

// f' = K f2 from the columns: f(L(g h) + w_Y) <= f(2 L(g)) + f(2 (L'(h) + w_Y)).
Proposal matrix_route(const ModuleMap& m, const BoundingFunction& f, const BoundingClass& cls) {
  Proposal p;
  p.route = "matrix";
  const auto& X = *m.domain();
  const auto& Y = *m.codomain();
  Rational K(0);
  if (!X.has_group()) {
    for (const auto& [x, col] : m.columns()) {
      if (col.is_zero()) continue;
      Rational num = seminorm(Y, col, f), den = f.eval(X.label_weight(x));
      if (den == 0) {
        p.detail = "f vanishes at the weight of generator " + x;
        return p;
      }
      K = std::max(K, Rational(num / den));
    }
    p.f_prime = scale(K, f);
    p.symbolic = true;
    return p;
  }
  BoundingFunction f2 = dilation(f, 2);
  Rational lmin = min_length(X);
  for (const auto& [x, col] : m.columns()) {
    if (col.is_zero()) continue;
    Rational A(0), B(0);
    for (const auto& [k, c] : col) {
      A += abs_value(c);
      B += abs_value(c) * f2.eval(reduced_length(Y, k.g) + Y.label_weight(k.x));
    }
    Rational den = f2.eval(lmin + X.label_weight(x));
    if (den == 0) {
      p.detail = "f(2x) vanishes at the lightest weight of generator " + x;
      return p;
    }
    K = std::max(K, Rational(A + B / den));
  }
  DilationTriple t;
  try {
    t = make_f2_f4_F(cls, f);
  } catch (const std::invalid_argument& e) {
    p.detail = e.what();
    return p;
  }
  p.f_prime = scale(K, t.f2);
  p.symbolic = true;
  return p;
}

Proposal propose(const ModuleMap& m, const BoundingFunction& f, const BoundingClass& cls,
                 const std::optional<BoundingFunction>& dehn, bool dehn_symbolic) {
  Proposal p;
  switch (m.hint()) {
    case ModuleMap::Hint::identity:
      return {f, true, "identity", ""};
    case ModuleMap::Hint::zero:
      return {f, true, "zero", ""};
    case ModuleMap::Hint::left_multiplication: {
      p.route = "left-multiplication";
      DilationTriple t;
      try {
        t = make_f2_f4_F(cls, f);
      } catch (const std::invalid_argument& e) {
        p.detail = e.what();
        return p;
      }
      auto R = WeightedModule::group_ring(m.domain()->oracle());
      Rational k = 2 * seminorm(*R, m.multiplier(), t.F);
      p.f_prime = scale(k, t.F);
      // The bound uses ||.||_1 <= ||.||_F, which needs all weights >= 1.
      p.symbolic = min_length(*m.domain()) >= 1;
      if (!p.symbolic) p.detail = "weights below 1: sampled only";
      return p;
    }
    default:
      break;
  }
  if (dehn) {
    if (m.hint() == ModuleMap::Hint::basis_map) {
      return {dominate_composition(f, *dehn), dehn_symbolic, "basis-map", ""};
    }
    if (m.domain()->ring() == RingKind::integers) {
      if (auto c = corrected_fa_witness(*dehn, f)) return {*c, dehn_symbolic, "dehn", ""};
    }
  }
  if (m.form() == ModuleMap::Form::matrix) return matrix_route(m, f, cls);
  p.route = "none";
  p.detail = "no route yields a witness f' for a rule map without a Dehn witness";
  return p;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::symbolically_verified: return "symbolically-verified";
    case Verdict::sample_verified: return "sample-verified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::symbolically_verified:
    case Verdict::sample_verified: return 0;
    case Verdict::refuted: return 1;
    case Verdict::inconclusive: return 2;
  }
  return 2;
}

Verdict combine(Verdict a, Verdict b) {
  auto rank = [](Verdict v) {
    switch (v) {
      case Verdict::symbolically_verified: return 0;
      case Verdict::sample_verified: return 1;
      case Verdict::inconclusive: return 2;
      case Verdict::refuted: return 3;
    }
    return 2;
  };
  return rank(a) >= rank(b) ? a : b;
}

std::string to_string(Sense s) { return s == Sense::dehn ? "dehn" : "functional-analytic"; }

Verdict BoundednessCertificate::overall() const {
  if (checks.empty()) return Verdict::inconclusive;
  Verdict v = Verdict::symbolically_verified;
  for (const auto& c : checks) v = combine(v, c.verdict);
  return v;
}

Sampler ball_sampler(ModulePtr m, const Rational& cutoff, std::size_t max_terms, long coeff_bound) {
  auto basis = std::make_shared<std::vector<BasisKey>>(m->basis_up_to(cutoff));
  if (basis->empty()) return [](Rng&) { return FormalSum{}; };
  return [basis, max_terms, coeff_bound](Rng& rng) { return random_sum(*basis, rng, max_terms, coeff_bound); };
}

std::optional<Rational> dehn_constant(const ModuleMap& m) {
  if (m.form() != ModuleMap::Form::matrix) return std::nullopt;
  const auto& X = *m.domain();
  const auto& Y = *m.codomain();
  Rational K(0);
  if (!X.has_group()) {
    for (const auto& [x, col] : m.columns()) K = std::max(K, Rational(norm_id(Y, col) / X.label_weight(x)));
    return K;
  }
  Rational lmin = min_length(X);
  for (const auto& [x, col] : m.columns()) {
    if (col.is_zero()) continue;
    Rational A(0), B(0);
    for (const auto& [k, c] : col) {
      A += abs_value(c);
      B += abs_value(c) * (reduced_length(Y, k.g) + Y.label_weight(k.x));
    }
    // sup over t >= lmin of (A t + B) / (t + w_X) is attained at an endpoint.
    Rational den = lmin + X.label_weight(x);
    if (den == 0) return std::nullopt;
    K = std::max({K, A, Rational((A * lmin + B) / den)});
  }
  return K;
}

BoundednessCertificate check_dehn_bounded(const ModuleMap& m, const BoundingFunction& f, const Sampler& sampler,
                                          const SampleOptions& opts) {
  BoundednessCertificate cert;
  cert.map_id = m.name();
  cert.sense = Sense::dehn;
  WitnessCheck w;
  w.f = f;
  auto K = dehn_constant(m);
  bool symbolic = K && dominates_everywhere(f, BoundingFunction::linear(*K, Rational(0))).value_or(false);
  w.route = K ? "matrix-columns" : "samples";
  if (K) w.detail = "column constant K = " + bhk::to_string(*K);
  try {
    w.counterexample = scan(
        opts, sampler,
        [&](const FormalSum& a) -> std::optional<std::pair<Rational, Rational>> {
          Rational lhs = norm_id(*m.codomain(), m.apply(a));
          Rational rhs = f.eval(norm_id(*m.domain(), a));
          if (lhs <= rhs) return std::nullopt;
          return std::make_pair(lhs, rhs);
        },
        w.samples);
  } catch (const std::overflow_error& e) {
    w.verdict = Verdict::inconclusive;
    w.detail = std::string("evaluation overflow: ") + e.what();
    cert.checks.push_back(std::move(w));
    return cert;
  }
  if (w.counterexample) {
    if (symbolic) throw std::logic_error("Dehn column bound contradicted by a sample");
    w.verdict = Verdict::refuted;
  } else {
    w.verdict = symbolic ? Verdict::symbolically_verified : Verdict::sample_verified;
  }
  cert.checks.push_back(std::move(w));
  return cert;
}

WitnessCheck check_fa_pair(const ModuleMap& m, const BoundingFunction& f, const BoundingFunction& f_prime,
                           const Sampler& sampler, const SampleOptions& opts) {
  WitnessCheck w;
  w.f = f;
  w.f_prime = f_prime;
  w.route = "given";
  try {
    w.counterexample = scan(
        opts, sampler,
        [&](const FormalSum& a) -> std::optional<std::pair<Rational, Rational>> {
          Rational lhs = seminorm(*m.codomain(), m.apply(a), f);
          Rational rhs = seminorm(*m.domain(), a, f_prime);
          if (lhs <= rhs) return std::nullopt;
          return std::make_pair(lhs, rhs);
        },
        w.samples);
  } catch (const std::overflow_error& e) {
    w.detail = std::string("evaluation overflow: ") + e.what();
    w.verdict = Verdict::inconclusive;
    return w;
  }
  w.verdict = w.counterexample ? Verdict::refuted : Verdict::sample_verified;
  return w;
}

BoundednessCertificate check_fa_bounded(const ModuleMap& m, const std::vector<BoundingFunction>& schedule,
                                        const BoundingClass& cls, const Sampler& sampler, const SampleOptions& opts,
                                        const std::optional<BoundingFunction>& dehn_witness) {
  if (schedule.empty()) throw std::invalid_argument("empty schedule");
  BoundednessCertificate cert;
  cert.map_id = m.name();
  cert.sense = Sense::functional_analytic;
  cert.class_label = cls.label();
  bool dehn_symbolic = false;
  if (dehn_witness) {
    auto d = check_dehn_bounded(m, *dehn_witness, sampler, opts);
    if (d.overall() == Verdict::refuted) throw std::invalid_argument("supplied Dehn witness is refuted");
    dehn_symbolic = d.overall() == Verdict::symbolically_verified;
  }
  for (const auto& f : schedule) {
    Proposal p = propose(m, f, cls, dehn_witness, dehn_symbolic);
    WitnessCheck w;
    if (p.f_prime) {
      w = check_fa_pair(m, f, *p.f_prime, sampler, opts);
      if (w.counterexample && p.symbolic) throw std::logic_error("route '" + p.route + "' contradicted by a sample");
      if (w.verdict == Verdict::sample_verified && p.symbolic) w.verdict = Verdict::symbolically_verified;
      if (w.verdict != Verdict::refuted && !cls.contains(*p.f_prime)) {
        w.verdict = Verdict::inconclusive;
        p.detail += (p.detail.empty() ? "" : "; ") + std::string("f' lies outside ") + cls.label();
      }
    } else {
      w.f = f;
      w.verdict = Verdict::inconclusive;
    }
    w.route = p.route;
    if (!p.detail.empty()) w.detail = w.detail.empty() ? p.detail : w.detail + "; " + p.detail;
    cert.checks.push_back(std::move(w));
  }
  return cert;
}

std::optional<BoundingFunction> corrected_fa_witness(const BoundingFunction& f, const BoundingFunction& h) {
  if (!h.is_polynomial_like()) return std::nullopt;
  auto c = h.poly_coeffs();
  for (const auto& x : c)
    if (x < 0) return std::nullopt;
  BoundingFunction hof = dominate_composition(h, f);
  if (c.empty() || c[0] == 0) return hof;
  return dominate_combination({{Rational(1), hof}, {c[0], f}});
}

DehnToFaReport dehn_implies_fa(const ModuleMap& m, const BoundingFunction& f, const BoundingFunction& h,
                               const std::vector<BasisKey>& basis, const Sampler& sampler, const SampleOptions& opts) {
  if (NormedRing{m.domain()->ring()}.norm_floor() <= 0 || NormedRing{m.codomain()->ring()}.norm_floor() <= 0)
    throw std::invalid_argument("Dehn to functional-analytic transfer needs a ring with positive norm floor");
  DehnToFaReport rep;
  rep.f = f;
  rep.h = h;
  rep.f_prime = dominate_composition(h, f);
  rep.corrected = corrected_fa_witness(f, h);
  BoundingFunction hof = BoundingFunction::chain({h, f});
  const auto& X = *m.domain();
  const auto& Y = *m.codomain();

  for (const auto& k : basis) {
    FormalSum img = m.apply(k);
    Rational w = X.weight(k);
    if (norm_id(Y, img) > f.eval(w)) {
      ++rep.dehn_violations;
      continue;
    }
    ++rep.basis_checked;
    Rational lhs = seminorm(Y, img, h), rhs = hof.eval(w);
    if (lhs > rhs) {
      if (!rep.first_claim1) rep.first_claim1 = Counterexample{FormalSum::single(k), lhs, rhs, rep.basis_checked - 1};
      ++rep.claim1_basis_violations;
    }
  }

  struct Outcome {
    bool dehn_ok = true, c1 = true, c2 = true, corr = true;
    FormalSum a;
    Rational l, r1, r2;
  };
  std::size_t n = total(opts, sampler);
  auto results = parallel_map<Outcome>(n, opts.jobs, [&](std::size_t i) {
    Outcome o;
    o.a = element_at(opts, sampler, i);
    FormalSum img = m.apply(o.a);
    Rational na = norm_id(X, o.a);
    if (norm_id(Y, img) > f.eval(na)) {
      o.dehn_ok = false;
      return o;
    }
    o.l = seminorm(Y, img, h);
    o.r1 = hof.eval(na);
    o.r2 = seminorm(X, o.a, hof);
    o.c1 = o.l <= o.r1;
    o.c2 = o.l <= o.r2;
    if (rep.corrected) o.corr = o.l <= seminorm(X, o.a, *rep.corrected);
    return o;
  });
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& o = results[i];
    if (!o.dehn_ok) {
      ++rep.dehn_violations;
      continue;
    }
    ++rep.elements_checked;
    if (!o.c1) {
      ++rep.claim1_element_violations;
      if (!rep.first_claim1) rep.first_claim1 = Counterexample{o.a, o.l, o.r1, i};
    }
    if (!o.c2) {
      ++rep.claim2_violations;
      if (!rep.first_claim2) rep.first_claim2 = Counterexample{o.a, o.l, o.r2, i};
    }
    if (!o.corr) ++rep.corrected_violations;
  }
  return rep;
}

MatrixBoundConstants matrix_bound_constants(const ModuleMap& hm, const BoundingClass& cls, const BoundingFunction& f) {
  if (hm.form() != ModuleMap::Form::matrix || !hm.codomain()->finite_labels())
    throw std::invalid_argument("matrix bound constants need finitely generated free modules");
  const auto& X = *hm.domain();
  const auto& Y = *hm.codomain();
  if (!X.has_group()) throw std::invalid_argument("matrix bound constants need R[G]-modules");
  for (const auto& x : X.labels())
    if (X.label_weight(x) < 1) throw std::invalid_argument("generator weight below 1: " + x);

  MatrixBoundConstants mc;
  DilationTriple t = make_f2_f4_F(cls, f);
  mc.f2 = t.f2;
  mc.f4 = t.f4;
  mc.codomain_rank = Y.rank();
  auto R = WeightedModule::group_ring(X.oracle());
  mc.C_f = Rational(0);
  mc.H_f4 = Rational(0);
  mc.C = Rational(0);
  for (const auto& y : Y.labels()) mc.C_f = std::max(mc.C_f, seminorm(Y, FormalSum::single(Y.generator(y)), mc.f2));
  for (const auto& x : X.labels()) {
    mc.C = std::max(mc.C, Rational(1 / X.label_weight(x)));
    for (const auto& y : Y.labels()) mc.H_f4 = std::max(mc.H_f4, seminorm(*R, hm.entry(x, y), mc.f4));
  }
  mc.bound = 2 * mc.C_f * mc.H_f4 * mc.C;

  BoundingFunction fh = f;
  Rational lmin = min_length(X);
  if (f.eval(2 * lmin) < 1) {
    fh = dominate_combination({{Rational(1), f}, {Rational(1), BoundingFunction::constant(Rational(1))}});
    mc.surrogate = true;
  }
  BoundingFunction e2 = dilation(fh, 2), e4 = dilation(fh, 4);
  Rational Cf(0), H(0);
  for (const auto& y : Y.labels()) Cf = std::max(Cf, seminorm(Y, FormalSum::single(Y.generator(y)), e2));
  for (const auto& x : X.labels())
    for (const auto& y : Y.labels()) H = std::max(H, seminorm(*R, hm.entry(x, y), e4));
  mc.corrected_bound = 4 * Rational(static_cast<long>(mc.codomain_rank)) * Cf * H;
  mc.corrected_f4 = e4;
  return mc;
}

MatrixBoundCheck check_matrix_bound(const ModuleMap& hm, const BoundingFunction& f, const MatrixBoundConstants& mc,
                                    const Sampler& sampler, const SampleOptions& opts) {
  MatrixBoundCheck out;
  std::size_t n = total(opts, sampler);
  struct Row {
    FormalSum a;
    Rational lhs, literal, corrected;
  };
  auto rows = parallel_map<Row>(n, opts.jobs, [&](std::size_t i) {
    Row r;
    r.a = element_at(opts, sampler, i);
    r.lhs = seminorm(*hm.codomain(), hm.apply(r.a), f);
    r.literal = mc.bound * seminorm(*hm.domain(), r.a, mc.f4);
    r.corrected = mc.corrected_bound * seminorm(*hm.domain(), r.a, mc.corrected_f4);
    return r;
  });
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    ++out.checked;
    if (r.lhs > r.literal) {
      ++out.literal_violations;
      if (!out.first_literal) out.first_literal = Counterexample{r.a, r.lhs, r.literal, i};
    }
    if (r.lhs > r.corrected) ++out.corrected_violations;
  }
  return out;
}

AdmissibilityReport verify_admissible(const ModuleMap& q, const AdmissibilityCertificate& cert,
                                      const Sampler& codomain_sampler, const SampleOptions& opts,
                                      const Rational& basis_cutoff) {
  const ModuleMap& s = cert.section;
  if (!s.domain()->same_as(*q.codomain()) || !s.codomain()->same_as(*q.domain()))
    throw std::invalid_argument("section has the wrong shape");
  AdmissibilityReport rep;
  const auto& Y = *q.codomain();
  const auto& X = *q.domain();
  SampleOptions o = opts;
  if (Y.finite_labels() && s.form() == ModuleMap::Form::matrix && q.form() == ModuleMap::Form::matrix) {
    for (const auto& y : Y.labels()) o.probes.insert(o.probes.begin(), FormalSum::single(Y.generator(y)));
  } else {
    auto ball = Y.basis_up_to(basis_cutoff);
    for (auto it = ball.rbegin(); it != ball.rend(); ++it) o.probes.insert(o.probes.begin(), FormalSum::single(*it));
  }
  std::size_t checked = 0;
  rep.identity_failure = scan(
      o, codomain_sampler,
      [&](const FormalSum& y) -> std::optional<std::pair<Rational, Rational>> {
        FormalSum back = q.apply(s.apply(y));
        if (back == y) return std::nullopt;
        return std::make_pair(norm_id(Y, back - y), Rational(0));
      },
      checked);
  rep.checked = checked;
  if (rep.identity_failure) {
    rep.identity_exact = false;
    rep.verdict = Verdict::refuted;
    return rep;
  }
  auto K = dehn_constant(s);
  bool symbolic = K && *K <= cert.bound.a && cert.bound.b >= 0;
  rep.bound_failure = scan(
      o, codomain_sampler,
      [&](const FormalSum& y) -> std::optional<std::pair<Rational, Rational>> {
        Rational lhs = norm_id(X, s.apply(y));
        Rational rhs = cert.bound.a * norm_id(Y, y) + cert.bound.b;
        if (lhs <= rhs) return std::nullopt;
        return std::make_pair(lhs, rhs);
      },
      checked);
  if (rep.bound_failure) {
    if (symbolic) throw std::logic_error("section column bound contradicted by a sample");
    rep.verdict = Verdict::refuted;
  } else {
    rep.verdict = symbolic ? Verdict::symbolically_verified : Verdict::sample_verified;
  }
  return rep;
}

bool ProjectiveReport::ok() const {
  auto good = [](Verdict v) { return exit_code(v) == 0; };
  return idempotent && section_idempotent && psp && good(p_linear) && good(s_linear);
}

ProjectiveReport verify_projective(const ProjectiveModule& pm, const Sampler& sampler, const SampleOptions& opts) {
  ProjectiveReport rep;
  const ModuleMap& p = pm.p;
  const ModuleMap& s = pm.s;
  rep.idempotent = p.after(p).equals(p);
  ModuleMap sp = s.after(p);
  std::size_t checked = 0;
  rep.section_idempotent = !scan(
      opts, sampler,
      [&](const FormalSum& a) -> std::optional<std::pair<Rational, Rational>> {
        FormalSum once = sp.apply(a);
        if (sp.apply(once) == once) return std::nullopt;
        return std::make_pair(Rational(1), Rational(0));
      },
      checked);
  rep.psp = !scan(
      opts, sampler,
      [&](const FormalSum& a) -> std::optional<std::pair<Rational, Rational>> {
        if (p.apply(s.apply(p.apply(a))) == p.apply(a)) return std::nullopt;
        return std::make_pair(Rational(1), Rational(0));
      },
      checked);
  auto linear_verdict = [&](const ModuleMap& m) {
    auto K = dehn_constant(m);
    if (!K) return Verdict::inconclusive;
    return check_dehn_bounded(m, BoundingFunction::linear(*K, Rational(0)), sampler, opts).overall();
  };
  rep.p_linear = linear_verdict(p);
  rep.s_linear = linear_verdict(s);
  return rep;
}

}  // namespace bhk
