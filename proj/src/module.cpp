#include "bhk/module.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace bhk {

std::string to_string(RingKind kind) { return kind == RingKind::integers ? "Z" : "Q"; }

Rational NormedRing::sample(Rng& rng, long bound) const {
  Rational num(rng.uniform(-bound, bound));
  if (kind == RingKind::integers) return num;
  return num / Rational(rng.uniform(1, bound));
}

RingAxiomReport check_normed_ring(const NormedRing& ring, std::size_t samples, std::uint64_t seed) {
  RingAxiomReport rep;
  Rng rng(seed);
  if (ring.norm(Rational(1)) != 1) rep.violations.push_back("||1|| != 1");
  for (std::size_t i = 0; i < samples; ++i) {
    Rational a = ring.sample(rng, 50), b = ring.sample(rng, 50);
    ++rep.checked;
    if (ring.norm(a * b) > ring.norm(a) * ring.norm(b))
      rep.violations.push_back("submultiplicativity at " + to_string(a) + ", " + to_string(b));
    if (a != 0 && ring.norm(a) < ring.norm_floor()) rep.violations.push_back("norm below floor at " + to_string(a));
  }
  return rep;
}

FormalSum::FormalSum(std::initializer_list<std::pair<const BasisKey, Rational>> terms) {
  for (const auto& [k, c] : terms) add(k, c);
}

FormalSum FormalSum::single(BasisKey key, Rational c) {
  FormalSum s;
  s.add(key, c);
  return s;
}

void FormalSum::add(const BasisKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(key, c);
  if (inserted) return;
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

Rational FormalSum::coeff(const BasisKey& key) const {
  auto it = terms_.find(key);
  return it == terms_.end() ? Rational(0) : it->second;
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
  FormalSum out = *this;
  out += o;
  return out;
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

FormalSum FormalSum::operator-(const FormalSum& o) const {
  FormalSum out = *this;
  for (const auto& [k, c] : o.terms_) out.add(k, -c);
  return out;
}

FormalSum FormalSum::operator-() const { return scaled(Rational(-1)); }

FormalSum FormalSum::scaled(const Rational& r) const {
  FormalSum out;
  if (r == 0) return out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * r);
  return out;
}

Rational FormalSum::l1_norm() const {
  Rational s(0);
  for (const auto& [_, c] : terms_) s += abs_value(c);
  return s;
}

ModulePtr WeightedModule::free(OraclePtr oracle, std::vector<std::pair<std::string, Rational>> labels, std::string name,
                               RingKind ring) {
  if (!oracle) throw std::invalid_argument("free R[G]-module needs a length oracle");
  std::shared_ptr<WeightedModule> m(new WeightedModule());
  m->name_ = std::move(name);
  m->ring_ = ring;
  m->oracle_ = std::move(oracle);
  for (auto& [x, w] : labels) {
    if (w < 0) throw std::invalid_argument("label weights must be non-negative");
    if (!m->finite_weights_.emplace(x, w).second) throw std::invalid_argument("duplicate label '" + x + "'");
    m->labels_.push_back(x);
  }
  for (const auto& [x, w] : m->finite_weights_)
    if (m->oracle_->identity_value() + w < 1) throw std::invalid_argument("basis weights must be >= 1");
  return m;
}

ModulePtr WeightedModule::plain(std::vector<std::pair<std::string, Rational>> labels, std::string name, RingKind ring) {
  std::shared_ptr<WeightedModule> m(new WeightedModule());
  m->name_ = std::move(name);
  m->ring_ = ring;
  for (auto& [x, w] : labels) {
    if (w < 1) throw std::invalid_argument("basis weights must be >= 1 (label '" + x + "')");
    if (!m->finite_weights_.emplace(x, w).second) throw std::invalid_argument("duplicate label '" + x + "'");
    m->labels_.push_back(x);
  }
  return m;
}

ModulePtr WeightedModule::lazy_plain(LabelWeight weight, LabelEnumerator enumerate,
                                     std::function<bool(const std::string&)> member, std::string name, RingKind ring) {
  std::shared_ptr<WeightedModule> m(new WeightedModule());
  m->name_ = std::move(name);
  m->ring_ = ring;
  m->finite_ = false;
  m->lazy_weight_ = std::move(weight);
  m->lazy_enum_ = std::move(enumerate);
  m->lazy_member_ = std::move(member);
  return m;
}

ModulePtr WeightedModule::zero(OraclePtr oracle, RingKind ring) {
  std::shared_ptr<WeightedModule> m(new WeightedModule());
  m->name_ = "0";
  m->ring_ = ring;
  m->oracle_ = std::move(oracle);
  return m;
}

ModulePtr WeightedModule::group_ring(OraclePtr oracle, RingKind ring) {
  return free(std::move(oracle), {{"", Rational(0)}}, "R[G]", ring);
}

ModulePtr WeightedModule::with_weight_override(ModulePtr base,
                                               std::function<std::optional<Rational>(const BasisKey&)> override) {
  auto m = std::shared_ptr<WeightedModule>(new WeightedModule(*base));
  m->override_ = std::move(override);
  m->name_ = base->name_ + "*";
  return m;
}

const std::vector<std::string>& WeightedModule::labels() const {
  if (!finite_) throw std::logic_error("module " + name_ + " has an infinite label set");
  return labels_;
}

std::size_t WeightedModule::rank() const { return labels().size(); }

bool WeightedModule::has_label(const std::string& x) const {
  if (finite_) return finite_weights_.count(x) > 0;
  return lazy_member_(x);
}

Rational WeightedModule::label_weight(const std::string& x) const {
  if (finite_) {
    auto it = finite_weights_.find(x);
    if (it == finite_weights_.end()) throw std::invalid_argument("unknown label '" + x + "' in module " + name_);
    return it->second;
  }
  if (!lazy_member_(x)) throw std::invalid_argument("unknown label '" + x + "' in module " + name_);
  return lazy_weight_(x);
}

Rational WeightedModule::weight(const BasisKey& key) const {
  if (override_)
    if (auto w = override_(key)) return *w;
  if (!oracle_) {
    if (!key.g.empty()) throw std::invalid_argument("plain module " + name_ + " has no group coordinate");
    return label_weight(key.x);
  }
  return oracle_->length(key.g) + label_weight(key.x);
}

BasisKey WeightedModule::generator(const std::string& x) const {
  if (!has_label(x)) throw std::invalid_argument("unknown label '" + x + "' in module " + name_);
  return BasisKey{oracle_ ? oracle_->group().identity() : GroupElement{}, x};
}

void WeightedModule::validate(const BasisKey& key) const {
  if (!has_label(key.x)) throw std::invalid_argument("unknown label '" + key.x + "' in module " + name_);
  if (oracle_)
    oracle_->group().validate(key.g);
  else if (!key.g.empty())
    throw std::invalid_argument("plain module " + name_ + " has no group coordinate");
}

void WeightedModule::validate(const FormalSum& a) const {
  for (const auto& [k, c] : a) {
    validate(k);
    if (ring_ == RingKind::integers && !is_integer(c))
      throw std::invalid_argument("non-integral coefficient " + to_string(c) + " in a Z-module");
  }
}

std::vector<std::string> WeightedModule::labels_up_to(const Rational& cutoff) const {
  if (finite_) {
    std::vector<std::string> out;
    for (const auto& x : labels_)
      if (finite_weights_.at(x) <= cutoff) out.push_back(x);
    return out;
  }
  return lazy_enum_(cutoff);
}

std::vector<BasisKey> WeightedModule::basis_up_to(const Rational& cutoff) const {
  std::vector<BasisKey> out;
  auto labels = labels_up_to(cutoff);
  if (!oracle_) {
    for (const auto& x : labels) {
      BasisKey k{{}, x};
      if (weight(k) <= cutoff) out.push_back(std::move(k));
    }
    return out;
  }
  for (const auto& x : labels) {
    Rational room = cutoff - label_weight(x);
    if (room < 0) continue;
    auto ball = room < oracle_->identity_value() ? std::vector<GroupElement>{oracle_->group().identity()}
                                                 : oracle_->ball(std::min(room, oracle_->truncation_radius()));
    for (const auto& g : ball) {
      BasisKey k{g, x};
      if (weight(k) <= cutoff) out.push_back(std::move(k));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool WeightedModule::same_as(const WeightedModule& other) const {
  if (this == &other) return true;
  if (!finite_ || !other.finite_ || override_ || other.override_) return false;
  return oracle_ == other.oracle_ && finite_weights_ == other.finite_weights_ && ring_ == other.ring_;
}

Rational seminorm(const WeightedModule& m, const FormalSum& a, const BoundingFunction& f) {
  Rational s(0);
  for (const auto& [k, c] : a) s += abs_value(c) * f.eval(m.weight(k));
  return s;
}

FormalSum group_ring_element(std::initializer_list<std::pair<GroupElement, Rational>> terms) {
  FormalSum out;
  for (const auto& [g, c] : terms) out.add(BasisKey{g, ""}, c);
  return out;
}

FormalSum scalar_multiply(const GroupModel& group, const FormalSum& r, const FormalSum& b) {
  FormalSum out;
  for (const auto& [rk, rc] : r)
    for (const auto& [bk, bc] : b) out.add(BasisKey{group.multiply(rk.g, bk.g), bk.x}, rc * bc);
  return out;
}

FormalSum scalar_multiply(const WeightedGSet& gset, const FormalSum& r, const FormalSum& b) {
  FormalSum out;
  for (const auto& [rk, rc] : r)
    for (const auto& [bk, bc] : b) {
      GSetPoint p = gset.action(rk.g, GSetPoint{bk.g, bk.x});
      out.add(BasisKey{p.g, p.x}, rc * bc);
    }
  return out;
}

std::string tag_label(std::size_t index, const std::string& x) { return std::to_string(index) + "/" + x; }

std::pair<std::size_t, std::string> untag_label(const std::string& tagged) {
  auto slash = tagged.find('/');
  if (slash == std::string::npos || slash == 0) throw std::invalid_argument("untagged label '" + tagged + "'");
  for (std::size_t i = 0; i < slash; ++i)
    if (tagged[i] < '0' || tagged[i] > '9') throw std::invalid_argument("bad tag in '" + tagged + "'");
  return {std::stoul(tagged.substr(0, slash)), tagged.substr(slash + 1)};
}

FormalSum inject(std::size_t index, const FormalSum& a) {
  FormalSum out;
  for (const auto& [k, c] : a) out.add(BasisKey{k.g, tag_label(index, k.x)}, c);
  return out;
}

FormalSum project(std::size_t index, const FormalSum& a) {
  FormalSum out;
  for (const auto& [k, c] : a) {
    auto [i, x] = untag_label(k.x);
    if (i == index) out.add(BasisKey{k.g, x}, c);
  }
  return out;
}

ModulePtr direct_sum(const std::vector<ModulePtr>& mods, std::string name) {
  if (mods.empty()) return WeightedModule::zero();
  OraclePtr oracle = mods.front()->oracle();
  RingKind ring = mods.front()->ring();
  for (const auto& m : mods) {
    if (m->oracle() != oracle) throw std::invalid_argument("direct sum of modules over different groups");
    if (m->ring() != ring) throw std::invalid_argument("direct sum of modules over different rings");
  }
  if (name.empty()) {
    for (std::size_t i = 0; i < mods.size(); ++i) name += (i ? "+" : "") + mods[i]->name();
  }
  bool all_finite = std::all_of(mods.begin(), mods.end(), [](const ModulePtr& m) { return m->finite_labels(); });
  if (all_finite) {
    std::vector<std::pair<std::string, Rational>> labels;
    for (std::size_t i = 0; i < mods.size(); ++i)
      for (const auto& x : mods[i]->labels()) labels.emplace_back(tag_label(i, x), mods[i]->label_weight(x));
    if (oracle) return WeightedModule::free(oracle, std::move(labels), name, ring);
    return WeightedModule::plain(std::move(labels), name, ring);
  }
  auto shared = std::make_shared<std::vector<ModulePtr>>(mods);
  auto weight = [shared](const std::string& t) -> Rational {
    auto [i, x] = untag_label(t);
    return shared->at(i)->label_weight(x);
  };
  auto member = [shared](const std::string& t) {
    auto slash = t.find('/');
    if (slash == std::string::npos) return false;
    try {
      auto [i, x] = untag_label(t);
      return i < shared->size() && shared->at(i)->has_label(x);
    } catch (const std::invalid_argument&) {
      return false;
    }
  };
  auto enumerate = [shared](const Rational& c) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < shared->size(); ++i)
      for (const auto& x : shared->at(i)->labels_up_to(c)) out.push_back(tag_label(i, x));
    return out;
  };
  if (oracle) throw std::invalid_argument("direct sums of lazily enumerated R[G]-modules are not supported");
  return WeightedModule::lazy_plain(weight, enumerate, member, name, ring);
}

namespace {

FormalSum translate(const GroupModel& G, const GroupElement& g, const FormalSum& a) {
  FormalSum out;
  for (const auto& [k, c] : a) out.add(BasisKey{G.multiply(g, k.g), k.x}, c);
  return out;
}

Rational max_term_weight(const WeightedModule& m, const FormalSum& a) {
  Rational w(0);
  for (const auto& [k, _] : a) w = std::max(w, m.weight(k));
  return w;
}

}  // namespace

InducedWeight induced_weight(const QuotientModule& q, const FormalSum& rep) {
  const auto& M = *q.ambient;
  InducedWeight best{norm_id(M, rep), rep, false};
  if (q.relations.empty()) return best;

  constexpr std::size_t kMaxCandidates = 12;
  std::vector<FormalSum> candidates;
  std::set<FormalSum::Map> seen;
  bool truncated = false;
  auto consider = [&](FormalSum r) {
    if (r.is_zero() || max_term_weight(M, r) > q.search_radius) {
      truncated = true;
      return;
    }
    if (!seen.insert(r.terms()).second) return;
    if (candidates.size() >= kMaxCandidates) {
      truncated = true;
      return;
    }
    candidates.push_back(std::move(r));
  };
  for (const auto& rel : q.relations) {
    if (!M.has_group()) {
      consider(rel);
      continue;
    }
    const auto& G = M.oracle()->group();
    auto radius = std::min(q.search_radius, M.oracle()->truncation_radius());
    for (const auto& g : M.oracle()->ball(radius)) consider(translate(G, g, rel));
  }
  if (M.has_group()) truncated = true;  // translates by heavier elements are never tried

  // Depth-first over coefficient vectors with sum |c_i| <= budget.
  std::vector<long> coeffs(candidates.size(), 0);
  bool hit_budget_edge = false;
  std::function<void(std::size_t, long, const FormalSum&)> dfs = [&](std::size_t i, long left, const FormalSum& cur) {
    if (i == candidates.size()) {
      Rational v = norm_id(M, cur);
      if (v < best.value) {
        best.value = v;
        best.representative = cur;
        long used = 0;
        for (long c : coeffs) used += std::labs(c);
        hit_budget_edge = used == q.coefficient_budget;
      }
      return;
    }
    for (long c = -left; c <= left; ++c) {
      coeffs[i] = c;
      dfs(i + 1, left - std::labs(c), cur + candidates[i].scaled(Rational(c)));
    }
    coeffs[i] = 0;
  };
  dfs(0, q.coefficient_budget, rep);
  // One relation: the norm is convex in c, so an optimum strictly inside the
  // budget interval is global.
  best.upper_bound_only = truncated || candidates.size() > 1 || hit_budget_edge;
  return best;
}

QuotientModule direct_sum(const std::vector<QuotientModule>& qs) {
  QuotientModule out;
  std::vector<ModulePtr> ambients;
  for (const auto& q : qs) ambients.push_back(q.ambient);
  out.ambient = direct_sum(ambients);
  out.search_radius = Rational(0);
  out.coefficient_budget = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    for (const auto& r : qs[i].relations) out.relations.push_back(inject(i, r));
    out.search_radius = std::max(out.search_radius, qs[i].search_radius);
    out.coefficient_budget = std::max(out.coefficient_budget, qs[i].coefficient_budget);
  }
  return out;
}

FormalSum random_sum(const std::vector<BasisKey>& basis, Rng& rng, std::size_t max_terms, long coeff_bound) {
  FormalSum out;
  if (basis.empty() || coeff_bound <= 0) return out;
  std::size_t n = 1 + rng.below(max_terms);
  for (std::size_t i = 0; i < n; ++i) {
    long c = rng.uniform(1, coeff_bound) * (rng.coin() ? 1 : -1);
    out.add(rng.pick(basis), Rational(c));
  }
  return out;
}

WeightedRingReport check_weighted_ring_axioms(const WeightedModule& m, std::size_t samples, std::uint64_t seed,
                                              const Rational& radius) {
  if (!m.has_group()) throw std::invalid_argument("weighted ring axioms need an R[G]-module");
  WeightedRingReport rep;
  const auto& oracle = *m.oracle();
  const auto& G = oracle.group();
  auto ring_basis = oracle.ball(radius);
  auto mod_basis = m.basis_up_to(radius);
  auto ring_w = [&](const FormalSum& r) -> Rational {
    Rational s(0);
    for (const auto& [k, c] : r) s += abs_value(c) * oracle.length(k.g);
    return s;
  };
  auto check = [&](const FormalSum& r, const FormalSum& x) {
    FormalSum rx = scalar_multiply(G, r, x);
    ++rep.checked;
    if (rx.l1_norm() > r.l1_norm() * x.l1_norm()) rep.violations.push_back("l1 submultiplicativity");
    Rational lhs = norm_id(m, rx);
    Rational rhs = ring_w(r) * x.l1_norm() + r.l1_norm() * norm_id(m, x);
    if (lhs > rhs)
      rep.violations.push_back("weighted bound: " + to_string(lhs) + " > " + to_string(rhs) + " for r=" +
                               std::to_string(r.size()) + " terms");
  };
  for (const auto& g : ring_basis)
    for (const auto& k : mod_basis) check(FormalSum::single(BasisKey{g, ""}), FormalSum::single(k));
  Rng rng(seed);
  std::vector<BasisKey> ring_keys;
  for (const auto& g : ring_basis) ring_keys.push_back(BasisKey{g, ""});
  for (std::size_t i = 0; i < samples; ++i) check(random_sum(ring_keys, rng, 3, 4), random_sum(mod_basis, rng, 3, 4));
  return rep;
}

namespace {

bool is_positive_decimal(const std::string& s) {
  if (s.empty() || s[0] == '0') return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

constexpr long kMaxEnumeratedNaturals = 1L << 20;

}  // namespace

Integer log_weight_extent(const Rational& cutoff) {
  Integer c = floor(cutoff);
  if (c < 1) return Integer(0);
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 2, c.get_ui());
  return out - 1;
}

ModulePtr naturals_identity_weight(std::string name) {
  auto weight = [](const std::string& x) -> Rational { return Rational(Integer(x, 10)); };
  auto enumerate = [](const Rational& c) {
    Integer top = floor(c);
    if (top > kMaxEnumeratedNaturals) throw std::length_error("basis enumeration beyond 2^20 elements");
    std::vector<std::string> out;
    for (long n = 1; n <= top.get_si(); ++n) out.push_back(std::to_string(n));
    return out;
  };
  return WeightedModule::lazy_plain(weight, enumerate, is_positive_decimal, std::move(name));
}

ModulePtr naturals_log_weight(std::string name) {
  auto weight = [](const std::string& x) -> Rational { return Rational(Integer(bit_length(Integer(x, 10)))); };
  auto enumerate = [](const Rational& c) {
    Integer top = log_weight_extent(c);
    if (top > kMaxEnumeratedNaturals) throw std::length_error("basis enumeration beyond 2^20 elements");
    std::vector<std::string> out;
    for (long n = 1; n <= top.get_si(); ++n) out.push_back(std::to_string(n));
    return out;
  };
  return WeightedModule::lazy_plain(weight, enumerate, is_positive_decimal, std::move(name));
}

std::string key_to_string(const WeightedModule& m, const BasisKey& key) {
  if (!m.has_group()) return key.x;
  return "(" + m.oracle()->group().to_string(key.g) + "," + key.x + ")";
}

}  // namespace bhk
