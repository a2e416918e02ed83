#include "bhk/group.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <set>
#include <sstream>

namespace bhk {

namespace {

long letter_key(long l) { return 2 * (std::labs(l) - 1) + (l < 0 ? 1 : 0); }

bool shortlex_less(const Word& a, const Word& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return letter_key(a[i]) < letter_key(b[i]);
  return false;
}

Word free_reduce(const Word& w) {
  Word out;
  for (long l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

Word invert_word(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (auto& l : out) l = -l;
  return out;
}

std::vector<Rational> default_weights(std::size_t n, std::vector<Rational> weights) {
  if (weights.empty()) weights.assign(n, Rational(1));
  if (weights.size() != n) throw std::invalid_argument("need one weight per generator");
  for (const auto& w : weights)
    if (w <= 0) throw std::invalid_argument("generator weights must be positive");
  return weights;
}

}  // namespace

class RewritingSystem {
 public:
  struct Rule {
    Word lhs, rhs;
    std::size_t id;
  };

  Word reduce(Word w) const {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& r : rules_) {
        auto it = std::search(w.begin(), w.end(), r.lhs.begin(), r.lhs.end());
        if (it == w.end()) continue;
        Word next(w.begin(), it);
        next.insert(next.end(), r.rhs.begin(), r.rhs.end());
        next.insert(next.end(), it + static_cast<long>(r.lhs.size()), w.end());
        w = std::move(next);
        changed = true;
        break;
      }
    }
    return w;
  }

  std::size_t size() const { return rules_.size(); }

  static std::shared_ptr<RewritingSystem> complete(std::size_t n, const std::vector<Word>& relators, std::size_t limit) {
    auto sys = std::make_shared<RewritingSystem>();
    std::deque<std::pair<Word, Word>> pending;
    for (long g = 1; g <= static_cast<long>(n); ++g) {
      pending.push_back({{g, -g}, {}});
      pending.push_back({{-g, g}, {}});
    }
    for (const auto& r : relators) pending.push_back({r, {}});
    std::set<std::pair<std::size_t, std::size_t>> checked;
    std::size_t next_id = 0;
    constexpr std::size_t kMaxRuleLength = 64;

    for (;;) {
      while (!pending.empty()) {
        auto [a, b] = pending.front();
        pending.pop_front();
        a = sys->reduce(a);
        b = sys->reduce(b);
        if (a == b) continue;
        if (shortlex_less(a, b)) std::swap(a, b);
        if (a.size() > kMaxRuleLength) return nullptr;
        Rule fresh{a, b, next_id++};
        std::vector<Rule> kept;
        for (auto& r : sys->rules_) {
          if (std::search(r.lhs.begin(), r.lhs.end(), a.begin(), a.end()) != r.lhs.end()) {
            pending.push_back({r.lhs, r.rhs});
            continue;
          }
          kept.push_back(r);
        }
        kept.push_back(fresh);
        sys->rules_ = std::move(kept);
        for (auto& r : sys->rules_) r.rhs = sys->reduce(r.rhs);
        if (sys->rules_.size() > limit) return nullptr;
      }
      std::vector<std::pair<Word, Word>> critical;
      for (const auto& ri : sys->rules_) {
        for (const auto& rj : sys->rules_) {
          if (!checked.insert({ri.id, rj.id}).second) continue;
          std::size_t m = std::min(ri.lhs.size(), rj.lhs.size());
          // Proper overlaps only; containments are removed by interreduction.
          for (std::size_t k = 1; k < m; ++k) {
            if (!std::equal(ri.lhs.end() - static_cast<long>(k), ri.lhs.end(), rj.lhs.begin())) continue;
            Word p1 = ri.rhs;
            p1.insert(p1.end(), rj.lhs.begin() + static_cast<long>(k), rj.lhs.end());
            Word p2(ri.lhs.begin(), ri.lhs.end() - static_cast<long>(k));
            p2.insert(p2.end(), rj.rhs.begin(), rj.rhs.end());
            critical.emplace_back(std::move(p1), std::move(p2));
          }
        }
      }
      if (critical.empty()) return sys;
      for (auto& c : critical) pending.push_back(std::move(c));
    }
  }

 private:
  std::vector<Rule> rules_;
};

std::string to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::Zn: return "Zn";
    case GroupKind::free: return "free";
    case GroupKind::presentation: return "presentation";
  }
  return "?";
}

GroupPtr GroupModel::Zn(std::size_t n, std::vector<Rational> weights) {
  std::shared_ptr<GroupModel> g(new GroupModel());
  g->kind_ = GroupKind::Zn;
  g->weights_ = default_weights(n, std::move(weights));
  for (std::size_t i = 0; i < n; ++i) g->names_.push_back("e" + std::to_string(i + 1));
  return g;
}

GroupPtr GroupModel::free_group(std::size_t n, std::vector<Rational> weights) {
  std::shared_ptr<GroupModel> g(new GroupModel());
  g->kind_ = GroupKind::free;
  g->weights_ = default_weights(n, std::move(weights));
  for (std::size_t i = 0; i < n; ++i) g->names_.push_back(i < 26 ? std::string(1, static_cast<char>('a' + i)) : "g" + std::to_string(i + 1));
  return g;
}

GroupPtr GroupModel::presentation(std::vector<std::string> generator_names, std::vector<Rational> weights,
                                  std::vector<Word> relators, std::size_t rule_limit) {
  std::shared_ptr<GroupModel> g(new GroupModel());
  g->kind_ = GroupKind::presentation;
  g->weights_ = default_weights(generator_names.size(), std::move(weights));
  g->names_ = std::move(generator_names);
  long n = static_cast<long>(g->names_.size());
  for (const auto& r : relators)
    for (long l : r)
      if (l == 0 || std::labs(l) > n) throw std::invalid_argument("relator letter out of range");
  g->relators_ = std::move(relators);
  auto rws = RewritingSystem::complete(g->names_.size(), g->relators_, rule_limit);
  if (!rws)
    throw std::runtime_error("Knuth-Bendix completion did not converge within " + std::to_string(rule_limit) +
                             " rules; word problem left undecided");
  g->rws_ = rws;
  return g;
}

const Rational& GroupModel::letter_weight(long letter) const {
  if (letter == 0 || static_cast<std::size_t>(std::labs(letter)) > weights_.size())
    throw std::invalid_argument("letter out of range");
  return weights_[static_cast<std::size_t>(std::labs(letter)) - 1];
}

GroupElement GroupModel::identity() const {
  if (kind_ == GroupKind::Zn) return GroupElement(weights_.size(), 0);
  return {};
}

bool GroupModel::is_identity(const GroupElement& g) const {
  if (kind_ == GroupKind::Zn) return std::all_of(g.begin(), g.end(), [](long v) { return v == 0; });
  return g.empty();
}

GroupElement GroupModel::multiply(const GroupElement& a, const GroupElement& b) const {
  if (kind_ == GroupKind::Zn) {
    if (a.size() != rank() || b.size() != rank()) throw std::invalid_argument("Zn element of wrong dimension");
    GroupElement out(rank());
    for (std::size_t i = 0; i < rank(); ++i) out[i] = a[i] + b[i];
    return out;
  }
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  if (kind_ == GroupKind::free) return free_reduce(w);
  return rws_->reduce(w);
}

GroupElement GroupModel::inverse(const GroupElement& a) const {
  if (kind_ == GroupKind::Zn) {
    GroupElement out = a;
    for (auto& v : out) v = -v;
    return out;
  }
  if (kind_ == GroupKind::free) return invert_word(a);
  return rws_->reduce(invert_word(a));
}

GroupElement GroupModel::evaluate(const Word& w) const {
  for (long l : w) letter_weight(l);
  if (kind_ == GroupKind::Zn) {
    GroupElement out(rank(), 0);
    for (long l : w) out[static_cast<std::size_t>(std::labs(l)) - 1] += l > 0 ? 1 : -1;
    return out;
  }
  if (kind_ == GroupKind::free) return free_reduce(w);
  return rws_->reduce(w);
}

std::vector<long> GroupModel::letters() const {
  std::vector<long> out;
  for (long g = 1; g <= static_cast<long>(rank()); ++g) {
    out.push_back(g);
    out.push_back(-g);
  }
  return out;
}

void GroupModel::validate(const GroupElement& g) const {
  if (kind_ == GroupKind::Zn) {
    if (g.size() != rank()) throw std::invalid_argument("Zn element of wrong dimension");
    return;
  }
  for (long l : g) letter_weight(l);
  if (evaluate(g) != g) throw std::invalid_argument("word " + to_string(g) + " is not in normal form");
}

std::string GroupModel::to_string(const GroupElement& g) const {
  std::ostringstream os;
  if (kind_ == GroupKind::Zn) {
    os << "(";
    for (std::size_t i = 0; i < g.size(); ++i) os << (i ? "," : "") << g[i];
    os << ")";
    return os.str();
  }
  if (g.empty()) return "e";
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (i) os << " ";
    os << names_[static_cast<std::size_t>(std::labs(g[i])) - 1];
    if (g[i] < 0) os << "^-1";
  }
  return os.str();
}

std::size_t GroupModel::rewriting_rule_count() const { return rws_ ? rws_->size() : 0; }

LengthOracle::LengthOracle(GroupPtr group, Rational identity_value, Rational truncation_radius, bool fast_paths)
    : group_(std::move(group)), identity_value_(identity_value), radius_(truncation_radius), fast_paths_(fast_paths) {
  if (!group_) throw std::invalid_argument("null group");
  if (identity_value_ < 0) throw std::invalid_argument("identity value must be non-negative");
}

void LengthOracle::explore(const Rational& radius, const GroupElement* target) const {
  // Caller holds mutex_. Dijkstra over nonempty words, seeded by single letters.
  using Entry = std::pair<Rational, GroupElement>;
  auto cmp = [](const Entry& a, const Entry& b) { return a.first > b.first || (a.first == b.first && a.second > b.second); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(cmp)> frontier(cmp);
  std::map<GroupElement, Rational> done;
  const auto& G = *group_;
  for (long l : G.letters()) frontier.push({G.letter_weight(l), G.letter(l)});
  while (!frontier.empty()) {
    auto [d, g] = frontier.top();
    if (d > radius) break;
    frontier.pop();
    if (done.count(g)) continue;
    done.emplace(g, d);
    if (target && g == *target) break;
    for (long l : G.letters()) {
      GroupElement h = G.multiply(g, G.letter(l));
      if (!done.count(h)) frontier.push({d + G.letter_weight(l), h});
    }
  }
  for (auto& [g, d] : done) settled_.emplace(g, d);
  bool exhausted = frontier.empty() || frontier.top().first > radius;
  if (exhausted && (!target || !done.count(*target)) && radius > explored_to_) explored_to_ = radius;
}

Rational LengthOracle::search_length(const GroupElement& g) const {
  group_->validate(g);
  if (group_->is_identity(g)) return identity_value_;
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = settled_.find(g);
  if (it != settled_.end()) return it->second;
  if (explored_to_ < radius_) {
    explore(radius_, &g);
    it = settled_.find(g);
    if (it != settled_.end()) return it->second;
  }
  throw OutOfTruncation("element " + group_->to_string(g) + " lies outside the truncation radius " +
                        bhk::to_string(radius_));
}

Rational LengthOracle::length(const GroupElement& g) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = overrides_.find(g);
    if (it != overrides_.end()) return it->second;
  }
  if (!fast_paths_ || group_->kind() == GroupKind::presentation) return search_length(g);
  group_->validate(g);
  if (group_->is_identity(g)) return identity_value_;
  Rational out(0);
  if (group_->kind() == GroupKind::Zn) {
    for (std::size_t i = 0; i < g.size(); ++i) out += Rational(std::labs(g[i])) * group_->weights()[i];
  } else {
    for (long l : g) out += group_->letter_weight(l);
  }
  return out;
}

std::vector<GroupElement> LengthOracle::ball(const Rational& radius) const {
  if (radius > radius_) throw OutOfTruncation("ball radius exceeds the truncation radius");
  std::lock_guard<std::mutex> lock(mutex_);
  if (explored_to_ < radius) explore(radius, nullptr);
  std::vector<GroupElement> out{group_->identity()};
  for (const auto& [g, d] : settled_)
    if (d <= radius && !group_->is_identity(g)) out.push_back(g);
  std::sort(out.begin(), out.end());
  return out;
}

void LengthOracle::override_length(const GroupElement& g, const Rational& value) {
  std::lock_guard<std::mutex> lock(mutex_);
  overrides_[g] = value;
}

GroupElement random_element(const GroupModel& group, Rng& rng, std::size_t max_letters) {
  auto letters = group.letters();
  std::size_t len = rng.below(max_letters + 1);
  Word w;
  for (std::size_t i = 0; i < len; ++i) w.push_back(rng.pick(letters));
  return group.evaluate(w);
}

namespace {

void check_pair(const LengthOracle& oracle, const GroupElement& g, const GroupElement& h, LengthAxiomReport& rep) {
  const auto& G = oracle.group();
  Rational lg, lh, lgh, lginv;
  try {
    lg = oracle.length(g);
    lh = oracle.length(h);
    lgh = oracle.length(G.multiply(g, h));
    lginv = oracle.length(G.inverse(g));
  } catch (const OutOfTruncation&) {
    return;
  }
  ++rep.checked;
  if (lgh > lg + lh)
    rep.violations.push_back({"subadditivity", g, h,
                              "L(gh)=" + bhk::to_string(lgh) + " > " + bhk::to_string(lg) + "+" + bhk::to_string(lh)});
  if (lg != lginv)
    rep.violations.push_back({"symmetry", g, {}, "L(g)=" + bhk::to_string(lg) + " != L(g^-1)=" + bhk::to_string(lginv)});
  if (!G.is_identity(g) && lg <= 0)
    rep.violations.push_back({"positivity", g, {}, "L(g)=" + bhk::to_string(lg) + " for g != 1"});
}

}  // namespace

LengthAxiomReport check_length_axioms(const LengthOracle& oracle, std::size_t samples, std::uint64_t seed,
                                      std::size_t max_letters) {
  LengthAxiomReport rep;
  const auto& G = oracle.group();
  Rational l1 = oracle.length(G.identity());
  if (l1 != oracle.identity_value())
    rep.violations.push_back({"identity", G.identity(), {}, "L(1)=" + bhk::to_string(l1)});
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    GroupElement g = random_element(G, rng, max_letters);
    GroupElement h = random_element(G, rng, max_letters);
    check_pair(oracle, g, h, rep);
  }
  return rep;
}

LengthAxiomReport check_length_axioms_ball(const LengthOracle& oracle, const Rational& radius) {
  LengthAxiomReport rep;
  auto ball = oracle.ball(radius);
  for (const auto& g : ball)
    for (const auto& h : ball) check_pair(oracle, g, h, rep);
  return rep;
}

GSetReport check_gset(const WeightedGSet& ws, const LengthOracle& oracle, std::size_t samples, std::uint64_t seed,
                      std::size_t max_letters) {
  GSetReport rep;
  Rng rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    GroupElement g = random_element(oracle.group(), rng, max_letters);
    GSetPoint s = ws.sample_point(rng);
    Rational lg, ws_s, ws_gs;
    try {
      lg = oracle.length(g);
      ws_s = ws.weight(s);
      ws_gs = ws.weight(ws.action(g, s));
    } catch (const OutOfTruncation&) {
      continue;
    }
    ++rep.checked;
    if (ws_s < 1) rep.weight_errors.push_back("weight " + bhk::to_string(ws_s) + " < 1 at " + s.x);
    Rational ratio = ws_gs / (lg + ws_s);
    if (ratio > rep.tightest_C) rep.tightest_C = ratio;
    if (ws_gs > ws.constant_C * (lg + ws_s) && !rep.counterexample) rep.counterexample = std::make_pair(g, s);
  }
  return rep;
}

WeightedGSet left_translation_gset(OraclePtr oracle, std::size_t max_letters) {
  WeightedGSet ws;
  ws.action = [oracle](const GroupElement& g, const GSetPoint& s) {
    return GSetPoint{oracle->group().multiply(g, s.g), s.x};
  };
  ws.weight = [oracle](const GSetPoint& s) -> Rational { return oracle->length(s.g); };
  ws.sample_point = [oracle, max_letters](Rng& rng) {
    return GSetPoint{random_element(oracle->group(), rng, max_letters), ""};
  };
  return ws;
}

WeightedGSet product_gset(OraclePtr oracle, std::map<std::string, Rational> label_weights, std::size_t max_letters) {
  if (label_weights.empty()) throw std::invalid_argument("product G-set needs at least one label");
  for (const auto& [x, w] : label_weights)
    if (w < 1) throw std::invalid_argument("label weights must be >= 1");
  WeightedGSet ws;
  auto labels = std::make_shared<std::map<std::string, Rational>>(std::move(label_weights));
  ws.action = [oracle](const GroupElement& g, const GSetPoint& s) {
    return GSetPoint{oracle->group().multiply(g, s.g), s.x};
  };
  ws.weight = [oracle, labels](const GSetPoint& s) -> Rational { return oracle->length(s.g) + labels->at(s.x); };
  ws.sample_point = [oracle, labels, max_letters](Rng& rng) {
    auto it = labels->begin();
    std::advance(it, static_cast<long>(rng.below(labels->size())));
    return GSetPoint{random_element(oracle->group(), rng, max_letters), it->first};
  };
  return ws;
}

}  // namespace bhk
