#include "bhk/bounding.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace bhk {

namespace {

constexpr unsigned long kMaxExponentBits = 1UL << 28;

using Poly = std::vector<Rational>;

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  trim(out);
  return out;
}

Poly poly_scale(const Poly& a, const Rational& s) {
  Poly out = a;
  for (auto& c : out) c *= s;
  trim(out);
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  trim(out);
  return out;
}

// outer(inner(x)) by Horner's scheme.
Poly poly_compose(const Poly& outer, const Poly& inner) {
  Poly out;
  for (std::size_t k = outer.size(); k-- > 0;) out = poly_add(poly_mul(out, inner), Poly{outer[k]});
  return out;
}

Rational poly_eval(const Poly& p, const Rational& x) {
  Rational out(0);
  for (std::size_t k = p.size(); k-- > 0;) out = out * x + p[k];
  return out;
}

// Smallest representation: constant, linear, or polynomial.
BoundingFunction from_poly(Poly p) {
  trim(p);
  if (p.empty()) return BoundingFunction::constant(Rational(0));
  if (p.size() == 1) return BoundingFunction::constant(p[0]);
  if (p.size() == 2) return BoundingFunction::linear(p[1], p[0]);
  return BoundingFunction::polynomial(std::move(p));
}

void require_nonneg(const Rational& q, const char* what) {
  if (q < 0) throw std::invalid_argument(std::string(what) + " must be non-negative");
}

bool is_pure_exponential(const BoundingFunction& f) {
  return f.kind() == FunctionKind::exponential && !f.is_polynomial_like();
}

// Sum of p_i * i!, so that p(x) <= sum p_i i! * 3^x for x >= 0.
Rational factorial_weight(const Poly& p) {
  Rational s(0);
  for (std::size_t i = 0; i < p.size(); ++i) s += p[i] * Rational(factorial(i));
  return s;
}

GrowthRank compose_rank(const GrowthRank& outer, const GrowthRank& inner) {
  const auto tower_inf = GrowthRank::unbounded_tower;
  const auto deg_inf = GrowthRank::unbounded_degree;
  auto mul = [&](long a, long b) -> long {
    if (a == 0 || b == 0) return 0;
    if (a == deg_inf || b == deg_inf || a > deg_inf / b) return deg_inf;
    return a * b;
  };
  if (outer.tower == 0 && outer.degree == 0) return {0, 0};
  if (inner.tower == 0 && inner.degree == 0) return {0, 0};
  if (outer.tower == 0) {
    if (inner.tower == 0) return {0, mul(outer.degree, inner.degree)};
    return inner;
  }
  if (inner.tower == 0) return {outer.tower, mul(outer.degree, inner.degree)};
  int tower = (outer.tower == tower_inf || inner.tower == tower_inf) ? tower_inf : outer.tower + inner.tower;
  return {tower, inner.degree};
}

std::string rat_text(const Rational& q) { return bhk::to_string(q); }

}  // namespace

std::string to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::constant: return "constant";
    case FunctionKind::linear: return "linear";
    case FunctionKind::polynomial: return "polynomial";
    case FunctionKind::exponential: return "exponential";
    case FunctionKind::chain: return "chain";
    case FunctionKind::sum: return "sum";
  }
  return "?";
}

BoundingFunction BoundingFunction::constant(const Rational& c) {
  require_nonneg(c, "constant");
  BoundingFunction f;
  f.kind_ = FunctionKind::constant;
  f.coeffs_ = {c};
  return f;
}

BoundingFunction BoundingFunction::linear(const Rational& a, const Rational& b) {
  require_nonneg(a, "linear slope");
  require_nonneg(b, "linear intercept");
  BoundingFunction f = constant(Rational(0));
  f.kind_ = FunctionKind::linear;
  f.coeffs_ = {b, a};
  return f;
}

BoundingFunction BoundingFunction::polynomial(std::vector<Rational> ascending) {
  for (const auto& c : ascending) require_nonneg(c, "polynomial coefficient");
  BoundingFunction f = constant(Rational(0));
  f.kind_ = FunctionKind::polynomial;
  trim(ascending);
  f.coeffs_ = std::move(ascending);
  return f;
}

BoundingFunction BoundingFunction::exponential(const Rational& c, const Rational& base) {
  require_nonneg(c, "exponential coefficient");
  if (base < 1) throw std::invalid_argument("exponential base must be >= 1");
  BoundingFunction f = constant(Rational(0));
  f.kind_ = FunctionKind::exponential;
  f.coeffs_.clear();
  f.exp_coeff_ = c;
  f.exp_base_ = base;
  return f;
}

BoundingFunction BoundingFunction::chain(std::vector<BoundingFunction> outer_to_inner) {
  if (outer_to_inner.empty()) throw std::invalid_argument("empty composition chain");
  std::vector<BoundingFunction> flat;
  for (auto& part : outer_to_inner) {
    if (part.kind() == FunctionKind::chain)
      flat.insert(flat.end(), part.parts_.begin(), part.parts_.end());
    else
      flat.push_back(std::move(part));
  }
  if (flat.size() == 1) return flat.front();
  BoundingFunction f = constant(Rational(0));
  f.kind_ = FunctionKind::chain;
  f.coeffs_.clear();
  f.parts_ = std::move(flat);
  return f;
}

BoundingFunction BoundingFunction::sum(std::vector<std::pair<Rational, BoundingFunction>> terms) {
  if (terms.empty()) return constant(Rational(0));
  BoundingFunction f = constant(Rational(0));
  f.kind_ = FunctionKind::sum;
  f.coeffs_.clear();
  for (auto& [w, part] : terms) {
    if (w <= 0) throw std::invalid_argument("sum weights must be positive");
    if (part.kind() == FunctionKind::sum) {
      for (std::size_t i = 0; i < part.parts_.size(); ++i) {
        f.weights_.push_back(w * part.weights_[i]);
        f.parts_.push_back(part.parts_[i]);
      }
    } else {
      f.weights_.push_back(w);
      f.parts_.push_back(std::move(part));
    }
  }
  return f;
}

Rational BoundingFunction::eval(const Rational& x) const {
  if (x < 0) throw std::domain_error("bounding functions are defined on [0, inf)");
  switch (kind_) {
    case FunctionKind::constant:
    case FunctionKind::linear:
    case FunctionKind::polynomial:
      return poly_eval(coeffs_, x);
    case FunctionKind::exponential: {
      if (exp_coeff_ == 0) return Rational(0);
      if (exp_base_ == 1) return exp_coeff_;
      Integer n = ceil(x);
      unsigned long base_bits = std::max(bit_length(exp_base_.get_num()), bit_length(exp_base_.get_den()));
      if (!n.fits_ulong_p() || n.get_ui() > kMaxExponentBits / std::max(1UL, base_bits))
        throw std::overflow_error("exponential value exceeds the evaluation limit");
      return exp_coeff_ * pow(exp_base_, n.get_ui());
    }
    case FunctionKind::chain: {
      Rational v = x;
      for (std::size_t k = parts_.size(); k-- > 0;) v = parts_[k].eval(v);
      return v;
    }
    case FunctionKind::sum: {
      Rational v(0);
      for (std::size_t i = 0; i < parts_.size(); ++i) v += weights_[i] * parts_[i].eval(x);
      return v;
    }
  }
  return Rational(0);
}

bool BoundingFunction::is_polynomial_like() const {
  switch (kind_) {
    case FunctionKind::constant:
    case FunctionKind::linear:
    case FunctionKind::polynomial:
      return true;
    case FunctionKind::exponential:
      return exp_coeff_ == 0 || exp_base_ == 1;
    case FunctionKind::chain:
    case FunctionKind::sum:
      return std::all_of(parts_.begin(), parts_.end(), [](const auto& p) { return p.is_polynomial_like(); });
  }
  return false;
}

std::vector<Rational> BoundingFunction::poly_coeffs() const {
  switch (kind_) {
    case FunctionKind::constant:
    case FunctionKind::linear:
    case FunctionKind::polynomial: {
      Poly p = coeffs_;
      trim(p);
      return p;
    }
    case FunctionKind::exponential:
      if (exp_coeff_ == 0) return {};
      if (exp_base_ == 1) return {exp_coeff_};
      break;
    case FunctionKind::chain: {
      if (!is_polynomial_like()) break;
      Poly p = parts_.back().poly_coeffs();
      for (std::size_t k = parts_.size() - 1; k-- > 0;) p = poly_compose(parts_[k].poly_coeffs(), p);
      return p;
    }
    case FunctionKind::sum: {
      if (!is_polynomial_like()) break;
      Poly p;
      for (std::size_t i = 0; i < parts_.size(); ++i) p = poly_add(p, poly_scale(parts_[i].poly_coeffs(), weights_[i]));
      return p;
    }
  }
  throw std::logic_error("poly_coeffs on a non-polynomial function");
}

long BoundingFunction::degree() const {
  auto p = poly_coeffs();
  return p.empty() ? 0 : static_cast<long>(p.size()) - 1;
}

std::string BoundingFunction::to_string() const {
  std::ostringstream os;
  switch (kind_) {
    case FunctionKind::constant:
    case FunctionKind::linear:
    case FunctionKind::polynomial: {
      Poly p = poly_coeffs();
      if (p.empty()) return "0";
      bool first = true;
      for (std::size_t k = p.size(); k-- > 0;) {
        if (p[k] == 0) continue;
        if (!first) os << "+";
        first = false;
        if (k == 0) {
          os << rat_text(p[k]);
          continue;
        }
        if (p[k] != 1) os << rat_text(p[k]) << "*";
        os << "t";
        if (k > 1) os << "^" << k;
      }
      return os.str();
    }
    case FunctionKind::exponential:
      if (exp_coeff_ != 1) os << rat_text(exp_coeff_) << "*";
      os << rat_text(exp_base_) << "^t";
      return os.str();
    case FunctionKind::chain:
      for (std::size_t i = 0; i < parts_.size(); ++i) os << (i ? " o " : "") << "(" << parts_[i].to_string() << ")";
      return os.str();
    case FunctionKind::sum:
      for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) os << " + ";
        if (weights_[i] != 1) os << rat_text(weights_[i]) << "*";
        os << "(" << parts_[i].to_string() << ")";
      }
      return os.str();
  }
  return "?";
}

bool BoundingFunction::operator==(const BoundingFunction& other) const {
  return kind_ == other.kind_ && coeffs_ == other.coeffs_ && exp_coeff_ == other.exp_coeff_ &&
         exp_base_ == other.exp_base_ && parts_ == other.parts_ && weights_ == other.weights_;
}

namespace {

std::string strip_spaces(std::string_view s) {
  std::string out;
  for (char c : s)
    if (c != ' ' && c != '\t') out.push_back(c);
  return out;
}

bool is_var(char c) { return c == 't' || c == 'x'; }

BoundingFunction parse_term(const std::string& term) {
  if (term.empty()) throw std::invalid_argument("empty term in bounding function");
  auto var = std::find_if(term.begin(), term.end(), is_var);
  if (var == term.end()) return BoundingFunction::constant(parse_rational(term));
  auto pos = static_cast<std::size_t>(var - term.begin());
  if (pos >= 1 && term[pos - 1] == '^') {
    // [coef*]base^t
    if (pos + 1 != term.size()) throw std::invalid_argument("bad exponential term '" + term + "'");
    std::string head = term.substr(0, pos - 1);
    auto star = head.find('*');
    Rational coef(1);
    if (star != std::string::npos) {
      coef = parse_rational(head.substr(0, star));
      head = head.substr(star + 1);
    }
    return BoundingFunction::exponential(coef, parse_rational(head));
  }
  std::string head = term.substr(0, pos);
  if (!head.empty() && head.back() == '*') head.pop_back();
  Rational coef = head.empty() ? Rational(1) : parse_rational(head);
  unsigned long exponent = 1;
  std::string tail = term.substr(pos + 1);
  if (!tail.empty()) {
    if (tail.front() != '^') throw std::invalid_argument("bad term '" + term + "'");
    Integer e = parse_integer(tail.substr(1));
    if (e < 0 || !e.fits_ulong_p() || e > 4096) throw std::invalid_argument("bad exponent in '" + term + "'");
    exponent = e.get_ui();
  }
  Poly p(exponent + 1);
  p[exponent] = coef;
  return from_poly(std::move(p));
}

BoundingFunction parse_sum(const std::string& text) {
  std::vector<BoundingFunction> terms;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i == text.size() || text[i] == '+') {
      terms.push_back(parse_term(text.substr(start, i - start)));
      start = i + 1;
    }
  }
  Poly p;
  std::vector<std::pair<Rational, BoundingFunction>> rest;
  for (auto& t : terms) {
    if (t.is_polynomial_like())
      p = poly_add(p, t.poly_coeffs());
    else
      rest.emplace_back(Rational(1), t);
  }
  if (rest.empty()) return from_poly(p);
  if (!p.empty()) rest.emplace_back(Rational(1), from_poly(p));
  if (rest.size() == 1) return rest.front().second;
  return BoundingFunction::sum(std::move(rest));
}

}  // namespace

BoundingFunction BoundingFunction::parse(std::string_view text) {
  std::string s = strip_spaces(text);
  if (s.empty()) throw std::invalid_argument("empty bounding function");
  // Composition chains: "f o g" written with 'o' separators between parenthesized parts.
  std::vector<std::string> pieces;
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '(') ++depth;
    if (s[i] == ')') --depth;
    if (depth == 0 && s[i] == 'o') {
      pieces.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  pieces.push_back(s.substr(start));
  std::vector<BoundingFunction> parts;
  for (auto& piece : pieces) {
    if (piece.size() >= 2 && piece.front() == '(' && piece.back() == ')') piece = piece.substr(1, piece.size() - 2);
    parts.push_back(parse_sum(piece));
  }
  return chain(std::move(parts));
}

std::string GrowthRank::to_string() const {
  std::string t = tower == unbounded_tower ? "inf" : std::to_string(tower);
  std::string d = degree == unbounded_degree ? "inf" : std::to_string(degree);
  return "(" + t + "," + d + ")";
}

GrowthRank growth_rank(const BoundingFunction& f) {
  if (f.is_polynomial_like()) return {0, f.degree()};
  switch (f.kind()) {
    case FunctionKind::exponential:
      return {1, 1};
    case FunctionKind::chain: {
      const auto& parts = f.parts();
      GrowthRank r = growth_rank(parts.back());
      for (std::size_t k = parts.size() - 1; k-- > 0;) r = compose_rank(growth_rank(parts[k]), r);
      return r;
    }
    case FunctionKind::sum: {
      GrowthRank r{0, 0};
      for (const auto& p : f.parts()) r = std::max(r, growth_rank(p));
      return r;
    }
    default:
      return {0, f.degree()};
  }
}

std::string to_string(ClassName name) {
  switch (name) {
    case ClassName::L: return "L";
    case ClassName::P: return "P";
    case ClassName::E: return "E";
    case ClassName::Etilde: return "Etilde";
    case ClassName::custom: return "custom";
  }
  return "?";
}

BoundingClass::BoundingClass(ClassName name, std::vector<BoundingFunction> generators, bool full_composition)
    : name_(name), generators_(std::move(generators)), full_composition_(full_composition) {
  bool has_one = std::any_of(generators_.begin(), generators_.end(), [](const BoundingFunction& g) {
    return g.is_polynomial_like() && g.degree() == 0 && g.eval(Rational(0)) > 0;
  });
  if (!has_one) generators_.insert(generators_.begin(), BoundingFunction::constant(Rational(1)));
  cap_ = {0, 0};
  for (const auto& g : generators_) cap_ = std::max(cap_, growth_rank(g));
  if (full_composition_) {
    if (cap_.tower >= 1)
      cap_ = {GrowthRank::unbounded_tower, GrowthRank::unbounded_degree};
    else if (cap_.degree >= 2)
      cap_ = {0, GrowthRank::unbounded_degree};
  }
}

BoundingClass BoundingClass::linear() {
  return BoundingClass(ClassName::L, {BoundingFunction::constant(Rational(1)), BoundingFunction::identity()}, false);
}

BoundingClass BoundingClass::polynomial() {
  return BoundingClass(ClassName::P,
                       {BoundingFunction::constant(Rational(1)), BoundingFunction::identity(),
                        BoundingFunction::polynomial({Rational(0), Rational(0), Rational(1)})},
                       true);
}

BoundingClass BoundingClass::exponential() {
  return BoundingClass(ClassName::E,
                       {BoundingFunction::constant(Rational(1)), BoundingFunction::identity(),
                        BoundingFunction::exponential(Rational(1), Rational(2))},
                       false);
}

BoundingClass BoundingClass::iterated_exponential() {
  return BoundingClass(ClassName::Etilde,
                       {BoundingFunction::constant(Rational(1)), BoundingFunction::identity(),
                        BoundingFunction::exponential(Rational(1), Rational(2))},
                       true);
}

BoundingClass BoundingClass::named(ClassName name) {
  switch (name) {
    case ClassName::L: return linear();
    case ClassName::P: return polynomial();
    case ClassName::E: return exponential();
    case ClassName::Etilde: return iterated_exponential();
    case ClassName::custom: break;
  }
  throw std::invalid_argument("custom classes need explicit generators");
}

BoundingClass BoundingClass::by_name(std::string_view name) {
  if (name == "L") return linear();
  if (name == "P") return polynomial();
  if (name == "E") return exponential();
  if (name == "Etilde" || name == "Ẽ" || name == "E~") return iterated_exponential();
  throw std::invalid_argument("unknown bounding class '" + std::string(name) + "'");
}

bool BoundingClass::contains(const BoundingFunction& f) const { return growth_rank(f) <= cap_; }

std::string BoundingClass::label() const { return to_string(name_); }

Expr Expr::leaf(BoundingFunction f) {
  Expr e;
  e.op_ = Op::leaf;
  e.leaf_ = std::move(f);
  return e;
}

Expr Expr::combination(std::vector<std::pair<Rational, Expr>> terms) {
  for (const auto& [w, _] : terms)
    if (w < 0) throw std::invalid_argument("combination weights must be non-negative");
  Expr e;
  e.op_ = Op::combination;
  e.terms_ = std::move(terms);
  return e;
}

Expr Expr::compose(Expr outer, Expr inner) {
  Expr e;
  e.op_ = Op::compose;
  e.outer_ = std::make_shared<const Expr>(std::move(outer));
  e.inner_ = std::make_shared<const Expr>(std::move(inner));
  return e;
}

Rational Expr::eval(const Rational& x) const {
  switch (op_) {
    case Op::leaf: return leaf_.eval(x);
    case Op::combination: {
      Rational v(0);
      for (const auto& [w, t] : terms_) v += w * t.eval(x);
      return v;
    }
    case Op::compose: return outer_->eval(inner_->eval(x));
  }
  return Rational(0);
}

std::string Expr::to_string() const {
  switch (op_) {
    case Op::leaf: return leaf_.to_string();
    case Op::combination: {
      std::string s;
      for (std::size_t i = 0; i < terms_.size(); ++i) {
        if (i) s += " + ";
        s += rat_text(terms_[i].first) + "*[" + terms_[i].second.to_string() + "]";
      }
      return s.empty() ? "0" : s;
    }
    case Op::compose: return "[" + outer_->to_string() + "] o [" + inner_->to_string() + "]";
  }
  return "?";
}

BoundingFunction dominate_combination(const std::vector<std::pair<Rational, BoundingFunction>>& terms) {
  Poly p;
  std::map<Rational, Rational> exps;  // base -> total coefficient
  std::vector<std::pair<Rational, BoundingFunction>> others;
  for (const auto& [w, f] : terms) {
    if (w < 0) throw std::invalid_argument("combination weights must be non-negative");
    if (w == 0) continue;
    if (f.is_polynomial_like())
      p = poly_add(p, poly_scale(f.poly_coeffs(), w));
    else if (is_pure_exponential(f))
      exps[f.exp_base()] += w * f.exp_coeff();
    else
      others.emplace_back(w, f);
  }
  if (!others.empty()) {
    for (const auto& [base, c] : exps) others.emplace_back(Rational(1), BoundingFunction::exponential(c, base));
    if (!p.empty()) others.emplace_back(Rational(1), from_poly(p));
    return BoundingFunction::sum(others);
  }
  if (exps.empty()) return from_poly(p);
  if (exps.size() == 1 && p.empty()) return BoundingFunction::exponential(exps.begin()->second, exps.begin()->first);
  // sum c_j a_j^x <= (sum c_j) A^x and p(x) <= (sum p_i i!) 3^x.
  Rational total(0);
  Rational base = exps.rbegin()->first;
  for (const auto& [_, c] : exps) total += c;
  if (!p.empty()) {
    total += factorial_weight(p);
    base = std::max(base, Rational(3));
  }
  return BoundingFunction::exponential(total, base);
}

BoundingFunction dominate_composition(const BoundingFunction& outer, const BoundingFunction& inner) {
  if (outer.is_polynomial_like() && outer.degree() == 0) return from_poly(outer.poly_coeffs());
  if (outer.is_polynomial_like() && inner.is_polynomial_like())
    return from_poly(poly_compose(outer.poly_coeffs(), inner.poly_coeffs()));
  if (inner.is_polynomial_like() && inner.degree() == 0) return BoundingFunction::constant(outer.eval(inner.eval(Rational(0))));
  if (is_pure_exponential(outer) && inner.is_polynomial_like() && inner.degree() == 1) {
    // c a^ceil(m x + b) <= c a^ceil(b) (a^ceil(m))^ceil(x)
    Poly q = inner.poly_coeffs();
    Rational b = q[0], m = q[1];
    const Rational& a = outer.exp_base();
    Integer cb = ceil(b), cm = ceil(m);
    if (!cb.fits_ulong_p() || !cm.fits_ulong_p() || cb > 1 << 20 || cm > 1 << 20)
      return BoundingFunction::chain({outer, inner});
    return BoundingFunction::exponential(outer.exp_coeff() * pow(a, cb.get_ui()), pow(a, cm.get_ui()));
  }
  if (outer.is_polynomial_like() && is_pure_exponential(inner)) {
    // sum p_i (c a^x)^i <= (sum p_i) max(1,c)^d (a^d)^x
    Poly p = outer.poly_coeffs();
    unsigned long d = p.size() - 1;
    Rational s(0);
    for (const auto& c : p) s += c;
    Rational c = std::max(Rational(1), inner.exp_coeff());
    return BoundingFunction::exponential(s * pow(c, d), pow(inner.exp_base(), d));
  }
  return BoundingFunction::chain({outer, inner});
}

namespace {

BoundingFunction dominate_rec(const BoundingClass& cls, const Expr& e, bool linear_ok) {
  switch (e.op()) {
    case Expr::Op::leaf: {
      const auto& f = e.function();
      bool linear_arg = linear_ok && f.is_polynomial_like() && f.degree() <= 1;
      if (!linear_arg && !cls.contains(f))
        throw std::invalid_argument("'" + f.to_string() + "' is not a member of class " + cls.label());
      return f;
    }
    case Expr::Op::combination: {
      std::vector<std::pair<Rational, BoundingFunction>> terms;
      for (const auto& [w, t] : e.terms()) terms.emplace_back(w, dominate_rec(cls, t, linear_ok));
      return dominate_combination(terms);
    }
    case Expr::Op::compose: {
      BoundingFunction outer = dominate_rec(cls, e.outer(), false);
      BoundingFunction inner = dominate_rec(cls, e.inner(), true);
      bool inner_linear = inner.is_polynomial_like() && inner.degree() <= 1;
      if (!inner_linear && !cls.full_composition())
        throw std::invalid_argument("class " + cls.label() + " is not composable and the right factor '" +
                                    inner.to_string() + "' is not linear");
      return dominate_composition(outer, inner);
    }
  }
  throw std::logic_error("bad expression");
}

}  // namespace

BoundingFunction dominator(const BoundingClass& cls, const Expr& expr, bool strict) {
  BoundingFunction out = dominate_rec(cls, expr, false);
  if (strict) out = dominate_combination({{Rational(1), out}, {Rational(1), BoundingFunction::constant(Rational(1))}});
  return out;
}

std::vector<Rational> geometric_grid(const Rational& lo, const Rational& hi, int count) {
  std::vector<Rational> out;
  Rational start = lo;
  if (start <= 0) {
    out.push_back(Rational(0));
    start = 1;
  }
  if (hi < start || count <= 1) {
    out.push_back(start);
    return out;
  }
  // Exponents in eighths of an octave between start and hi.
  unsigned long octaves = 0;
  while (start * pow(Rational(2), octaves + 1) <= hi) ++octaves;
  long steps = static_cast<long>(octaves) * 8;
  for (int i = 0; i < count; ++i) {
    long e = steps == 0 ? 0 : (static_cast<long>(i) * steps) / (count - 1);
    Rational p = start * pow(Rational(2), static_cast<unsigned long>(e / 8)) * Rational(8 + e % 8, 8);
    if (p > hi) p = hi;
    if (out.empty() || out.back() != p) out.push_back(p);
  }
  if (out.back() != hi) out.push_back(hi);
  return out;
}

std::optional<Rational> first_grid_violation(const BoundingFunction& f, const BoundingFunction& g,
                                             const std::vector<Rational>& points) {
  for (const auto& x : points)
    if (f.eval(x) < g.eval(x)) return x;
  return std::nullopt;
}

std::optional<bool> dominates_everywhere(const BoundingFunction& f, const BoundingFunction& g) {
  if (f.is_polynomial_like() && g.is_polynomial_like()) {
    Poly a = f.poly_coeffs(), b = g.poly_coeffs();
    bool coefficientwise = b.size() <= a.size();
    for (std::size_t i = 0; coefficientwise && i < b.size(); ++i) coefficientwise = a[i] >= b[i];
    if (coefficientwise) return true;
  } else if (is_pure_exponential(f) && is_pure_exponential(g)) {
    if (f.exp_coeff() >= g.exp_coeff() && f.exp_base() >= g.exp_base()) return true;
  } else if (is_pure_exponential(f) && g.is_polynomial_like()) {
    if (f.exp_base() >= 3 && f.exp_coeff() >= factorial_weight(g.poly_coeffs())) return true;
  }
  try {
    if (first_grid_violation(f, g, geometric_grid(Rational(0), Rational(1 << 12), 64))) return false;
  } catch (const std::overflow_error&) {
  }
  return std::nullopt;
}

std::optional<bool> dominates_eventually(const BoundingFunction& f, const BoundingFunction& g) {
  if (f.is_polynomial_like() && g.is_polynomial_like()) {
    Poly diff = f.poly_coeffs();
    Poly b = g.poly_coeffs();
    diff.resize(std::max(diff.size(), b.size()));
    for (std::size_t i = 0; i < b.size(); ++i) diff[i] -= b[i];
    trim(diff);
    return diff.empty() || diff.back() > 0;
  }
  if (is_pure_exponential(f) && g.is_polynomial_like()) return true;
  if (f.is_polynomial_like() && is_pure_exponential(g)) return false;
  if (is_pure_exponential(f) && is_pure_exponential(g)) {
    if (f.exp_base() != g.exp_base()) return f.exp_base() > g.exp_base();
    return f.exp_coeff() >= g.exp_coeff();
  }
  GrowthRank rf = growth_rank(f), rg = growth_rank(g);
  if (rf.tower > rg.tower && rg.tower == 0 && rf.degree >= 1) return true;
  return std::nullopt;
}

std::string to_string(PrecedenceVerdict v) {
  switch (v) {
    case PrecedenceVerdict::yes_witnessed: return "yes-witnessed";
    case PrecedenceVerdict::no_counterexample: return "no-counterexample";
    case PrecedenceVerdict::inconclusive: return "inconclusive";
  }
  return "?";
}

namespace {

// Largest polynomial generator of cls, if any.
std::optional<BoundingFunction> top_poly_generator(const BoundingClass& cls) {
  std::optional<BoundingFunction> best;
  for (const auto& g : cls.generators())
    if (g.is_polynomial_like() && (!best || g.degree() > best->degree())) best = g;
  return best;
}

std::optional<BoundingFunction> exp_generator(const BoundingClass& cls) {
  for (const auto& g : cls.generators())
    if (is_pure_exponential(g) && g.exp_coeff() > 0) return g;
  return std::nullopt;
}

// A member of cls built from its generators that dominates g, or g itself
// when no closed form applies (g is then a member through the rank test).
BoundingFunction witness_in(const BoundingClass& cls, const BoundingFunction& g) {
  for (const auto& gen : cls.generators())
    if (gen == g) return gen;
  if (!g.is_polynomial_like()) return g;
  Poly p = g.poly_coeffs();
  long d = p.empty() ? 0 : static_cast<long>(p.size()) - 1;
  Rational s(0);
  for (const auto& c : p) s += c;
  if (d == 0) return BoundingFunction::constant(s);
  // x^i <= 1 + x^e <= 1 + Q(x)/q for i <= e, where q is the leading coefficient of Q.
  if (auto q = top_poly_generator(cls)) {
    BoundingFunction Q = *q;
    for (int iter = 0; Q.degree() < d && cls.full_composition() && Q.degree() >= 2 && iter < 64; ++iter)
      Q = dominate_composition(Q, *q);
    if (Q.degree() >= d) {
      Rational lead = Q.poly_coeffs().back();
      return dominate_combination({{s, BoundingFunction::constant(Rational(1))}, {s / lead, Q}});
    }
  }
  if (auto e = exp_generator(cls)) {
    // p(x) <= (sum p_i i!) 3^x <= (sum p_i i!) (a^m)^x with a^m >= 3.
    unsigned long m = 1;
    while (pow(e->exp_base(), m) < 3) ++m;
    return BoundingFunction::exponential(factorial_weight(p), pow(e->exp_base(), m));
  }
  return g;
}

// A member of a whose rank exceeds `cap`, by iterated self-composition of its
// fastest generator.
std::optional<BoundingFunction> escaping_member(const BoundingClass& a, const GrowthRank& cap) {
  std::optional<BoundingFunction> top;
  for (const auto& g : a.generators())
    if (!top || growth_rank(g) > growth_rank(*top)) top = g;
  if (!top) return std::nullopt;
  if (growth_rank(*top) > cap) return top;
  if (!a.full_composition()) return std::nullopt;
  BoundingFunction f = *top;
  for (int iter = 0; iter < 8; ++iter) {
    f = dominate_composition(f, *top);
    if (growth_rank(f) > cap) return f;
  }
  return std::nullopt;
}

}  // namespace

PrecedenceResult precedes(const BoundingClass& a, const BoundingClass& b, const Rational& horizon) {
  PrecedenceResult out;
  Rational lo = horizon > 0 ? horizon : Rational(1);
  auto grid = geometric_grid(lo, lo * 1024, 48);
  for (const auto& g : a.generators()) {
    if (!b.contains(g)) {
      out.verdict = PrecedenceVerdict::no_counterexample;
      out.counterexample = g;
      out.sketch = "generator " + g.to_string() + " has growth rank " + growth_rank(g).to_string() +
                   ", above the cap " + b.cap().to_string() + " of every member of " + b.label();
      out.witnesses.clear();
      return out;
    }
    BoundingFunction w = witness_in(b, g);
    bool ok;
    try {
      ok = !first_grid_violation(w, g, grid);
    } catch (const std::overflow_error&) {
      ok = false;
    }
    if (!ok) {
      out.verdict = PrecedenceVerdict::inconclusive;
      out.sketch = "no grid-verified witness for " + g.to_string();
      return out;
    }
    out.witnesses.emplace_back(g, w);
  }
  if (a.cap() > b.cap()) {
    if (auto f = escaping_member(a, b.cap())) {
      out.verdict = PrecedenceVerdict::no_counterexample;
      out.counterexample = *f;
      out.sketch = "composite member " + f->to_string() + " of " + a.label() + " has growth rank " +
                   growth_rank(*f).to_string() + ", above the cap " + b.cap().to_string() + " of " + b.label();
      out.witnesses.clear();
      return out;
    }
    out.verdict = PrecedenceVerdict::inconclusive;
    out.sketch = "closure of " + a.label() + " grows past " + b.label() + " but no explicit member was built";
    out.witnesses.clear();
    return out;
  }
  out.verdict = PrecedenceVerdict::yes_witnessed;
  out.sketch = "every generator of " + a.label() + " is dominated by a member of " + b.label();
  return out;
}

DilationTriple make_f2_f4_F(const BoundingClass& cls, const BoundingFunction& f) {
  if (!cls.contains(f)) throw std::invalid_argument("'" + f.to_string() + "' is not a member of " + cls.label());
  DilationTriple t;
  t.f2 = dominate_composition(f, BoundingFunction::linear(Rational(2), Rational(0)));
  t.f4 = dominate_composition(f, BoundingFunction::linear(Rational(4), Rational(0)));
  t.F = dominate_combination({{Rational(1), BoundingFunction::identity()}, {Rational(1), t.f2}});
  return t;
}

}  // namespace bhk
