#include "bhk/map.hpp"

#include <stdexcept>

namespace bhk {

namespace {

void require_compatible(const ModulePtr& a, const ModulePtr& b, const char* what) {
  if (!a || !b) throw std::invalid_argument(std::string(what) + ": null module");
  if (a->oracle() != b->oracle()) throw std::invalid_argument(std::string(what) + ": modules over different groups");
}

bool is_identity_element(const WeightedModule& m, const GroupElement& g) {
  return !m.has_group() || m.oracle()->group().is_identity(g);
}

}  // namespace

FormalSum translate(const WeightedModule& m, const GroupElement& g, const FormalSum& a) {
  if (is_identity_element(m, g)) return a;
  const auto& G = m.oracle()->group();
  FormalSum out;
  for (const auto& [k, c] : a) out.add(BasisKey{G.multiply(g, k.g), k.x}, c);
  return out;
}

ModuleMap ModuleMap::matrix(ModulePtr domain, ModulePtr codomain, std::map<std::string, FormalSum> columns,
                            std::string name) {
  require_compatible(domain, codomain, "matrix map");
  if (!domain->finite_labels()) throw std::invalid_argument("matrix map needs a finitely generated domain");
  for (const auto& [x, col] : columns) {
    if (!domain->has_label(x)) throw std::invalid_argument("matrix map: column for unknown label '" + x + "'");
    codomain->validate(col);
  }
  for (const auto& x : domain->labels()) columns.try_emplace(x);
  ModuleMap m;
  m.domain_ = std::move(domain);
  m.codomain_ = std::move(codomain);
  m.form_ = Form::matrix;
  m.name_ = std::move(name);
  m.columns_ = std::make_shared<const std::map<std::string, FormalSum>>(std::move(columns));
  return m;
}

ModuleMap ModuleMap::rule(ModulePtr domain, ModulePtr codomain, KeyRule rule, std::string name) {
  require_compatible(domain, codomain, "rule map");
  ModuleMap m;
  m.domain_ = std::move(domain);
  m.codomain_ = std::move(codomain);
  m.form_ = Form::rule;
  m.rule_ = std::move(rule);
  m.name_ = std::move(name);
  return m;
}

ModuleMap ModuleMap::identity(ModulePtr mod) {
  ModuleMap m;
  if (mod->finite_labels()) {
    std::map<std::string, FormalSum> cols;
    for (const auto& x : mod->labels()) cols[x] = FormalSum::single(mod->generator(x));
    m = matrix(mod, mod, std::move(cols), "id");
  } else {
    m = rule(mod, mod, [](const BasisKey& k) { return FormalSum::single(k); }, "id");
  }
  m.hint_ = Hint::identity;
  return m;
}

ModuleMap ModuleMap::zero(ModulePtr domain, ModulePtr codomain) {
  ModuleMap m = domain->finite_labels() ? matrix(domain, codomain, {}, "0")
                                        : rule(domain, codomain, [](const BasisKey&) { return FormalSum{}; }, "0");
  m.hint_ = Hint::zero;
  return m;
}

ModuleMap ModuleMap::label_map(ModulePtr domain, ModulePtr codomain, std::map<std::string, std::string> labels,
                               std::string name) {
  std::map<std::string, FormalSum> cols;
  for (const auto& [x, y] : labels) cols[x] = FormalSum::single(codomain->generator(y));
  for (const auto& x : domain->labels())
    if (!labels.count(x)) throw std::invalid_argument("label map: no image for '" + x + "'");
  ModuleMap m = matrix(std::move(domain), std::move(codomain), std::move(cols), std::move(name));
  m.hint_ = Hint::basis_map;
  return m;
}

ModuleMap ModuleMap::key_map(ModulePtr domain, ModulePtr codomain, std::function<BasisKey(const BasisKey&)> keys,
                             std::string name) {
  ModuleMap m = rule(std::move(domain), std::move(codomain),
                     [keys = std::move(keys)](const BasisKey& k) { return FormalSum::single(keys(k)); }, std::move(name));
  m.hint_ = Hint::basis_map;
  return m;
}

ModuleMap ModuleMap::left_multiplication(ModulePtr mod, FormalSum a) {
  if (!mod->has_group()) throw std::invalid_argument("left multiplication needs an R[G]-module");
  for (const auto& term : a) {
    if (!term.first.x.empty()) throw std::invalid_argument("left multiplier must be a group ring element");
    mod->oracle()->group().validate(term.first.g);
  }
  auto G = mod->oracle();
  ModuleMap m = rule(
      mod, mod,
      [G, a](const BasisKey& k) {
        FormalSum out;
        for (const auto& [rk, rc] : a) out.add(BasisKey{G->group().multiply(rk.g, k.g), k.x}, rc);
        return out;
      },
      "mult");
  m.hint_ = Hint::left_multiplication;
  m.multiplier_ = std::move(a);
  return m;
}

ModuleMap ModuleMap::named(std::string name) const {
  ModuleMap m = *this;
  m.name_ = std::move(name);
  return m;
}

const std::map<std::string, FormalSum>& ModuleMap::columns() const {
  if (form_ != Form::matrix) throw std::logic_error("columns() on a rule map");
  return *columns_;
}

const FormalSum& ModuleMap::column(const std::string& x) const {
  const auto& cols = columns();
  auto it = cols.find(x);
  if (it == cols.end()) throw std::invalid_argument("no column '" + x + "'");
  return it->second;
}

FormalSum ModuleMap::entry(const std::string& x, const std::string& y) const {
  FormalSum out;
  for (const auto& [k, c] : column(x))
    if (k.x == y) out.add(BasisKey{k.g, ""}, c);
  return out;
}

FormalSum ModuleMap::apply(const BasisKey& key) const {
  if (form_ == Form::rule) return rule_(key);
  return translate(*codomain_, key.g, column(key.x));
}

FormalSum ModuleMap::apply(const FormalSum& a) const {
  FormalSum out;
  for (const auto& [k, c] : a) out += apply(k).scaled(c);
  return out;
}

ModuleMap ModuleMap::after(const ModuleMap& other) const {
  if (!other.codomain_->same_as(*domain_)) throw std::invalid_argument("composition: codomain/domain mismatch");
  std::string nm = name_ + "*" + other.name_;
  if (hint_ == Hint::identity) return other.named(other.name_);
  if (other.hint_ == Hint::identity) return *this;
  if (form_ == Form::matrix && other.form_ == Form::matrix) {
    std::map<std::string, FormalSum> cols;
    for (const auto& [x, col] : other.columns()) cols[x] = apply(col);
    return matrix(other.domain_, codomain_, std::move(cols), nm);
  }
  ModuleMap outer = *this, inner = other;
  return rule(other.domain_, codomain_, [outer, inner](const BasisKey& k) { return outer.apply(inner.apply(k)); }, nm);
}

ModuleMap ModuleMap::operator+(const ModuleMap& o) const {
  if (!domain_->same_as(*o.domain_) || !codomain_->same_as(*o.codomain_))
    throw std::invalid_argument("sum of maps with different domain or codomain");
  std::string nm = name_ + "+" + o.name_;
  if (form_ == Form::matrix && o.form_ == Form::matrix) {
    std::map<std::string, FormalSum> cols = columns();
    for (const auto& [x, col] : o.columns()) cols[x] += col;
    return matrix(domain_, codomain_, std::move(cols), nm);
  }
  ModuleMap a = *this, b = o;
  return rule(domain_, codomain_, [a, b](const BasisKey& k) { return a.apply(k) + b.apply(k); }, nm);
}

ModuleMap ModuleMap::operator-(const ModuleMap& o) const { return *this + o.scaled(Rational(-1)); }

ModuleMap ModuleMap::scaled(const Rational& r) const {
  if (form_ == Form::matrix) {
    std::map<std::string, FormalSum> cols;
    for (const auto& [x, col] : columns()) cols[x] = col.scaled(r);
    return matrix(domain_, codomain_, std::move(cols), name_);
  }
  ModuleMap a = *this;
  return rule(domain_, codomain_, [a, r](const BasisKey& k) { return a.apply(k).scaled(r); }, name_);
}

bool ModuleMap::equals(const ModuleMap& o, const Rational& cutoff) const {
  if (!domain_->same_as(*o.domain_) || !codomain_->same_as(*o.codomain_)) return false;
  if (form_ == Form::matrix) {
    for (const auto& x : domain_->labels()) {
      BasisKey k = domain_->generator(x);
      if (apply(k) != o.apply(k)) return false;
    }
    // Rule maps need not be equivariant: compare on the whole ball as well.
    if (o.form_ == Form::matrix) return true;
  }
  for (const auto& k : domain_->basis_up_to(cutoff))
    if (apply(k) != o.apply(k)) return false;
  return true;
}

bool ModuleMap::is_zero(const Rational& cutoff) const {
  if (form_ == Form::matrix) {
    for (const auto& [x, col] : columns())
      if (!col.is_zero()) return false;
    return true;
  }
  for (const auto& k : domain_->basis_up_to(cutoff))
    if (!apply(k).is_zero()) return false;
  return true;
}

ModuleMap block_map(ModulePtr domain_sum, const std::vector<ModulePtr>& domain_parts, ModulePtr codomain_sum,
                    const std::vector<ModulePtr>& codomain_parts,
                    const std::vector<std::vector<std::optional<ModuleMap>>>& blocks) {
  if (blocks.size() != codomain_parts.size()) throw std::invalid_argument("block map: wrong number of block rows");
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    if (blocks[j].size() != domain_parts.size()) throw std::invalid_argument("block map: wrong number of block columns");
    for (std::size_t i = 0; i < blocks[j].size(); ++i) {
      if (!blocks[j][i]) continue;
      if (!blocks[j][i]->domain()->same_as(*domain_parts[i]) || !blocks[j][i]->codomain()->same_as(*codomain_parts[j]))
        throw std::invalid_argument("block map: block (" + std::to_string(j) + "," + std::to_string(i) +
                                    ") has the wrong shape");
    }
  }
  // A single part equal to the whole module is used untagged.
  bool dom_plain = domain_parts.size() == 1 && domain_sum->same_as(*domain_parts[0]);
  bool cod_plain = codomain_parts.size() == 1 && codomain_sum->same_as(*codomain_parts[0]);
  auto apply_block = [blocks, dom_plain, cod_plain](const BasisKey& k) {
    auto [i, x] = dom_plain ? std::pair<std::size_t, std::string>{0, k.x} : untag_label(k.x);
    FormalSum out;
    for (std::size_t j = 0; j < blocks.size(); ++j) {
      if (!blocks[j][i]) continue;
      FormalSum img = blocks[j][i]->apply(BasisKey{k.g, x});
      out += cod_plain ? img : inject(j, img);
    }
    return out;
  };
  bool all_matrix = domain_sum->finite_labels();
  for (const auto& row : blocks)
    for (const auto& b : row)
      if (b && b->form() != ModuleMap::Form::matrix) all_matrix = false;
  if (all_matrix) {
    std::map<std::string, FormalSum> cols;
    for (const auto& x : domain_sum->labels()) cols[x] = apply_block(domain_sum->generator(x));
    return ModuleMap::matrix(domain_sum, codomain_sum, std::move(cols), "block");
  }
  return ModuleMap::rule(domain_sum, codomain_sum, apply_block, "block");
}

ModuleMap inclusion(ModulePtr sum, const std::vector<ModulePtr>& parts, std::size_t index) {
  const ModulePtr& part = parts.at(index);
  std::string nm = "in" + std::to_string(index);
  if (part->finite_labels()) {
    std::map<std::string, FormalSum> cols;
    for (const auto& x : part->labels()) cols[x] = inject(index, FormalSum::single(part->generator(x)));
    return ModuleMap::matrix(part, sum, std::move(cols), nm);
  }
  return ModuleMap::rule(part, sum, [index](const BasisKey& k) { return inject(index, FormalSum::single(k)); }, nm);
}

ModuleMap projection(ModulePtr sum, const std::vector<ModulePtr>& parts, std::size_t index) {
  const ModulePtr& part = parts.at(index);
  std::string nm = "pr" + std::to_string(index);
  auto pr = [index](const BasisKey& k) {
    auto [i, x] = untag_label(k.x);
    return i == index ? FormalSum::single(BasisKey{k.g, x}) : FormalSum{};
  };
  if (sum->finite_labels()) {
    std::map<std::string, FormalSum> cols;
    for (const auto& x : sum->labels()) cols[x] = pr(sum->generator(x));
    return ModuleMap::matrix(sum, part, std::move(cols), nm);
  }
  return ModuleMap::rule(sum, part, pr, nm);
}

}  // namespace bhk
