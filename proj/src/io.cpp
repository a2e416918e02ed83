#include "bhk/io.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace bhk::io {

namespace {

std::string at(const std::string& where, const std::string& key) { return where.empty() ? key : where + "." + key; }
std::string idx(const std::string& where, std::size_t i) { return where + "[" + std::to_string(i) + "]"; }

const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) throw SchemaError(where, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(at(where, key), "missing");
  return *it;
}

const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) throw SchemaError(where, "expected an array");
  return j;
}

std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) throw SchemaError(where, "expected a string");
  return j.get<std::string>();
}

long integer_index(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return j.get<long>();
}

int degree_key(const std::string& key, const std::string& where) {
  try {
    std::size_t pos = 0;
    int n = std::stoi(key, &pos);
    if (pos != key.size()) throw std::invalid_argument("trailing");
    return n;
  } catch (const std::exception&) {
    throw SchemaError(at(where, key), "degree keys must be integers");
  }
}

std::string word_string(const std::vector<std::string>& names, const Word& w) {
  std::string out;
  for (long s : w) {
    if (!out.empty()) out += " ";
    out += names[static_cast<std::size_t>(std::labs(s)) - 1];
    if (s < 0) out += "^-1";
  }
  return out.empty() ? "e" : out;
}

Word parse_word(const std::vector<std::string>& names, const std::string& text, const std::string& where) {
  Word w;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok == "e") continue;
    auto caret = tok.find('^');
    std::string name = tok.substr(0, caret);
    long power = 1;
    if (caret != std::string::npos) {
      try {
        power = std::stol(tok.substr(caret + 1));
      } catch (const std::exception&) {
        throw SchemaError(where, "bad exponent in '" + tok + "'");
      }
    }
    auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) throw SchemaError(where, "unknown generator '" + name + "'");
    long letter = static_cast<long>(it - names.begin()) + 1;
    for (long k = 0; k < std::labs(power); ++k) w.push_back(power < 0 ? -letter : letter);
  }
  return w;
}

std::vector<Rational> rationals(const json& j, const std::string& where) {
  std::vector<Rational> out;
  const auto& a = array(j, where);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(rational(a[i], idx(where, i)));
  return out;
}

// basis + optional weights, default weight 1
std::vector<std::pair<std::string, Rational>> weighted_basis(const json& j, const std::string& where) {
  const auto& b = array(field(j, "basis", where), at(where, "basis"));
  std::vector<Rational> w;
  if (j.contains("weights")) w = rationals(j["weights"], at(where, "weights"));
  if (!w.empty() && w.size() != b.size()) throw SchemaError(at(where, "weights"), "length differs from the basis");
  std::vector<std::pair<std::string, Rational>> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < b.size(); ++i) {
    std::string x = str(b[i], idx(at(where, "basis"), i));
    if (!seen.insert(x).second) throw SchemaError(idx(at(where, "basis"), i), "duplicate label '" + x + "'");
    Rational wt = w.empty() ? Rational(1) : w[i];
    if (wt < 0) throw SchemaError(idx(at(where, "weights"), i), "weights must be non-negative");
    out.push_back({x, wt});
  }
  return out;
}

}  // namespace

json read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError(path, "cannot open file");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError(path, std::string("invalid JSON: ") + e.what());
  }
}

json rational(const Rational& q) { return to_string(q); }

Rational rational(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw SchemaError(where, "expected a rational as a decimal string");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const std::exception& e) {
    throw SchemaError(where, e.what());
  }
}

Integer parse_integer(const std::string& text, const std::string& where) {
  Rational q;
  try {
    q = parse_rational(text);
  } catch (const std::exception& e) {
    throw SchemaError(where, e.what());
  }
  if (q.get_den() != 1) throw SchemaError(where, "expected an integer, got " + text);
  return q.get_num();
}

Integer integer(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  return parse_integer(str(j, where), where);
}

json encode(const BoundingFunction& f) {
  json j;
  j["kind"] = to_string(f.kind());
  switch (f.kind()) {
    case FunctionKind::constant:
    case FunctionKind::linear:
    case FunctionKind::polynomial: {
      json c = json::array();
      for (const auto& x : f.poly_coeffs()) c.push_back(rational(x));
      j["coeffs"] = c;
      break;
    }
    case FunctionKind::exponential:
      j["c"] = rational(f.exp_coeff());
      j["base"] = rational(f.exp_base());
      break;
    case FunctionKind::chain: {
      json p = json::array();
      for (const auto& x : f.parts()) p.push_back(encode(x));
      j["parts"] = p;
      break;
    }
    case FunctionKind::sum: {
      json t = json::array();
      for (std::size_t i = 0; i < f.parts().size(); ++i) t.push_back({rational(f.weights()[i]), encode(f.parts()[i])});
      j["terms"] = t;
      break;
    }
  }
  j["text"] = f.to_string();
  return j;
}

BoundingFunction decode_function(const json& j, const std::string& where) {
  try {
    if (j.is_string()) return BoundingFunction::parse(j.get<std::string>());
    std::string kind = str(field(j, "kind", where), at(where, "kind"));
    auto coeffs = [&] { return j.contains("coeffs") ? rationals(j["coeffs"], at(where, "coeffs")) : std::vector<Rational>{}; };
    if (kind == "constant") {
      auto c = coeffs();
      return BoundingFunction::constant(c.empty() ? Rational(0) : c[0]);
    }
    if (kind == "linear") {
      auto c = coeffs();
      c.resize(2);
      return BoundingFunction::linear(c[1], c[0]);
    }
    if (kind == "polynomial") return BoundingFunction::polynomial(coeffs());
    if (kind == "exponential")
      return BoundingFunction::exponential(rational(field(j, "c", where), at(where, "c")),
                                           rational(field(j, "base", where), at(where, "base")));
    if (kind == "chain") {
      std::vector<BoundingFunction> parts;
      const auto& p = array(field(j, "parts", where), at(where, "parts"));
      for (std::size_t i = 0; i < p.size(); ++i) parts.push_back(decode_function(p[i], idx(at(where, "parts"), i)));
      return BoundingFunction::chain(std::move(parts));
    }
    if (kind == "sum") {
      std::vector<std::pair<Rational, BoundingFunction>> terms;
      const auto& t = array(field(j, "terms", where), at(where, "terms"));
      for (std::size_t i = 0; i < t.size(); ++i) {
        auto w = idx(at(where, "terms"), i);
        if (!t[i].is_array() || t[i].size() != 2) throw SchemaError(w, "expected [weight, function]");
        terms.push_back({rational(t[i][0], w + "[0]"), decode_function(t[i][1], w + "[1]")});
      }
      return BoundingFunction::sum(std::move(terms));
    }
    throw SchemaError(at(where, "kind"), "unknown function kind '" + kind + "'");
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(where, e.what());
  }
}

json encode(const GroupModel& g) {
  json j;
  json w = json::array();
  for (const auto& x : g.weights()) w.push_back(rational(x));
  j["weights"] = w;
  if (g.kind() == GroupKind::presentation) {
    j["kind"] = "presentation";
    j["generators"] = g.generator_names();
    json r = json::array();
    for (const auto& rel : g.relators()) r.push_back(word_string(g.generator_names(), rel));
    j["relators"] = r;
  } else {
    j["kind"] = g.kind() == GroupKind::Zn ? "Zn" : "free";
    j["rank"] = g.rank();
  }
  return j;
}

GroupPtr decode_group(const json& j, const std::string& where) {
  std::string kind = str(field(j, "kind", where), at(where, "kind"));
  std::vector<Rational> w;
  if (j.contains("weights")) w = rationals(j["weights"], at(where, "weights"));
  try {
    if (kind == "Zn" || kind == "free") {
      long n = integer_index(field(j, "rank", where), at(where, "rank"));
      if (n < 0) throw SchemaError(at(where, "rank"), "rank must be non-negative");
      if (!w.empty() && w.size() != static_cast<std::size_t>(n)) throw SchemaError(at(where, "weights"), "one weight per generator");
      return kind == "Zn" ? GroupModel::Zn(static_cast<std::size_t>(n), w) : GroupModel::free_group(static_cast<std::size_t>(n), w);
    }
    if (kind == "presentation") {
      std::vector<std::string> names;
      const auto& g = array(field(j, "generators", where), at(where, "generators"));
      for (std::size_t i = 0; i < g.size(); ++i) names.push_back(str(g[i], idx(at(where, "generators"), i)));
      if (w.empty()) w.assign(names.size(), Rational(1));
      std::vector<Word> rels;
      if (j.contains("relators")) {
        const auto& r = array(j["relators"], at(where, "relators"));
        for (std::size_t i = 0; i < r.size(); ++i)
          rels.push_back(parse_word(names, str(r[i], idx(at(where, "relators"), i)), idx(at(where, "relators"), i)));
      }
      return GroupModel::presentation(names, w, rels);
    }
  } catch (const SchemaError&) {
    throw;
  } catch (const std::exception& e) {
    throw SchemaError(where, e.what());
  }
  throw SchemaError(at(where, "kind"), "unknown group kind '" + kind + "'");
}

ChainComplex decode_complex(const json& j, const std::string& where) {
  OraclePtr oracle;
  if (j.contains("group") && !j["group"].is_null()) {
    Rational id = j["group"].contains("identity_value") ? rational(j["group"]["identity_value"], at(where, "group.identity_value"))
                                                        : Rational(1);
    oracle = std::make_shared<LengthOracle>(decode_group(j["group"], at(where, "group")), id);
  }
  const auto& degrees = field(j, "degrees", where);
  if (!degrees.is_object()) throw SchemaError(at(where, "degrees"), "expected an object keyed by degree");
  std::map<int, std::vector<std::pair<std::string, Rational>>> bases;
  for (const auto& [key, val] : degrees.items())
    bases[degree_key(key, at(where, "degrees"))] = weighted_basis(val, at(at(where, "degrees"), key));
  std::string name = j.contains("name") ? str(j["name"], at(where, "name")) : "C";
  if (bases.empty()) {
    if (j.contains("differentials") && !j["differentials"].empty())
      throw SchemaError(at(where, "differentials"), "differentials without degrees");
    return ChainComplex::zero(oracle);
  }
  int lo = bases.begin()->first, hi = bases.rbegin()->first;
  std::vector<ModulePtr> mods;
  for (int n = lo; n <= hi; ++n) {
    auto labels = bases.count(n) ? bases[n] : std::vector<std::pair<std::string, Rational>>{};
    std::string mname = name + std::to_string(n);
    mods.push_back(oracle ? WeightedModule::free(oracle, labels, mname) : WeightedModule::plain(labels, mname));
  }
  std::map<int, std::map<std::string, FormalSum>> cols;
  if (j.contains("differentials")) {
    const auto& diffs = j["differentials"];
    std::string dw = at(where, "differentials");
    if (!diffs.is_object()) throw SchemaError(dw, "expected an object keyed by degree");
    for (const auto& [key, entries] : diffs.items()) {
      int n = degree_key(key, dw);
      std::string ew = at(dw, key);
      if (n <= lo || n > hi) throw SchemaError(ew, "no degree " + std::to_string(n - 1) + " -> " + std::to_string(n) + " pair");
      const auto& src = bases[n];
      const auto& dst = bases[n - 1];
      const auto& a = array(entries, ew);
      for (std::size_t i = 0; i < a.size(); ++i) {
        std::string w = idx(ew, i);
        if (!a[i].is_array() || a[i].size() < 3 || a[i].size() > 4) throw SchemaError(w, "expected [coeff, row, col] or [coeff, row, col, element]");
        Rational c = rational(a[i][0], w + "[0]");
        long row = integer_index(a[i][1], w + "[1]"), col = integer_index(a[i][2], w + "[2]");
        if (row < 0 || static_cast<std::size_t>(row) >= dst.size()) throw SchemaError(w + "[1]", "row out of range");
        if (col < 0 || static_cast<std::size_t>(col) >= src.size()) throw SchemaError(w + "[2]", "column out of range");
        GroupElement g;
        if (a[i].size() == 4) {
          if (!oracle) throw SchemaError(w + "[3]", "group element in a complex without a group");
          try {
            g = parse_element(oracle->group(), str(a[i][3], w + "[3]"));
          } catch (const SchemaError&) {
            throw;
          } catch (const std::exception& e) {
            throw SchemaError(w + "[3]", e.what());
          }
        } else if (oracle) {
          g = oracle->group().identity();
        }
        cols[n][src[static_cast<std::size_t>(col)].first].add(BasisKey{g, dst[static_cast<std::size_t>(row)].first}, c);
      }
    }
  }
  std::vector<ModuleMap> d;
  for (int n = lo + 1; n <= hi; ++n) {
    auto& c = cols[n];
    for (const auto& x : mods[static_cast<std::size_t>(n - lo)]->labels()) c[x];
    d.push_back(ModuleMap::matrix(mods[static_cast<std::size_t>(n - lo)], mods[static_cast<std::size_t>(n - lo - 1)], c,
                                  "d" + std::to_string(n)));
  }
  ChainComplex out = ChainComplex::make(oracle, RingKind::integers, lo, mods, d, name);
  auto bad = check_d_squared(out);
  if (!bad.empty())
    throw SchemaError(at(at(where, "differentials"), std::to_string(bad.front().degree)),
                      "d^2 != 0 on " + bad.front().element + " (degree " + std::to_string(bad.front().degree) + ")");
  return out;
}

json encode(const ChainComplex& c) {
  if (!c.finite()) throw std::invalid_argument("only finite complexes can be written");
  json j;
  j["schema"] = "bhk-complex";
  j["schema_version"] = kSchemaVersion;
  j["name"] = c.name();
  if (c.oracle()) {
    j["group"] = encode(c.oracle()->group());
    j["group"]["identity_value"] = rational(c.oracle()->identity_value());
  }
  json degrees = json::object(), diffs = json::object();
  for (int n = c.lo(); n <= c.hi(); ++n) {
    const auto& m = c.module(n);
    json b = json::array(), w = json::array();
    for (const auto& x : m->labels()) {
      b.push_back(x);
      w.push_back(rational(m->label_weight(x)));
    }
    degrees[std::to_string(n)] = {{"basis", b}, {"weights", w}};
    if (n == c.lo()) continue;
    const auto& rows = c.module(n - 1)->labels();
    json e = json::array();
    for (std::size_t col = 0; col < m->labels().size(); ++col) {
      for (const auto& [key, coeff] : c.d(n).column(m->labels()[col])) {
        auto row = static_cast<std::size_t>(std::find(rows.begin(), rows.end(), key.x) - rows.begin());
        json entry = {rational(coeff), row, col};
        if (c.oracle() && !c.oracle()->group().is_identity(key.g)) entry.push_back(c.oracle()->group().to_string(key.g));
        e.push_back(entry);
      }
    }
    if (!e.empty()) diffs[std::to_string(n)] = e;
  }
  j["degrees"] = degrees;
  j["differentials"] = diffs;
  return j;
}

json encode(const MonomialMatrix& m, const GroupModel& g) {
  json perm = json::array(), labels = json::array();
  for (std::size_t i = 0; i < m.n(); ++i) {
    perm.push_back(m.perm[i] + 1);
    labels.push_back({m.sign[i] > 0 ? "+" : "-", g.is_identity(m.g[i]) ? std::string("e") : g.to_string(m.g[i])});
  }
  return {{"perm", perm}, {"labels", labels}};
}

MonomialMatrix decode_monomial(const json& j, const GroupModel& g, const std::string& where) {
  const auto& perm = array(field(j, "perm", where), at(where, "perm"));
  const auto& labels = array(field(j, "labels", where), at(where, "labels"));
  if (perm.size() != labels.size()) throw SchemaError(where, "perm and labels differ in length");
  MonomialMatrix m;
  for (std::size_t i = 0; i < perm.size(); ++i) {
    long p = integer_index(perm[i], idx(at(where, "perm"), i));
    if (p < 1 || static_cast<std::size_t>(p) > perm.size()) throw SchemaError(idx(at(where, "perm"), i), "perm entries are 1..n");
    m.perm.push_back(static_cast<std::size_t>(p - 1));
    std::string w = idx(at(where, "labels"), i);
    if (!labels[i].is_array() || labels[i].size() != 2) throw SchemaError(w, "expected [sign, element]");
    std::string s = str(labels[i][0], w + "[0]");
    if (s != "+" && s != "-") throw SchemaError(w + "[0]", "sign must be + or -");
    m.sign.push_back(s == "+" ? 1 : -1);
    try {
      m.g.push_back(parse_element(g, str(labels[i][1], w + "[1]")));
    } catch (const SchemaError&) {
      throw;
    } catch (const std::exception& e) {
      throw SchemaError(w + "[1]", e.what());
    }
  }
  try {
    m.validate(g);
  } catch (const std::exception& e) {
    throw SchemaError(where, e.what());
  }
  return m;
}

MonomialObject decode_object(const json& j, const OraclePtr& oracle, const std::string& where) {
  MonomialObject m{oracle, weighted_basis(j, where), j.contains("name") ? str(j["name"], at(where, "name")) : "M"};
  return m;
}

json encode(const MonomialObject& m) {
  json b = json::array(), w = json::array();
  for (const auto& [x, wt] : m.basis) {
    b.push_back(x);
    w.push_back(rational(wt));
  }
  return {{"name", m.name}, {"basis", b}, {"weights", w}};
}

json encode(const IdentityFailure& f) { return {{"identity", f.identity}, {"degree", f.degree}, {"element", f.element}}; }

json encode(const EquivalenceReport& r) {
  json fails = json::array(), fam = json::array();
  for (const auto& f : r.exact_failures) fails.push_back(encode(f));
  for (const auto& f : r.families)
    fam.push_back({{"family", f.family},
                   {"witness", f.witness ? json(f.witness->to_string()) : json(nullptr)},
                   {"in_class", f.in_class},
                   {"verdict", to_string(f.verdict)}});
  return {{"exact", r.exact()}, {"exact_failures", fails}, {"families", fam}, {"verdict", to_string(r.verdict)}};
}

json encode(const AxiomSuiteReport& r) {
  json axioms = json::array();
  for (const auto& a : r.axioms)
    axioms.push_back({{"axiom", a.axiom}, {"passed", a.passed}, {"failed", a.failed}, {"failures", a.failures}});
  return {{"profile", r.profile.to_string()},
          {"class", r.profile.cls},
          {"trials", r.options.trials},
          {"seed", r.options.seed},
          {"plant_bad_mono", r.options.plant_bad_mono},
          {"axioms", axioms},
          {"ok", r.ok()}};
}

json encode(const MarginRow& r) {
  return {{"n", r.n.get_str()},
          {"log2_n", bit_length(r.n) - 1},
          {"input_weight", rational(r.input_weight)},
          {"required", rational(r.required)},
          {"extremal", rational(r.extremal)},
          {"margin", rational(r.margin)},
          {"refutes", r.required > r.extremal}};
}

json encode(const InverseSearchResult& r) {
  json table = json::array(), deg = json::array();
  for (const auto& row : r.table) table.push_back(encode(row));
  for (const auto& d : r.per_degree) deg.push_back({{"degree", d.degree}, {"min_coeff", d.min_coeff.get_str()}, {"survives", d.survives}});
  return {{"verdict", to_string(r.verdict)},
          {"witness", r.witness ? encode(*r.witness) : json(nullptr)},
          {"margin_table", table},
          {"per_degree", deg},
          {"surviving", r.surviving ? json(r.surviving->to_string()) : json(nullptr)},
          {"samples", r.samples}};
}

json encode(const TwoTermReport& r) {
  json c = nullptr;
  if (r.contraction) {
    json f = json::array();
    for (const auto& x : r.contraction->failures) f.push_back(encode(x));
    c = {{"failures", f}, {"bounded", to_string(r.contraction->bounded)}};
  }
  return {{"degree1_weight", to_string(r.degree1)},
          {"degree0_weight", to_string(r.degree0)},
          {"class", r.cls},
          {"search", encode(r.search)},
          {"contraction", c},
          {"verdict", to_string(r.verdict)},
          {"conclusion", r.conclusion}};
}

json report(const std::string& command, const json& config, const json& result, Verdict verdict) {
  return {{"schema", kReportSchema},
          {"schema_version", kSchemaVersion},
          {"command", command},
          {"config", config},
          {"result", result},
          {"verdict", to_string(verdict)},
          {"exit_code", exit_code(verdict)}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace bhk::io
