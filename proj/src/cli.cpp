#include "bhk/cli.hpp"

#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "bhk/io.hpp"
#include "bhk/parallel.hpp"

namespace bhk {

namespace {

using io::json;

struct Options {
  std::string command;
  std::string input;
  std::string cls = "L";
  std::vector<std::string> schedule;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string cutoff_weight = "8";
  long degree = 8;
  std::string coeff_bound = "10^9";
  std::string nmax = "2^256";
  unsigned jobs = 1;
  std::string out;
  std::string direction = "forward";
  std::string profile = "Fin/free/Bh";
  int n = 3;
  std::string weights = "id,log";
  bool plant_bad_mono = false;
};

struct Outcome {
  json result;
  Verdict verdict = Verdict::inconclusive;
  std::vector<std::string> summary;
};

json config_json(const Options& o) {
  return {{"input", o.input},       {"class", o.cls},         {"schedule", o.schedule},
          {"trials", o.trials},     {"seed", o.seed},         {"cutoff_weight", o.cutoff_weight},
          {"degree", o.degree},     {"coeff_bound", o.coeff_bound}, {"nmax", o.nmax},
          {"direction", o.direction}, {"profile", o.profile}, {"n", o.n},
          {"weights", o.weights},   {"plant_bad_mono", o.plant_bad_mono}};
}

SampleOptions sample_options(const Options& o) {
  SampleOptions s;
  s.trials = o.trials;
  s.seed = o.seed;
  s.jobs = o.jobs;
  return s;
}

Rational cutoff(const Options& o) { return io::rational(json(o.cutoff_weight), "--cutoff-weight"); }

std::vector<BoundingFunction> schedule(const Options& o) {
  std::vector<BoundingFunction> out;
  for (std::size_t i = 0; i < o.schedule.size(); ++i) out.push_back(io::decode_function(json(o.schedule[i]), "--schedule[" + std::to_string(i) + "]"));
  return out;
}

json encode(const WitnessCheck& c, const WeightedModule& dom) {
  json j = {{"f", c.f.to_string()},
            {"f_prime", c.f_prime ? json(c.f_prime->to_string()) : json(nullptr)},
            {"route", c.route},
            {"verdict", to_string(c.verdict)},
            {"samples", c.samples},
            {"detail", c.detail}};
  if (c.counterexample) {
    json el = json::array();
    for (const auto& [k, v] : c.counterexample->element) el.push_back({io::rational(v), key_to_string(dom, k)});
    j["counterexample"] = {{"element", el},
                           {"lhs", io::rational(c.counterexample->lhs)},
                           {"rhs", io::rational(c.counterexample->rhs)}};
  }
  return j;
}

json encode(const BoundednessCertificate& c, const WeightedModule& dom) {
  json checks = json::array();
  for (const auto& x : c.checks) checks.push_back(encode(x, dom));
  return {{"map", c.map_id}, {"sense", to_string(c.sense)}, {"class", c.class_label}, {"checks", checks},
          {"verdict", to_string(c.overall())}};
}

std::string verdict_line(Verdict v) { return "verdict: " + to_string(v) + " (exit " + std::to_string(exit_code(v)) + ")"; }

std::string short_margin(const MarginRow& r) {
  std::ostringstream os;
  os << "n = 2^" << bit_length(r.n) - 1 << ": required " << (bit_length(r.n) > 40 ? "2^" + std::to_string(bit_length(floor(r.required)) - 1) : to_string(r.required))
     << ", extremal ~2^" << bit_length(floor(r.extremal)) - 1 << ", refutes: " << (r.required > r.extremal ? "yes" : "no");
  return os.str();
}

// ---------------------------------------------------------------- check-map

ModulePtr basis_module(const json& j, const OraclePtr& oracle, const std::string& where, const std::string& name) {
  auto obj = io::decode_object(j, oracle, where);
  return oracle ? WeightedModule::free(oracle, obj.basis, name) : WeightedModule::plain(obj.basis, name);
}

Outcome check_map(const Options& o) {
  json file = io::read_file(o.input);
  std::string kind = file.value("kind", "");
  BoundingClass cls = BoundingClass::by_name(o.cls);
  Outcome out;
  if (o.direction != "forward" && o.direction != "inverse")
    throw io::SchemaError("--direction", "must be forward or inverse");
  if (kind == "naturals") {
    auto from = parse_natural_weight(file.value("from", "id"));
    auto to = parse_natural_weight(file.value("to", "log"));
    std::string rel = file.value("relabel", "identity");
    if (rel != "identity" && rel != "square") throw io::SchemaError("relabel", "must be identity or square");
    Relabel relabel = rel == "square" ? Relabel::square : Relabel::identity;
    if (o.direction == "forward") {
      auto m = naturals_map(from, to, relabel);
      BoundingFunction w = file.contains("witness") ? io::decode_function(file["witness"], "witness")
                           : !o.schedule.empty()     ? schedule(o).front()
                                                     : BoundingFunction::identity();
      auto cert = check_dehn_bounded(m, w, ball_sampler(m.domain(), cutoff(o)), sample_options(o));
      bool in = cls.contains(w);
      out.verdict = in ? cert.overall() : combine(cert.overall(), Verdict::inconclusive);
      out.result = {{"map", m.name()}, {"direction", "forward"}, {"witness", w.to_string()}, {"witness_in_class", in},
                    {"dehn", encode(cert, *m.domain())}};
      out.summary.push_back(m.name() + ": Dehn check with witness " + w.to_string() + (in ? "" : " (outside " + o.cls + ")"));
    } else {
      if (relabel != Relabel::identity) throw io::SchemaError("relabel", "the inverse search needs the identity relabeling");
      InverseSearchProblem p;
      p.map = naturals_inverse(from, to);
      p.degree = o.degree;
      p.coeff_bound = io::parse_integer(o.coeff_bound, "--coeff-bound");
      p.n_max = io::parse_integer(o.nmax, "--nmax");
      auto r = falsify_poly_inverse(p, o.jobs);
      out.verdict = r.verdict;
      out.result = {{"map", p.map.name()}, {"direction", "inverse"}, {"search", io::encode(r)}};
      out.summary.push_back(p.map.name() + ": polynomial witnesses of degree <= " + std::to_string(o.degree) +
                            ", coefficients <= " + o.coeff_bound + ", n <= " + o.nmax);
      for (const auto& row : r.table) out.summary.push_back("  " + short_margin(row));
    }
    return out;
  }
  if (kind == "matrix") {
    if (o.direction == "inverse") throw io::SchemaError("direction", "the inverse search is only defined for naturals maps");
    OraclePtr oracle;
    if (file.contains("group") && !file["group"].is_null())
      oracle = std::make_shared<LengthOracle>(io::decode_group(file["group"], "group"));
    auto dom = basis_module(file.at("domain"), oracle, "domain", "X");
    auto cod = basis_module(file.at("codomain"), oracle, "codomain", "Y");
    std::map<std::string, FormalSum> cols;
    for (const auto& x : dom->labels()) cols[x];
    const auto& entries = file.at("entries");
    const auto& dl = io::decode_object(file["domain"], oracle, "domain").basis;
    const auto& cl = io::decode_object(file["codomain"], oracle, "codomain").basis;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      std::string w = "entries[" + std::to_string(i) + "]";
      const auto& e = entries[i];
      if (!e.is_array() || e.size() < 3) throw io::SchemaError(w, "expected [coeff, row, col] or [coeff, row, col, element]");
      Rational c = io::rational(e[0], w + "[0]");
      if (!e[1].is_number_integer() || !e[2].is_number_integer()) throw io::SchemaError(w, "row and col must be integers");
      long row = e[1].get<long>(), col = e[2].get<long>();
      if (row < 0 || static_cast<std::size_t>(row) >= cl.size()) throw io::SchemaError(w + "[1]", "row out of range");
      if (col < 0 || static_cast<std::size_t>(col) >= dl.size()) throw io::SchemaError(w + "[2]", "column out of range");
      GroupElement g = oracle ? oracle->group().identity() : GroupElement{};
      if (e.size() == 4) {
        if (!oracle) throw io::SchemaError(w + "[3]", "group element without a group");
        g = parse_element(oracle->group(), e[3].get<std::string>());
      }
      cols[dl[static_cast<std::size_t>(col)].first].add(BasisKey{g, cl[static_cast<std::size_t>(row)].first}, c);
    }
    auto m = ModuleMap::matrix(dom, cod, cols, file.value("name", "h"));
    std::optional<BoundingFunction> w;
    if (file.contains("witness")) w = io::decode_function(file["witness"], "witness");
    else if (auto K = dehn_constant(m)) w = BoundingFunction::linear(*K, Rational(0));
    auto sampler = ball_sampler(dom, cutoff(o));
    auto so = sample_options(o);
    out.verdict = Verdict::symbolically_verified;
    out.result = {{"map", m.name()}, {"direction", "forward"}};
    if (w) {
      auto cert = check_dehn_bounded(m, *w, sampler, so);
      out.verdict = combine(out.verdict, cert.overall());
      if (!cls.contains(*w)) out.verdict = combine(out.verdict, Verdict::inconclusive);
      out.result["witness"] = w->to_string();
      out.result["witness_in_class"] = cls.contains(*w);
      out.result["dehn"] = encode(cert, *dom);
      out.summary.push_back(m.name() + ": Dehn check with witness " + w->to_string());
    }
    auto sched = schedule(o);
    if (!sched.empty()) {
      auto fa = check_fa_bounded(m, sched, cls, sampler, so, w);
      out.verdict = combine(out.verdict, fa.overall());
      out.result["functional_analytic"] = encode(fa, *dom);
      out.summary.push_back("functional-analytic checks over " + std::to_string(sched.size()) + " scheduled functions");
    }
    return out;
  }
  throw io::SchemaError("kind", "expected \"naturals\" or \"matrix\"");
}

// ------------------------------------------------------------ check-complex

Outcome check_complex(const Options& o) {
  json file = io::read_file(o.input);
  ChainComplex c = io::decode_complex(file);
  Outcome out;
  json ranks = json::object();
  for (int n = c.lo(); n <= c.hi(); ++n) ranks[std::to_string(n)] = c.rank(n);
  out.result = {{"name", c.name()},
                {"lo", c.lo()},
                {"hi", c.hi()},
                {"ranks", ranks},
                {"euler_class", euler_class(c).get_str()},
                {"d_squared_zero", true},
                {"group", c.oracle() ? io::encode(c.oracle()->group()) : json(nullptr)},
                {"normalized", io::encode(c)}};
  out.verdict = Verdict::symbolically_verified;
  out.summary.push_back(c.name() + ": d^2 = 0, euler class " + euler_class(c).get_str());
  return out;
}

// -------------------------------------------------------------- axiom-suite

Outcome axiom_suite(const Options& o) {
  auto profile = CategoryProfile::parse(o.profile, o.cls);
  AxiomSuiteOptions ao;
  ao.trials = o.trials;
  ao.seed = o.seed;
  ao.jobs = o.jobs;
  ao.plant_bad_mono = o.plant_bad_mono;
  auto rep = run_axiom_suite(profile, ao);
  Outcome out;
  out.result = io::encode(rep);
  out.verdict = rep.ok() ? Verdict::sample_verified : Verdict::refuted;
  for (const auto& a : rep.axioms)
    out.summary.push_back(a.axiom + ": " + std::to_string(a.passed) + " passed, " + std::to_string(a.failed) + " failed" +
                          (a.failures.empty() ? "" : " (first: " + a.failures.front() + ")"));
  return out;
}

// ---------------------------------------------------------------- staircase

Outcome staircase(const Options& o) {
  if (o.n < 2 || o.n > 4) throw io::SchemaError("--n", "staircases are built for n = 2, 3, 4");
  auto gen = default_generator();
  auto built = parallel_map<std::pair<Staircase, StaircaseReport>>(o.trials, o.jobs, [&](std::size_t t) {
    Rng rng(sample_seed(o.seed, t));
    auto s = build_staircase(random_filtration(o.n, rng, gen));
    auto r = verify_staircase(s);
    return std::make_pair(std::move(s), std::move(r));
  });
  std::vector<Staircase> xs;
  std::size_t squares = 0, bad = 0;
  json failures = json::array();
  for (std::size_t t = 0; t < built.size(); ++t) {
    squares += built[t].second.squares_checked;
    if (!built[t].second.ok()) {
      ++bad;
      if (failures.size() < 5) failures.push_back("instance " + std::to_string(t) + ": " + built[t].second.failures.front());
    }
    xs.push_back(std::move(built[t].first));
  }
  auto simp = check_simplicial_identities(xs);
  for (const auto& f : simp.failures)
    if (failures.size() < 10) failures.push_back(f);
  Outcome out;
  out.result = {{"n", o.n},
                {"instances", xs.size()},
                {"squares_checked", squares},
                {"staircases_failed", bad},
                {"identities_checked", simp.identities_checked},
                {"identity_failures", simp.failures.size()},
                {"failures", failures}};
  out.verdict = bad == 0 && simp.ok() ? Verdict::symbolically_verified : Verdict::refuted;
  out.summary.push_back(std::to_string(xs.size()) + " staircases, n = " + std::to_string(o.n) + ": " + std::to_string(squares) +
                        " squares, " + std::to_string(simp.identities_checked) + " simplicial identities, " +
                        std::to_string(bad + simp.failures.size()) + " failures");
  return out;
}

// --------------------------------------------------------------------- pair

Outcome pair_cmd(const Options& o) {
  json file = io::read_file(o.input);
  auto oracle = std::make_shared<LengthOracle>(io::decode_group(file.at("group"), "group"));
  const auto& group = oracle->group();
  auto M = io::decode_object(file.at("object"), oracle, "object");
  auto C = io::decode_complex(file.at("complex"), "complex");
  Outcome out;
  out.verdict = Verdict::symbolically_verified;
  auto F = pair(M, C);
  json ranks = json::object();
  for (int n = F.lo(); n <= F.hi(); ++n) ranks[std::to_string(n)] = F.rank(n);
  bool d2 = check_d_squared(F).empty();
  if (!d2) out.verdict = Verdict::refuted;
  out.result = {{"object", io::encode(M)}, {"ranks", ranks}, {"d_squared_zero", d2}};
  out.summary.push_back("F(" + M.name + ", " + C.name() + "): d^2 = 0 " + (d2 ? "holds" : "FAILS"));

  if (file.contains("matrices")) {
    std::vector<MonomialMorphism> ms;
    json products = json::array();
    bool functorial = true;
    for (std::size_t i = 0; i < file["matrices"].size(); ++i) {
      auto m = io::decode_monomial(file["matrices"][i], group, "matrices[" + std::to_string(i) + "]");
      if (m.n() != M.size()) throw io::SchemaError("matrices[" + std::to_string(i) + "]", "size differs from the object");
      ms.push_back(normalize({MonomialGenerator::monomial(M, m)}));
    }
    for (std::size_t i = 0; i + 1 < ms.size(); ++i) {
      auto ab = compose(ms[i + 1], ms[i]);
      bool ok = !first_difference(pair(ab, C), pair(ms[i + 1], C).after(pair(ms[i], C)), "functoriality");
      functorial = functorial && ok;
      products.push_back({{"first", i}, {"second", i + 1}, {"product", io::encode(ab.middle, group)}, {"functorial", ok}});
    }
    if (!functorial) out.verdict = Verdict::refuted;
    out.result["compositions"] = products;
    out.summary.push_back(std::to_string(products.size()) + " compositions, functoriality " + (functorial ? "holds" : "FAILS"));
  }
  if (file.contains("extension")) {
    auto extra = io::decode_object(file["extension"], oracle, "extension");
    MonomialObject Mp = M;
    Mp.name = M.name + "'";
    for (const auto& b : extra.basis) {
      if (M.index(b.first)) throw io::SchemaError("extension.basis", "label '" + b.first + "' already in the object");
      Mp.basis.push_back(b);
    }
    ChainComplex C2 = file.contains("complex_extension") ? io::decode_complex(file["complex_extension"], "complex_extension") : C;
    auto pc = pairing_cofibration(M, Mp, summand_cofibration(C, C2));
    auto rep = verify_cofibration(pc.comparison, sample_options(o), cutoff(o));
    json counts = json::array();
    bool count_ok = true;
    for (int n = pc.comparison.i.target().lo(); n <= pc.comparison.i.target().hi(); ++n) {
      std::size_t w = pc.pushout.W.rank(n), u = pc.comparison.U.rank(n), t = pc.comparison.i.target().rank(n);
      bool ok = w + u == t;
      count_ok = count_ok && ok;
      counts.push_back({{"degree", n}, {"pushout", w}, {"complement", u}, {"target", t}, {"matches", ok}});
    }
    Verdict v = count_ok ? Verdict(rep.failures.empty() ? rep.section_bound : Verdict::refuted) : Verdict::refuted;
    out.verdict = combine(out.verdict, v);
    json fails = json::array();
    for (const auto& f : rep.failures) fails.push_back(io::encode(f));
    out.result["cofibration_condition"] = {{"complement", io::encode(pc.complement)},
                                           {"basis_counts", counts},
                                           {"failures", fails},
                                           {"section_bound", to_string(rep.section_bound)}};
    out.summary.push_back("cofibration condition: " + std::string(v == Verdict::refuted ? "FAILS" : "holds") +
                          " (complement " + std::to_string(pc.complement.size()) + " labels)");
  }
  return out;
}

// -------------------------------------------------------------- obstruction

Outcome obstruction(const Options& o) {
  auto comma = o.weights.find(',');
  if (comma == std::string::npos) throw io::SchemaError("--weights", "expected two weightings like id,log");
  NaturalWeight w1, w0;
  try {
    w1 = parse_natural_weight(o.weights.substr(0, comma));
    w0 = parse_natural_weight(o.weights.substr(comma + 1));
  } catch (const std::invalid_argument& e) {
    throw io::SchemaError("--weights", e.what());
  }
  auto rep = two_term_obstruction(w1, w0, o.cls, o.degree, io::parse_integer(o.coeff_bound, "--coeff-bound"),
                                  io::parse_integer(o.nmax, "--nmax"), o.jobs, sample_options(o));
  Outcome out;
  out.result = io::encode(rep);
  out.verdict = rep.verdict;
  out.summary.push_back("0 -> Z[N," + to_string(w1) + "] -> Z[N," + to_string(w0) + "] -> 0: " + rep.conclusion);
  for (const auto& row : rep.search.table) out.summary.push_back("  " + short_margin(row));
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Bounded homological algebra workbench", "bhk"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--class", o.cls, "bounding class: L, P, E, Etilde");
    s->add_option("--schedule", o.schedule, "bounding functions, comma separated")->delimiter(',');
    s->add_option("--trials", o.trials, "sample budget / instance count");
    s->add_option("--seed", o.seed, "RNG seed");
    s->add_option("--cutoff-weight", o.cutoff_weight, "basis ball radius");
    s->add_option("--degree", o.degree, "polynomial degree D");
    s->add_option("--coeff-bound", o.coeff_bound, "coefficient bound M (decimal or b^e)");
    s->add_option("--nmax", o.nmax, "basis cutoff N_max (decimal or b^e)");
    s->add_option("--jobs", o.jobs, "worker threads");
    s->add_option("--out", o.out, "write the JSON report here");
  };
  struct Sub {
    const char* name;
    const char* help;
    bool takes_file;
  };
  std::vector<Sub> subs = {{"check-map", "check boundedness of a map", true},
                           {"check-complex", "validate a chain complex file", true},
                           {"axiom-suite", "run the Waldhausen axiom suite", false},
                           {"staircase", "build and check S_n staircases", false},
                           {"pair", "pair a monomial object with a complex", true},
                           {"obstruction", "two-term obstruction experiment", false}};
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    common(sub);
    if (s.takes_file) sub->add_option("file", o.input, "input JSON file")->required();
    std::string name = s.name;
    if (name == "check-map") sub->add_option("--direction", o.direction, "forward or inverse");
    if (name == "axiom-suite") {
      sub->add_option("--profile", o.profile, "e.g. Fin/free/Bh or fin-free-bh");
      sub->add_flag("--plant-bad-mono", o.plant_bad_mono, "feed Cof3 a mono without a section");
    }
    if (name == "staircase") sub->add_option("--n", o.n, "filtration length (2..4)");
    if (name == "obstruction") sub->add_option("--weights", o.weights, "degree-1 and degree-0 weightings, e.g. id,log");
  }
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 3;
  }
  for (auto* s : app.get_subcommands()) o.command = s->get_name();

  Outcome res;
  try {
    if (o.command == "check-map") res = check_map(o);
    else if (o.command == "check-complex") res = check_complex(o);
    else if (o.command == "axiom-suite") res = axiom_suite(o);
    else if (o.command == "staircase") res = staircase(o);
    else if (o.command == "pair") res = pair_cmd(o);
    else res = obstruction(o);
  } catch (const io::SchemaError& e) {
    err << "schema error at " << e.what() << "\n";
    return 3;
  } catch (const json::exception& e) {
    err << "schema error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  } catch (const std::out_of_range& e) {
    err << "input error: " << e.what() << "\n";
    return 3;
  }
  json rep = io::report(o.command, config_json(o), res.result, res.verdict);
  std::ostream* summary = &err;
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) {
      err << "cannot write " << o.out << "\n";
      return 3;
    }
    f << io::dump(rep);
    summary = &out;
  } else {
    out << io::dump(rep);
  }
  for (const auto& line : res.summary) *summary << line << "\n";
  *summary << verdict_line(res.verdict) << "\n";
  return exit_code(res.verdict);
}

}  // namespace bhk
