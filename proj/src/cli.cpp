#include "monodromy/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <limits>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "monodromy/engine.hpp"
#include "monodromy/errors.hpp"
#include "monodromy/fforacle.hpp"
#include "monodromy/groupdiv.hpp"
#include "monodromy/serialize.hpp"
#include "monodromy/typecomb.hpp"

namespace monodromy::cli {

namespace {

struct CountRequest {
  int n;
  int k;
  CountMode mode;
};

CountRequest resolve_count(const RunConfig& c) {
  if (!c.n) throw InputError("--n is required");
  if (c.k && c.g) throw InputError("--k and --g are mutually exclusive");
  CountRequest r{*c.n, 0, CountMode::kSemisimple};
  if (c.g) {
    if (c.mode) throw InputError("--mode goes with --k; with --g the mode follows --prank");
    if (*c.g < 1) throw InputError("--g must be >= 1");
    const int prank = c.prank.value_or(0);
    if (prank != 0 && prank != 1) throw InputError("--prank must be 0 or 1");
    r.k = 2 * *c.g;
    r.mode = prank == 0 ? CountMode::kSemisimple : CountMode::kMixed;
  } else if (c.k) {
    if (c.prank) throw InputError("--prank goes with --g; with --k use --mode");
    r.k = *c.k;
    r.mode = mode_from_name(c.mode.value_or("ss"));
  } else {
    throw InputError("one of --k or --g is required");
  }
  if (r.n < 1) throw InputError("--n must be >= 1");
  if (r.k < 0) throw InvalidArity("--k must be >= 0");
  if (!c.budget_override && (r.n > kDefaultMaxN || r.k > kDefaultMaxK)) {
    throw BudgetExceeded("n <= " + std::to_string(kDefaultMaxN) + " and k <= " + std::to_string(kDefaultMaxK) +
                         " without --budget-override");
  }
  return r;
}

CountingPolynomial compute(CountingEngine& engine, const CountRequest& r) {
  switch (r.mode) {
    case CountMode::kSemisimple:
      return engine.count_semisimple_tuples(r.n, r.k);
    case CountMode::kMixed:
      return engine.count_mixed_tuples(r.n, r.k);
    case CountMode::kConjugacy:
      return engine.count_conjugacy_classes(r.n, r.k);
  }
  throw InputError("unknown mode");
}

CountingPolynomial compute_with_cache(const RunConfig& c, const CountRequest& r) {
  CountingEngine engine;
  if (c.cache) engine.load_cache(*c.cache);
  CountingPolynomial p = compute(engine, r);
  if (c.cache) engine.save_cache(*c.cache);
  return p;
}

Integer as_integer(const Rational& v) {
  if (v.get_den() != 1) throw IntegralityViolation("non-integer value " + v.get_str());
  return v.get_num();
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

const char* yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

// ---------------------------------------------------------------- poly

int cmd_poly(const RunConfig& c, std::ostream& out) {
  const CountRequest r = resolve_count(c);
  const CountingPolynomial p = compute_with_cache(c, r);

  std::optional<DegreeReport> degree;
  std::optional<LaurentPoly> laurent;
  if (r.mode != CountMode::kConjugacy && r.k >= 1) {
    degree = check_degree_monic(p);
    laurent = check_laurent_quotient(p);
  }

  if (c.format == Format::kJson) {
    Json j{{"command", "poly"},
           {"n", r.n},
           {"k", r.k},
           {"mode", std::string(mode_name(r.mode))},
           {"polynomial", poly_to_json(p.poly)},
           {"text", p.poly.to_string()},
           {"checks", nullptr}};
    if (c.g) {
      j["g"] = *c.g;
      j["prank"] = c.prank.value_or(0);
    }
    if (degree) {
      j["checks"] = Json{{"degree", degree->degree},
                         {"lowerBound", degree->lower_bound},
                         {"meetsBound", degree->meets_bound},
                         {"boundAsserted", degree->bound_asserted},
                         {"monic", degree->monic},
                         {"equalityAsserted", degree->equality_asserted},
                         {"laurent", laurent_to_json(*laurent)},
                         {"laurentText", laurent->to_string()}};
    }
    emit(out, j);
    return kOk;
  }

  out << "n=" << r.n << " k=" << r.k << " mode=" << mode_name(r.mode) << '\n';
  out << "P(q) = " << p.poly.to_string() << '\n';
  if (degree) {
    out << "degree " << degree->degree << ", n^2+(k-1)n = " << degree->lower_bound
        << (degree->bound_asserted ? " (asserted)" : " (reported)") << ", monic " << yes_no(degree->monic) << '\n';
    out << "P/|GL_n| = " << laurent->to_string() << '\n';
  }
  return kOk;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& c, std::ostream& out) {
  const CountRequest r = resolve_count(c);
  if (c.q.empty()) throw InputError("--q is required");
  const CountingPolynomial p = compute_with_cache(c, r);

  OracleLimits limits;
  limits.override_budget = c.budget_override;

  struct Row {
    int q;
    Integer predicted;
    Integer brute;
  };
  std::vector<Row> rows;
  for (int q : c.q) {
    const FiniteField f = FiniteField::for_order(q);
    const Integer predicted = as_integer(p.poly.eval(Rational(q)));
    std::uint64_t brute = 0;
    switch (r.mode) {
      case CountMode::kSemisimple:
        brute = brute_hom_count(r.n, f, r.k, TupleMode::kAllSemisimple, limits);
        break;
      case CountMode::kMixed:
        brute = brute_hom_count(r.n, f, r.k, TupleMode::kLastFree, limits);
        break;
      case CountMode::kConjugacy:
        brute = brute_conj_count(r.n, f, r.k, limits);
        break;
    }
    rows.push_back({q, predicted, Integer(std::to_string(brute))});
  }
  const bool all = std::all_of(rows.begin(), rows.end(), [](const Row& row) { return row.predicted == row.brute; });

  if (c.format == Format::kJson) {
    Json jrows = Json::array();
    for (const auto& row : rows) {
      jrows.push_back({{"q", row.q},
                       {"predicted", integer_to_json(row.predicted)},
                       {"bruteForce", integer_to_json(row.brute)},
                       {"match", row.predicted == row.brute}});
    }
    emit(out, Json{{"command", "verify"},
                   {"n", r.n},
                   {"k", r.k},
                   {"mode", std::string(mode_name(r.mode))},
                   {"rows", jrows},
                   {"allMatch", all}});
  } else {
    out << "n=" << r.n << " k=" << r.k << " mode=" << mode_name(r.mode) << '\n';
    out << std::setw(4) << "q" << std::setw(16) << "predicted" << std::setw(16) << "brute-force" << "  match\n";
    for (const auto& row : rows) {
      out << std::setw(4) << row.q << std::setw(16) << row.predicted.get_str() << std::setw(16)
          << row.brute.get_str() << "  " << yes_no(row.predicted == row.brute) << '\n';
    }
  }
  return all ? kOk : kMismatch;
}

// ---------------------------------------------------------------- census

int cmd_census(const RunConfig& c, std::ostream& out) {
  if (!c.n) throw InputError("--n is required");
  if (*c.n < 1) throw InputError("--n must be >= 1");
  if (c.q.empty()) throw InputError("--q is required");
  OracleLimits limits;
  limits.override_budget = c.budget_override;

  struct Row {
    int q;
    TypeOfN type;
    Integer predicted;
    std::uint64_t observed;
  };
  std::vector<Row> rows;
  for (int q : c.q) {
    const FiniteField f = FiniteField::for_order(q);
    for (const auto& rec : poly_type_census(f, *c.n, limits)) {
      rows.push_back({q, rec.type, as_integer(psi(rec.type).eval(Rational(q))), rec.count});
    }
  }
  auto matches = [](const Row& row) { return row.predicted == Integer(std::to_string(row.observed)); };
  const bool all = std::all_of(rows.begin(), rows.end(), matches);

  if (c.format == Format::kJson) {
    Json jrows = Json::array();
    for (const auto& row : rows) {
      jrows.push_back({{"q", row.q},
                       {"type", type_to_json(row.type)},
                       {"label", row.type.to_string()},
                       {"predicted", integer_to_json(row.predicted)},
                       {"observed", row.observed},
                       {"match", matches(row)}});
    }
    emit(out, Json{{"command", "census"}, {"n", *c.n}, {"rows", jrows}, {"allMatch", all}});
  } else {
    out << std::setw(4) << "q" << "  " << std::left << std::setw(28) << "type" << std::right << std::setw(12)
        << "psi(q)" << std::setw(12) << "observed" << "  match\n";
    for (const auto& row : rows) {
      out << std::setw(4) << row.q << "  " << std::left << std::setw(28) << row.type.to_string() << std::right
          << std::setw(12) << row.predicted.get_str() << std::setw(12) << row.observed << "  "
          << yes_no(matches(row)) << '\n';
    }
  }
  return all ? kOk : kMismatch;
}

// ---------------------------------------------------------------- divisibility

namespace {

std::vector<std::set<int>> prime_sets(const RunConfig& c) {
  if (c.primes) return {std::set<int>(c.primes->begin(), c.primes->end())};
  return {{}, {2}, {3}, {2, 3}};
}

}  // namespace

int cmd_divisibility(const RunConfig& c, std::ostream& out) {
  std::vector<CorpusGroup> corpus = c.corpus ? load_corpus(*c.corpus) : parse_corpus(default_corpus_text());
  if (c.group) {
    std::erase_if(corpus, [&](const CorpusGroup& g) { return g.name != *c.group; });
    if (corpus.empty()) throw InputError("no group named '" + *c.group + "' in the corpus");
  }
  if (c.k && (*c.k < 1)) throw InvalidArity("--k must be >= 1");
  if (c.frobenius_n && *c.frobenius_n < 1) throw InputError("--n must be >= 1");

  HomLimits hom_limits;
  hom_limits.override_budget = c.budget_override;
  const std::size_t closure_limit = c.budget_override ? std::numeric_limits<std::size_t>::max() : 10'000;
  // A lone --n asks only for the Frobenius count.
  std::vector<int> ks;
  if (c.k) {
    ks.push_back(*c.k);
  } else if (!c.frobenius_n || c.primes) {
    ks = {1, 2, 3};
  }
  const auto sets = prime_sets(c);

  Json jgroups = Json::array();
  bool all = true;
  std::ostringstream table;
  for (const auto& entry : corpus) {
    const FiniteGroupTable g = FiniteGroupTable::generate(entry.generators, closure_limit);
    bool passed = true;

    Json jfrob = Json::array();
    std::vector<std::uint64_t> ns;
    if (c.frobenius_n) {
      ns.push_back(*c.frobenius_n);
    } else {
      for (std::uint64_t d = 1; d <= g.order(); ++d) {
        if (g.order() % d == 0) ns.push_back(d);
      }
    }
    std::size_t frob_failures = 0;
    for (auto n : ns) {
      const FrobeniusResult fr = frobenius_count(g, n);
      if (fr.applicable && !fr.divisible) ++frob_failures;
      jfrob.push_back(frobenius_to_json(fr));
      if (c.frobenius_n) {
        table << entry.name << ": #{x : x^" << n << " = 1} = " << fr.count << ", divisible by " << n << ' '
              << yes_no(fr.divisible) << (fr.applicable ? "" : " (n does not divide |G|)") << '\n';
      }
    }

    const auto triples = enumerate_coset_triples(g);
    Json jcoset_failures = Json::array();
    for (const auto& t : triples) {
      const CosetResult cr = coset_p_power_count(g, t.h_generators, t.x, t.p);
      if (cr.divisible) continue;
      Json h = Json::array();
      for (auto id : t.h_generators) h.push_back(g.element(id).to_string());
      Json jc = coset_to_json(cr);
      jc["h"] = h;
      jc["x"] = g.element(t.x).to_string();
      jc["p"] = t.p;
      jcoset_failures.push_back(jc);
    }

    Json jreports = Json::array();
    std::size_t report_failures = 0;
    for (int k : ks) {
      for (const auto& s : sets) {
        const PrimeSet primes(s);
        const DivisibilityReport rep = divisibility_report(g, k, primes, hom_limits);
        if (!rep.passed) ++report_failures;
        Json jr = divisibility_to_json(rep);
        jr["k"] = k;
        jr["S"] = Json(std::vector<int>(s.begin(), s.end()));
        jreports.push_back(jr);
        table << entry.name << ": k=" << k << " S=" << primes.to_string() << " #Hom=" << rep.hom_count.get_str()
              << " #Hom/|G|=" << rep.quotient.get_str() << ' ' << (rep.passed ? "pass" : "FAIL") << '\n';
      }
    }

    passed = frob_failures == 0 && jcoset_failures.empty() && report_failures == 0;
    all = all && passed;
    table << entry.name << " (order " << g.order() << "): frobenius " << ns.size() - frob_failures << '/'
          << ns.size() << ", coset triples " << triples.size() - jcoset_failures.size() << '/' << triples.size()
          << ", reports " << ks.size() * sets.size() - report_failures << '/' << ks.size() * sets.size() << ' '
          << (passed ? "pass" : "FAIL") << '\n';
    jgroups.push_back({{"name", entry.name},
                       {"order", g.order()},
                       {"frobenius", jfrob},
                       {"cosetTriples", triples.size()},
                       {"cosetFailures", jcoset_failures},
                       {"reports", jreports},
                       {"passed", passed}});
  }

  if (c.format == Format::kJson) {
    emit(out, Json{{"command", "divisibility"}, {"groups", jgroups}, {"allPassed", all}});
  } else {
    out << table.str();
  }
  return all ? kOk : kMismatch;
}

// ---------------------------------------------------------------- dispatch

namespace {

std::vector<int> parse_prime_list(const std::string& text) {
  std::vector<int> out;
  if (text.empty() || text == "none") return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      out.push_back(v);
    } catch (const std::logic_error&) {
      throw InputError("--S expects a comma-separated list of primes, got '" + text + "'");
    }
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact counting polynomials for commuting matrix tuples over finite fields", "monodromy"};
  app.require_subcommand(1);

  RunConfig c;
  std::string format = "json";
  std::string primes;
  int n = 0, k = 0, g = 0, prank = 0;
  std::uint64_t frob_n = 0;
  std::string mode, cache, corpus, group;

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--budget-override", c.budget_override, "Lift size and enumeration limits");
  };
  auto add_count = [&](CLI::App* sub) {
    sub->add_option("--n", n, "Matrix size")->required();
    auto* ok = sub->add_option("--k", k, "Tuple length");
    auto* og = sub->add_option("--g", g, "Abelian variety dimension (k = 2g)");
    ok->excludes(og);
    sub->add_option("--prank", prank, "p-rank (0 or 1), with --g")->check(CLI::IsMember({0, 1}));
    sub->add_option("--mode", mode, "ss, mixed or conj, with --k")->check(CLI::IsMember({"ss", "mixed", "conj"}));
    sub->add_option("--cache", cache, "Weight cache file");
  };

  auto* poly = app.add_subcommand("poly", "Print the counting polynomial and its checks");
  add_count(poly);
  add_format(poly);

  auto* verify = app.add_subcommand("verify", "Compare the polynomial with brute-force enumeration");
  add_count(verify);
  verify->add_option("--q", c.q, "Field orders")->delimiter(',')->required();
  add_format(verify);

  auto* census = app.add_subcommand("census", "Tally factorization types of monic polynomials");
  census->add_option("--n", n, "Polynomial degree")->required();
  census->add_option("--q", c.q, "Field orders")->delimiter(',')->required();
  add_format(census);

  auto* divis = app.add_subcommand("divisibility", "Run the divisibility checks on a group corpus");
  divis->add_option("--corpus", corpus, "Corpus file (default: built-in)");
  divis->add_option("--group", group, "Only this group");
  divis->add_option("--k", k, "Only this tuple length");
  divis->add_option("--S", primes, "Only this prime set, comma-separated ('none' for the empty set)");
  divis->add_option("--n", frob_n, "Only this Frobenius exponent");
  add_format(divis);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  CLI::App* sub = app.get_subcommands().front();
  auto given = [&](const char* name) { return sub->get_option_no_throw(name) && sub->count(name) > 0; };
  c.command = sub->get_name();
  c.format = format == "table" ? Format::kTable : Format::kJson;

  try {
    if (c.command == "divisibility") {
      if (given("--corpus")) c.corpus = corpus;
      if (given("--group")) c.group = group;
      if (given("--k")) c.k = k;
      if (given("--S")) c.primes = parse_prime_list(primes);
      if (given("--n")) c.frobenius_n = frob_n;
    } else {
      c.n = n;
      if (c.command != "census") {
        if (given("--k")) c.k = k;
        if (given("--g")) c.g = g;
        if (given("--prank")) c.prank = prank;
        if (given("--mode")) c.mode = mode;
        if (given("--cache")) c.cache = cache;
        if (const char* env = std::getenv("MONODROMY_CACHE"); env != nullptr && *env != '\0') c.cache = env;
      }
    }

    if (c.command == "poly") return cmd_poly(c, out);
    if (c.command == "verify") return cmd_verify(c, out);
    if (c.command == "census") return cmd_census(c, out);
    return cmd_divisibility(c, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const Error& e) {
    err << "invariant violation: " << e.what() << '\n';
    return kInvariantViolation;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
}

}  // namespace monodromy::cli
