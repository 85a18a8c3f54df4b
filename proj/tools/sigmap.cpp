#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include <sigmap/search.hpp>
#include <sigmap/verify.hpp>

namespace {

using namespace sigmap;

std::vector<PExp> parse_p_list(const std::string& s) {
  std::vector<PExp> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    if (tok.empty()) throw std::invalid_argument("empty entry in p list '" + s + "'");
    out.push_back(PExp::parse(tok));
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty p list");
  return out;
}

std::pair<std::size_t, std::size_t> parse_n_range(const std::string& s) {
  const std::size_t dots = s.find("..");
  const auto parse_one = [](const std::string& t) {
    std::size_t used = 0;
    const unsigned long v = std::stoul(t, &used);
    if (used != t.size() || v == 0) throw std::invalid_argument("bad atom count '" + t + "'");
    return static_cast<std::size_t>(v);
  };
  if (dots == std::string::npos) {
    const std::size_t n = parse_one(s);
    return {n, n};
  }
  const std::size_t lo = parse_one(s.substr(0, dots));
  const std::size_t hi = parse_one(s.substr(dots + 2));
  if (hi < lo) throw std::invalid_argument("empty range '" + s + "'");
  return {lo, hi};
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = std::min(s.find(',', pos), s.size());
    const std::string tok = s.substr(pos, comma - pos);
    std::size_t used = 0;
    out.push_back(std::stod(tok, &used));
    if (used != tok.size()) throw std::invalid_argument("bad number '" + tok + "'");
    pos = comma + 1;
  }
  return out;
}

void write_report(const std::string& path, const std::string& content) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open report file '" + path + "'");
  f << content;
}

struct ReproduceArgs {
  std::string which;
  std::size_t n = 5;
  bool n_given = false;
  std::string report;
};

int run_reproduce(const ReproduceArgs& a) {
  json rep;
  bool matches = false;
  if (a.which == "example1") {
    const UniformCounterexample ce = uniform_counterexample(a.n);
    rep = ce.to_json();
    matches = ce.matches_closed_form;
  } else {
    if (a.n_given) throw std::invalid_argument("--n applies to example1 only");
    const ThreeAtomCounterexample ce = three_atom_counterexample();
    rep = ce.to_json();
    matches = ce.matches_closed_form;
  }
  const std::string text = rep.dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  write_report(a.report, text);
  if (!matches) std::fputs("error: reproduction does not match the closed form\n", stderr);
  return matches ? 0 : 2;
}

struct VerifyArgs {
  std::string suite;
  long trials = 0; // 0 = per-suite default
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  std::string report;
};

int run_verify(const VerifyArgs& a) {
  SuiteReport rep;
  json extra;
  if (a.suite == "scalar") {
    rep = run_scalar_suite(a.trials ? a.trials : 100000, a.seed, a.tol);
  } else if (a.suite == "projections") {
    rep = run_projection_suite();
  } else if (a.suite == "majorization") {
    rep = run_majorization_suite(a.trials ? a.trials : 10000, a.seed, 1e-12, a.tol);
  } else if (a.suite == "reduction") {
    rep = run_reduction_suite(a.trials ? a.trials : 1000, a.seed);
  } else {
    rep = run_nc_suite(a.trials ? a.trials : 1000, a.seed, 1e-8, a.tol);
  }
  std::fputs(rep.table().c_str(), stdout);
  json out = rep.to_json();
  if (a.suite == "projections") {
    std::fputs(franchetti_table().c_str(), stdout);
    json rows = json::array();
    for (double p : {1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0}) {
      const InterpolationBounds b = interpolation_bound(PExp(p));
      json row;
      row["p"] = decimal_string(p);
      row["value"] = decimal_string(franchetti_norm(PExp(p)).value);
      row["bound_derived"] = decimal_string(b.derived);
      row["bound_comparison"] = decimal_string(b.comparison);
      rows.push_back(std::move(row));
    }
    out["franchetti_values"] = std::move(rows);
  }
  write_report(a.report, out.dump(2) + "\n");
  if (!rep.pass()) std::fputs("error: a proved inequality check failed\n", stderr);
  return rep.pass() ? 0 : 2;
}

struct ScanArgs {
  std::string n_range = "2..6";
  std::string p_list = "1,1.5,2,3";
  long budget = 20000;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  std::string out = "csv";
  std::string report;
};

int run_scan(const ScanArgs& a) {
  const auto [n_lo, n_hi] = parse_n_range(a.n_range);
  const auto grid = parse_p_list(a.p_list);
  if (a.out != "csv" && a.out != "json")
    throw std::invalid_argument("--out must be csv or json");
  const ScanTable table = conjecture_scan(n_lo, n_hi, grid, a.budget, a.seed, a.tol);
  const std::string text =
      a.out == "csv" ? table.to_csv() : table.to_json().dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  write_report(a.report, text);

  long flagged = 0;
  for (const ScanCell& c : table.cells) flagged += c.flagged ? 1 : 0;
  if (table.proved_violation) {
    std::fputs("error: violation flagged in a proved cell\n", stderr);
    return 2;
  }
  if (flagged > 0)
    std::fprintf(stderr, "note: %ld flagged cell(s), all outside the proved region\n", flagged);
  return 0;
}

struct SearchArgs {
  std::string objective;
  std::size_t n = 5;
  std::string p = "1";
  long budget = 10000;
  std::uint64_t seed = 1;
  double tol = kDefaultTol;
  std::string measure = "uniform";
  std::string weights;
  int restarts = 20;
  Eigen::Index d = 2;
  bool d_given = false;
  std::string state = "tracial";
  bool exact = false;
  std::string report;
};

int run_search(const SearchArgs& a) {
  SearchTask task;
  task.objective = parse_objective(a.objective);
  task.n = a.n;
  if (a.p.find(',') != std::string::npos)
    throw std::invalid_argument("search takes a single exponent, not a list");
  task.p = PExp::parse(a.p);
  task.budget = a.budget;
  task.seed = a.seed;
  task.tol = a.tol;
  task.restarts = a.restarts;

  if (!a.weights.empty()) {
    task.family = MeasureFamily::fixed;
    task.fixed_weights = parse_double_list(a.weights);
    task.n = task.fixed_weights.size();
  } else if (a.measure == "uniform") {
    task.family = MeasureFamily::uniform;
  } else if (a.measure == "random") {
    task.family = MeasureFamily::simplex_random;
  } else {
    throw std::invalid_argument("--measure must be uniform or random");
  }

  task.d = a.d;
  if (a.state == "tracial") {
    task.nc_tracial = true;
  } else if (a.state == "nontracial") {
    task.nc_tracial = false;
  } else {
    task.nc_spectrum = parse_double_list(a.state);
    if (a.d_given && a.d != static_cast<Eigen::Index>(task.nc_spectrum.size()))
      throw std::invalid_argument("--d conflicts with the spectrum length");
    task.d = static_cast<Eigen::Index>(task.nc_spectrum.size());
  }

  if (a.exact && task.objective != Objective::nc_product && !task.p.is(1.0) && !task.p.is(2.0))
    throw std::invalid_argument("--exact needs p in {1, 2}");

  const SearchResult res = maximize_defect(task);
  const bool flagged = violation_flagged(res, task.tol);
  const std::string text = search_report_json(task, res, flagged, a.exact).dump(2) + "\n";
  std::fputs(text.c_str(), stdout);
  write_report(a.report, text);

  if (flagged && search_region_proved(task)) {
    std::fputs("error: violation flagged in a proved region\n", stderr);
    return 2;
  }
  if (flagged) std::fputs("note: violation found outside the proved region\n", stderr);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification and counterexample search for product and inverse bounds on"
               " centered p-th moments"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Config file (TOML-like key = value; flags override)");

  ReproduceArgs ra;
  CLI::App* rep = app.add_subcommand(
      "reproduce", "Recompute a counterexample construction in exact rational arithmetic");
  rep->add_option("which", ra.which, "example1 (uniform family) or example2 (three atoms)")
      ->required()
      ->check(CLI::IsMember({"example1", "example2"}));
  rep->add_option("--n", ra.n, "atom count for example1 (needs n >= 5)");
  rep->add_option("--report", ra.report, "also write the JSON report to this file");

  VerifyArgs va;
  CLI::App* ver = app.add_subcommand("verify", "Run a proved-inequality verification suite");
  ver->add_option("suite", va.suite, "scalar | projections | majorization | reduction | nc")
      ->required()
      ->check(CLI::IsMember({"scalar", "projections", "majorization", "reduction", "nc"}));
  ver->add_option("--trials", va.trials, "instances per cell (0 = suite default)");
  ver->add_option("--seed", va.seed, "RNG seed");
  ver->add_option("--tol", va.tol, "defect tolerance");
  ver->add_option("--report", va.report, "also write the JSON report to this file");

  ScanArgs sa;
  CLI::App* scn = app.add_subcommand(
      "scan", "Sweep (n, p, objective) cells with defect search on uniform spaces."
              " CSV columns: n,p,objective,best_defect,flagged");
  scn->add_option("--n", sa.n_range, "atom count or range a..b");
  scn->add_option("--p", sa.p_list, "comma-separated exponents; inf accepted");
  scn->add_option("--budget", sa.budget, "objective evaluations per cell");
  scn->add_option("--seed", sa.seed, "RNG seed");
  scn->add_option("--tol", sa.tol, "flagging tolerance");
  scn->add_option("--out", sa.out, "csv | json");
  scn->add_option("--report", sa.report, "also write the report to this file");

  SearchArgs ea;
  CLI::App* sch = app.add_subcommand("search", "Maximize one defect objective");
  sch->add_option("--objective", ea.objective,
                  "leibniz | strong_leibniz | auxiliary | nc_product")
      ->required()
      ->check(CLI::IsMember({"leibniz", "strong_leibniz", "auxiliary", "nc_product"}));
  sch->add_option("--n", ea.n, "atom count (scalar objectives)");
  sch->add_option("--p", ea.p, "exponent; inf accepted");
  sch->add_option("--budget", ea.budget, "objective evaluations");
  sch->add_option("--seed", ea.seed, "RNG seed");
  sch->add_option("--tol", ea.tol, "flagging tolerance");
  sch->add_option("--measure", ea.measure, "uniform | random");
  sch->add_option("--weights", ea.weights, "fixed measure as comma-separated weights");
  sch->add_option("--restarts", ea.restarts, "search restarts");
  CLI::Option* dopt = sch->add_option("--d", ea.d, "matrix dimension (nc_product)");
  sch->add_option("--state", ea.state,
                  "tracial | nontracial | comma-separated spectrum (nc_product)");
  sch->add_flag("--exact", ea.exact, "include the exact rational witness (p in {1, 2})");
  sch->add_option("--report", ea.report, "also write the JSON report to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*rep) {
      ra.n_given = rep->count("--n") > 0;
      return run_reproduce(ra);
    }
    if (*ver) return run_verify(va);
    if (*scn) return run_scan(sa);
    ea.d_given = dopt->count() > 0;
    return run_search(ea);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
