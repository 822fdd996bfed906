#include "gpbayes/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "gpbayes/approximation.hpp"
#include "gpbayes/errors.hpp"
#include "gpbayes/gp_model.hpp"
#include "gpbayes/output.hpp"
#include "gpbayes/posterior.hpp"

namespace gpbayes::cli {

namespace {

using output::Cell;
using output::Document;
using output::Table;

struct ModelArgs {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  long x = 0;
  double eps_tail = kDefaultEpsTail;
  double epsilon_ineq = kDefaultInequalityEpsilon;
  std::string format = "csv";
  std::string kind = "theorem1";
  std::string suite;
  std::string grid_file;
};

Cell real(double v) { return v; }
Cell integer(long v) { return static_cast<std::int64_t>(v); }
Cell text(std::string v) { return v; }

void add_model_options(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("-a", args.a, "model constant a")->required();
  cmd->add_option("-b", args.b, "model constant b, 0 < b < 1")->required();
  cmd->add_option("-c", args.c, "model constant c")->required();
  cmd->add_option("-x", args.x, "observed count")->required()->check(CLI::NonNegativeNumber);
  cmd->add_option("--eps-tail", args.eps_tail, "posterior truncation tolerance")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1e-3));
}

void add_format_option(CLI::App* cmd, ModelArgs& args) {
  cmd->add_option("--format", args.format, "output format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
}

std::vector<std::pair<std::string, Cell>> model_echo(const ModelArgs& args,
                                                     const ModelParams& params) {
  return {{"a", real(args.a)},           {"b", real(args.b)},
          {"c", real(args.c)},           {"x", integer(args.x)},
          {"m", real(params.m())},       {"eps_tail", real(args.eps_tail)}};
}

std::pair<Cell, Cell> moments_cells(const PosteriorTable& table) {
  if (table.tail_bound > 1e-6) return {Cell{}, Cell{}};
  const PosteriorMoments mom = posterior_moments(table);
  return {real(mom.mean), real(mom.variance)};
}

Document cmd_posterior(const ModelArgs& args) {
  const ModelParams params = derive_params(args.a, args.b, args.c);
  const PosteriorTable table = exact_posterior(params, args.x, args.eps_tail);

  Document doc{"posterior", model_echo(args, params), {}};
  Table rows{"posterior", {"k", "prob", "log_weight"}, {}};
  rows.rows.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    rows.rows.push_back({integer(table.k_min + static_cast<long>(i)), real(table.probs[i]),
                         real(table.log_weights[i])});
  }
  const auto [mean, variance] = moments_cells(table);
  Table summary{"summary",
                {"k_min", "k_max", "tail_bound", "log_normalizer", "mean", "variance"},
                {{integer(table.k_min), integer(table.k_max), real(table.tail_bound),
                  real(table.log_normalizer), mean, variance}}};
  doc.tables.push_back(std::move(rows));
  doc.tables.push_back(std::move(summary));
  return doc;
}

Document cmd_approx(const ModelArgs& args) {
  const ModelParams params = derive_params(args.a, args.b, args.c);
  const PosteriorTable table = exact_posterior(params, args.x, args.eps_tail);
  GammaApprox gamma;
  if (args.kind == "theorem1") {
    gamma = theorem1_gamma(params, args.x);
  } else {
    const PosteriorMoments mom = posterior_moments(table);
    gamma = moment_matched_gamma(mom.mean, mom.variance);
  }
  const DiscretePmf raw = discretize_gamma(gamma, table.k_min, table.k_max, false);
  const DiscretePmf renorm = discretize_gamma(gamma, table.k_min, table.k_max, true);

  Document doc{"approx", model_echo(args, params), {}};
  doc.params.emplace_back("kind", text(args.kind));
  Table params_table{"gamma",
                     {"kind", "shape", "scale", "mean", "variance", "raw_total"},
                     {{text(std::string(to_string(gamma.kind))), real(gamma.shape),
                       real(gamma.scale), real(gamma.mean()), real(gamma.variance()),
                       real(raw.raw_total)}}};
  Table pmf{"pmf", {"k", "prob", "prob_renormalized"}, {}};
  pmf.rows.reserve(raw.probs.size());
  for (std::size_t i = 0; i < raw.probs.size(); ++i) {
    pmf.rows.push_back({integer(raw.k_min + static_cast<long>(i)), real(raw.probs[i]),
                        real(renorm.probs[i])});
  }
  doc.tables.push_back(std::move(params_table));
  doc.tables.push_back(std::move(pmf));
  return doc;
}

const std::vector<std::string>& report_columns() {
  static const std::vector<std::string> columns = {
      "kind",        "tv",           "kl",          "sup_abs",
      "mean_exact",  "var_exact",    "mean_approx", "var_approx",
      "shape",       "scale",        "raw_total",   "dropped_term_ratio",
      "inequality_holds", "inequality_lhs", "inequality_rhs", "k_min",
      "k_max"};
  return columns;
}

std::vector<Cell> report_cells(const ComparisonReport& r) {
  return {text(std::string(to_string(r.kind))),
          real(r.tv),
          real(r.kl),
          real(r.sup_abs),
          real(r.mean_exact),
          real(r.var_exact),
          real(r.mean_approx),
          real(r.var_approx),
          real(r.shape),
          real(r.scale),
          real(r.raw_total),
          real(r.dropped_term_ratio),
          Cell{r.inequality_holds},
          real(r.inequality_lhs),
          real(r.inequality_rhs),
          integer(r.k_min),
          integer(r.k_max)};
}

Cell ratio(double p, double q) { return q > 0.0 ? real(p / q) : Cell{}; }

Document cmd_compare(const ModelArgs& args) {
  const ModelParams params = derive_params(args.a, args.b, args.c);
  const PosteriorTable table = exact_posterior(params, args.x, args.eps_tail);
  const PosteriorMoments mom = posterior_moments(table);
  const GammaApprox t1 = theorem1_gamma(params, args.x);
  const GammaApprox mm = moment_matched_gamma(mom.mean, mom.variance);

  Document doc{"compare", model_echo(args, params), {}};
  doc.params.emplace_back("epsilon_ineq", real(args.epsilon_ineq));
  doc.params.emplace_back("kl_direction", text("KL(exact || approx)"));

  Table reports{"reports", report_columns(), {}};
  reports.rows.push_back(report_cells(compare_approximation(params, table, t1, args.epsilon_ineq)));
  reports.rows.push_back(report_cells(compare_approximation(params, table, mm, args.epsilon_ineq)));

  const DiscretePmf t1_pmf = discretize_gamma(t1, table.k_min, table.k_max, true);
  const DiscretePmf mm_pmf = discretize_gamma(mm, table.k_min, table.k_max, true);
  Table overlay{"overlay",
                {"k", "exact", "theorem1", "moment_matched", "ratio_theorem1",
                 "ratio_moment_matched"},
                {}};
  overlay.rows.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const double p = table.probs[i];
    overlay.rows.push_back({integer(table.k_min + static_cast<long>(i)), real(p),
                            real(t1_pmf.probs[i]), real(mm_pmf.probs[i]),
                            ratio(p, t1_pmf.probs[i]), ratio(p, mm_pmf.probs[i])});
  }
  doc.tables.push_back(std::move(reports));
  doc.tables.push_back(std::move(overlay));
  return doc;
}

VerifySuite parse_suite(const std::string& name) {
  if (name == "lerch") return VerifySuite::lerch;
  if (name == "bernoulli") return VerifySuite::bernoulli;
  if (name == "powersum") return VerifySuite::powersum;
  return VerifySuite::all;
}

Document cmd_verify(const ModelArgs& args, bool& all_pass) {
  const std::vector<VerificationRow> rows = run_verification(parse_suite(args.suite));
  Document doc{"verify", {{"suite", text(args.suite)}}, {}};
  Table checks{"checks", {"check", "params", "relative_error", "tolerance", "pass"}, {}};
  all_pass = true;
  for (const auto& row : rows) {
    all_pass = all_pass && row.pass;
    checks.rows.push_back({text(row.check), text(row.params), real(row.relative_error),
                           real(row.tolerance), Cell{row.pass}});
  }
  doc.tables.push_back(std::move(checks));
  return doc;
}

Document cmd_sweep(const ModelArgs& args) {
  std::vector<SweepPoint> grid;
  if (args.grid_file == "-") {
    grid = parse_grid(std::cin);
  } else {
    std::ifstream in(args.grid_file);
    if (!in) throw UsageError("cannot open grid file '" + args.grid_file + "'");
    grid = parse_grid(in);
  }
  const std::vector<SweepRecord> records = sweep(grid, args.eps_tail, args.epsilon_ineq);

  Document doc{"sweep",
               {{"grid_file", text(args.grid_file)},
                {"eps_tail", real(args.eps_tail)},
                {"epsilon_ineq", real(args.epsilon_ineq)},
                {"kl_direction", text("KL(exact || approx)")}},
               {}};
  std::vector<std::string> columns = {"index", "a", "b", "c", "x", "m", "status", "error"};
  const auto& metric_columns = report_columns();
  columns.insert(columns.end(), metric_columns.begin(), metric_columns.end());
  Table reports{"reports", columns, {}};
  for (const SweepRecord& rec : records) {
    std::vector<Cell> row = {integer(static_cast<long>(rec.index)), real(rec.point.a),
                             real(rec.point.b), real(rec.point.c), integer(rec.point.x)};
    if (rec.report) {
      row.push_back(real(rec.report->m));
      row.push_back(text("ok"));
      row.push_back(text(""));
      auto cells = report_cells(*rec.report);
      row.insert(row.end(), cells.begin(), cells.end());
    } else {
      row.push_back(Cell{});
      row.push_back(text("error"));
      row.push_back(text(rec.error));
      row.push_back(text(std::string(to_string(rec.kind))));
      row.resize(columns.size());
    }
    reports.rows.push_back(std::move(row));
  }
  doc.tables.push_back(std::move(reports));
  return doc;
}

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

std::vector<SweepPoint> parse_grid(std::istream& is) {
  std::vector<SweepPoint> grid;
  std::string line;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> fields;
    std::stringstream ss(body);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    const std::string where = "grid line " + std::to_string(lineno);
    if (fields.size() != 4) {
      throw UsageError(where + ": expected 4 fields a,b,c,x, got " +
                       std::to_string(fields.size()));
    }
    SweepPoint pt;
    try {
      std::size_t pos = 0;
      pt.a = std::stod(fields[0], &pos);
      if (pos != fields[0].size()) throw std::invalid_argument("a");
      pt.b = std::stod(fields[1], &pos);
      if (pos != fields[1].size()) throw std::invalid_argument("b");
      pt.c = std::stod(fields[2], &pos);
      if (pos != fields[2].size()) throw std::invalid_argument("c");
      pt.x = std::stol(fields[3], &pos);
      if (pos != fields[3].size()) throw std::invalid_argument("x");
    } catch (const std::logic_error&) {
      throw UsageError(where + ": malformed number in '" + body + "'");
    }
    if (pt.x < 0) throw UsageError(where + ": x must be non-negative");
    grid.push_back(pt);
  }
  return grid;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and gamma-approximate posteriors of the Generalized Poisson parameter k",
               "gpbayes"};
  app.require_subcommand(1);

  ModelArgs opts;

  CLI::App* posterior = app.add_subcommand("posterior", "exact posterior table P(k | X = x)");
  add_model_options(posterior, opts);
  add_format_option(posterior, opts);

  CLI::App* approx = app.add_subcommand("approx", "gamma approximation and its discretization");
  add_model_options(approx, opts);
  add_format_option(approx, opts);
  approx->add_option("--kind", opts.kind, "theorem1 or moment-matched")
      ->capture_default_str()
      ->check(CLI::IsMember({"theorem1", "moment-matched"}));

  CLI::App* compare_cmd = app.add_subcommand("compare", "distances and overlay data for both kinds");
  add_model_options(compare_cmd, opts);
  add_format_option(compare_cmd, opts);
  compare_cmd->add_option("--epsilon-ineq", opts.epsilon_ineq, "epsilon of the validity inequality")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App* verify = app.add_subcommand("verify", "numerical identity checks");
  verify->add_option("suite", opts.suite, "lerch, bernoulli, powersum or all")
      ->required()
      ->check(CLI::IsMember({"lerch", "bernoulli", "powersum", "all"}));
  add_format_option(verify, opts);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "comparison reports over a grid file");
  sweep_cmd->add_option("grid_file", opts.grid_file, "CSV file of a,b,c,x lines ('-' for stdin)")
      ->required();
  sweep_cmd->add_option("--eps-tail", opts.eps_tail, "posterior truncation tolerance")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1e-3));
  sweep_cmd->add_option("--epsilon-ineq", opts.epsilon_ineq, "epsilon of the validity inequality")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_format_option(sweep_cmd, opts);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }
  if (opts.eps_tail <= 0.0) {
    err << "error: --eps-tail must be positive\n";
    return kExitUsage;
  }

  const auto format = opts.format == "json" ? output::Format::json : output::Format::csv;
  try {
    Document doc;
    bool verified = true;
    if (posterior->parsed()) {
      doc = cmd_posterior(opts);
    } else if (approx->parsed()) {
      doc = cmd_approx(opts);
    } else if (compare_cmd->parsed()) {
      doc = cmd_compare(opts);
    } else if (verify->parsed()) {
      doc = cmd_verify(opts, verified);
    } else {
      doc = cmd_sweep(opts);
    }
    output::write(out, doc, format);
    if (!verified) {
      err << "error: one or more identity checks exceeded tolerance\n";
      return kExitFailure;
    }
    return kExitOk;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace gpbayes::cli
