#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>

#include <CLI11.hpp>
#include <json.hpp>

#include "mchart/fixed_rank.hpp"
#include "mchart/matrix_io.hpp"
#include "mchart/optimizer.hpp"
#include "mchart/verify.hpp"

namespace mchart::cli {

namespace {

struct Options {
  std::string suite = "all";
  verify::Dims dims;
  std::optional<Index> r;
  std::uint64_t seed = 0;
  int trials = 100;
  std::optional<double> tol;
  std::string input;
  std::string output;
  std::string trace;
  int max_iters = 500;
  std::string op = "roundtrip";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Matrix load_input(const std::string& path) {
  try {
    return load_matrix(path);
  } catch (const ParseError& e) {
    throw IoError(path + ": " + e.what());
  } catch (const std::ios_base::failure&) {
    throw IoError("cannot read " + path);
  }
}

int emit(const verify::Report& report, std::ostream& out, std::ostream& err) {
  out << report.to_json().dump(2) << '\n';
  int failed = 0;
  for (const auto& c : report.cases) failed += c.pass ? 0 : 1;
  err << report.suite << ": " << (report.passed() ? "PASS" : "FAIL") << " ("
      << report.cases.size() - failed << "/" << report.cases.size() << " cases, "
      << report.wall_time_s << " s)\n";
  return report.passed() ? kOk : kVerificationFailed;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  verify::Dims dims = o.dims;
  if (o.r) dims.r = *o.r;
  try {
    verify::validate_dims(dims);
  } catch (const DimensionMismatch& e) {
    throw UsageError(e.what());
  }
  if (o.trials < 1) throw UsageError("--trials must be >= 1");
  verify::Report report;
  if (o.suite == "grassmann") {
    report = verify::grassmann_suite(dims, o.seed, o.trials);
  } else if (o.suite == "stiefel") {
    report = verify::stiefel_suite(dims, o.seed, o.trials);
  } else if (o.suite == "fixedrank") {
    report = verify::fixed_rank_suite(dims, o.seed, o.trials);
  } else {
    report = verify::all_suites(dims, o.seed, o.trials);
  }
  return emit(report, out, err);
}

int cmd_approx(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw UsageError("--input is required");
  const Matrix A = load_input(o.input);
  if (!o.r) throw UsageError("--r is required");
  const Index r = *o.r;
  if (r < 1 || r >= std::min(A.rows(), A.cols())) {
    throw UsageError("--r must satisfy 0 < r < min(rows, cols)");
  }

  OptimizerConfig cfg;
  cfg.max_iters = o.max_iters;
  if (o.tol) cfg.grad_tol = *o.tol;
  try {
    cfg.validate();
  } catch (const DimensionMismatch& e) {
    throw UsageError(e.what());
  }

  // Eckart-Young reference; also rejects inputs of rank below r.
  const RankFactors oracle = factor_rank_r(A, r);
  const Matrix best = oracle.U * oracle.G * oracle.V.transpose();

  const RankRPoint start = optimizer::sketched_start(A, r, o.seed);
  const MinimizeResult result = optimizer::minimize(start, least_squares_objective(A), cfg);
  const Matrix W = result.point.matrix();
  const double rel_error = (W - best).norm() / best.norm();

  if (!o.output.empty()) {
    try {
      save_matrix(o.output, W);
    } catch (const std::ios_base::failure&) {
      throw IoError("cannot write " + o.output);
    }
  }
  std::string trace_path = o.trace;
  if (trace_path.empty() && !o.output.empty()) trace_path = o.output + ".trace.jsonl";
  if (!trace_path.empty()) {
    std::ofstream trace_out(trace_path);
    if (!trace_out) throw IoError("cannot write " + trace_path);
    result.trace.write_jsonl(trace_out);
  }

  nlohmann::json j;
  j["command"] = "approx";
  j["input"] = o.input;
  j["dims"] = {{"n", A.rows()}, {"m", A.cols()}, {"r", r}};
  j["seed"] = o.seed;
  j["iterations"] = result.trace.iterations();
  j["stop_reason"] = to_string(result.trace.stop_reason);
  j["final_objective"] = result.trace.records.back().f;
  j["eckart_young_bound"] = 0.5 * (A - best).squaredNorm();
  j["relative_error_vs_svd"] = rel_error;
  j["output_rank"] = numerical_rank(W).numerical_rank;
  if (!o.output.empty()) j["output"] = o.output;
  if (!trace_path.empty()) j["trace"] = trace_path;
  out << j.dump(2) << '\n';
  err << "approx: rank-" << r << " fit in " << result.trace.iterations()
      << " iterations, relative error vs truncated SVD " << rel_error << '\n';
  return kOk;
}

// A chart near the point: its bases are perturbations of the point's factors.
FixedRankChart random_chart(const RankRPoint& p, std::uint64_t seed) {
  const auto spread = [](Index rows) { return 0.3 / std::sqrt(static_cast<double>(rows)); };
  return FixedRankChart(
      p.U() + spread(p.rows()) * random_gaussian(p.rows(), p.rank(), derive_seed(seed, 1)),
      p.V() + spread(p.cols()) * random_gaussian(p.cols(), p.rank(), derive_seed(seed, 2)));
}

int cmd_chart(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw UsageError("--input is required");
  const Matrix A = load_input(o.input);
  const Index r = o.r ? *o.r : numerical_rank(A).numerical_rank;
  if (r < 1 || r >= std::min(A.rows(), A.cols())) {
    throw UsageError("rank must satisfy 0 < r < min(rows, cols)");
  }
  const RankRPoint p = RankRPoint::from_matrix(A, r);

  verify::Report report;
  report.suite = "chart." + o.op;
  report.seed = o.seed;
  report.trials = 1;
  report.dims = {A.rows(), A.cols(), A.rows(), r};
  const auto t0 = std::chrono::steady_clock::now();
  const auto record = [&](const std::string& name, double measured, double tol) {
    verify::Case c(name, tol);
    c.observe(measured);
    report.cases.push_back(c.result());
  };

  if (o.op == "roundtrip") {
    const FixedRankChart chart = random_chart(p, o.seed);
    const FixedRankCoords c = fixed_rank::theta_apply(chart, A);
    record("theta_roundtrip", verify::rel_diff(fixed_rank::theta_inverse(chart, c), A),
           o.tol.value_or(1e-9));
  } else if (o.op == "transition") {
    const FixedRankChart from = random_chart(p, o.seed);
    const FixedRankChart to = random_chart(p, derive_seed(o.seed, 99));
    const FixedRankCoords c = fixed_rank::theta_apply(from, A);
    const FixedRankCoords moved = fixed_rank::transition(from, to, c);
    record("transition_reconstruction",
           verify::rel_diff(fixed_rank::theta_inverse(to, moved), A), o.tol.value_or(1e-9));
  } else if (o.op == "tangent") {
    const FixedRankChart chart = fixed_rank::make_chart(p);
    const Matrix& G = p.G();
    const FixedRankTangent t{random_gaussian(A.rows() - r, r, derive_seed(o.seed, 3)),
                             random_gaussian(A.cols() - r, r, derive_seed(o.seed, 4)),
                             random_gaussian(r, r, derive_seed(o.seed, 5))};
    const double h = 1e-6 * std::max(1.0, G.norm());
    const Matrix plus = fixed_rank::theta_inverse(chart, {h * t.X, h * t.Y, G + h * t.H});
    const Matrix minus = fixed_rank::theta_inverse(chart, {-h * t.X, -h * t.Y, G - h * t.H});
    const Matrix pushed = fixed_rank::tangent_push(chart, G, t);
    record("tangent_finite_difference", ((plus - minus) / (2 * h) - pushed).norm() / pushed.norm(),
           o.tol.value_or(1e-5));
    const FixedRankTangent back = fixed_rank::tangent_pull(chart, G, pushed);
    record("tangent_pull_push",
           std::max({verify::rel_diff(back.X, t.X), verify::rel_diff(back.Y, t.Y),
                     verify::rel_diff(back.H, t.H)}),
           1e-9);
  } else {
    throw UsageError("--op must be roundtrip, transition or tangent");
  }
  report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return emit(report, out, err);
}

void add_dims(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.dims.n, "Rows of fixed-rank instances")->capture_default_str();
  cmd->add_option("--m", o.dims.m, "Columns of fixed-rank instances")->capture_default_str();
  cmd->add_option("--k", o.dims.k, "Ambient dimension for Grassmann/Stiefel")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Chart-based geometry of Grassmann, Stiefel and fixed-rank matrix manifolds"};
  app.require_subcommand(1);
  Options o;

  auto* verify_cmd = app.add_subcommand("verify", "Run seeded invariant suites, JSON report");
  verify_cmd->add_option("--suite", o.suite, "Suite to run")
      ->check(CLI::IsMember({"grassmann", "stiefel", "fixedrank", "all"}))
      ->capture_default_str();
  add_dims(verify_cmd, o);
  verify_cmd->add_option("--r", o.r, "Rank / subspace dimension (default 3)");
  verify_cmd->add_option("--seed", o.seed, "Root seed")->capture_default_str();
  verify_cmd->add_option("--trials", o.trials, "Trials per suite")->capture_default_str();

  auto* approx_cmd = app.add_subcommand("approx", "Best rank-r approximation by chart descent");
  approx_cmd->add_option("--input", o.input, "Matrix file");
  approx_cmd->add_option("--r", o.r, "Target rank");
  approx_cmd->add_option("--output", o.output, "Write the rank-r result here");
  approx_cmd->add_option("--trace", o.trace, "Write the iteration trace (JSON lines) here");
  approx_cmd->add_option("--max-iters", o.max_iters, "Iteration cap")->capture_default_str();
  approx_cmd->add_option("--tol", o.tol, "Coordinate-gradient tolerance");
  approx_cmd->add_option("--seed", o.seed, "Seed of the sketched start")->capture_default_str();

  auto* chart_cmd = app.add_subcommand("chart", "Exercise a chart operation on an input matrix");
  chart_cmd->add_option("--input", o.input, "Matrix file");
  chart_cmd->add_option("--op", o.op, "Operation")
      ->check(CLI::IsMember({"roundtrip", "transition", "tangent"}))
      ->capture_default_str();
  chart_cmd->add_option("--r", o.r, "Rank (default: numerical rank of the input)");
  chart_cmd->add_option("--tol", o.tol, "Residual tolerance");
  chart_cmd->add_option("--seed", o.seed, "Seed of the random chart")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify_cmd) return cmd_verify(o, out, err);
    if (*approx_cmd) return cmd_approx(o, out, err);
    return cmd_chart(o, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << '\n';
    return kIoError;
  } catch (const OutOfChartDomain& e) {
    nlohmann::json j = {{"status", "fail"}, {"error", to_string(e.kind())}, {"message", e.what()}};
    out << j.dump(2) << '\n';
    err << "out of chart domain: " << e.what() << '\n';
    return kOutOfDomain;
  } catch (const LineSearchFailed& e) {
    err << e.what() << '\n';
    return kVerificationFailed;
  } catch (const Error& e) {
    // Rank and shape problems with the supplied data.
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace mchart::cli
