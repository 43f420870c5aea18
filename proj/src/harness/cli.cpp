// Copyright 2026 The pdcg Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "pdcg/harness.hpp"

namespace pdcg {
namespace {

struct Overrides {
  std::string config_path;
  std::string loss;
  std::string regularizer;
  std::size_t n = 0;
  std::size_t p = 0;
  double mu = 0.0;
  double scale = 0.0;
  std::uint64_t seed = 0;
  std::string algorithm;
  std::string schedule;
  long iters = 0;
  double gap_tol = 0.0;
  std::string format;
  std::string out;
  bool reference = false;

  std::vector<CLI::Option*> opts;
};

void add_overrides(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  o.opts = {
      cmd->add_option("--loss", o.loss, "hinge | lad | logistic | gauge"),
      cmd->add_option("--regularizer", o.regularizer, "squared_l2 | squared_l2_box | entropy"),
      cmd->add_option("--n", o.n, "number of data rows"),
      cmd->add_option("--p", o.p, "number of features"),
      cmd->add_option("--mu", o.mu, "regularizer modulus"),
      cmd->add_option("--scale", o.scale, "loss scale (default 1)"),
      cmd->add_option("--seed", o.seed, "generator seed"),
      cmd->add_option("--algorithm", o.algorithm, "md | gcg | ns_md"),
      cmd->add_option("--schedule", o.schedule,
                      "two_over_t_plus_one | one_over_t | line_search | sqrt_decay"),
      cmd->add_option("--iters", o.iters, "iteration budget"),
      cmd->add_option("--gap-tol", o.gap_tol, "stop once the certificate is below this"),
      cmd->add_option("--format", o.format, "csv | json"),
      cmd->add_option("--out", o.out, "output path (default stdout)"),
      cmd->add_flag("--reference", o.reference, "solve a reference pair to fill suboptimality columns"),
  };
}

ExperimentConfig resolve(const Overrides& o) {
  ExperimentConfig c = o.config_path.empty() ? ExperimentConfig{} : load_config(o.config_path);
  Json j = config_to_json(c);
  auto given = [&](std::size_t k) { return o.opts[k]->count() > 0; };
  if (given(0)) j["loss"] = o.loss;
  if (given(1)) j["regularizer"] = o.regularizer;
  if (given(2)) j["n"] = o.n;
  if (given(3)) j["p"] = o.p;
  if (given(4)) j["mu"] = o.mu;
  if (given(5)) j["scale"] = o.scale;
  if (given(6)) j["seed"] = o.seed;
  if (given(7)) j["algorithm"] = o.algorithm;
  if (given(8)) j["schedule"] = o.schedule;
  if (given(9)) {
    if (o.iters < 0) throw ConfigError("--iters must be >= 0");
    j["max_iters"] = o.iters;
  }
  if (given(10)) j["gap_tol"] = o.gap_tol;
  if (given(11)) j["format"] = o.format;
  if (given(12)) j["output"] = o.out;
  if (given(13)) j["with_reference"] = o.reference;
  return config_from_json(j);
}

void write_json(const Json& j, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoError("cannot write '" + path + "'");
  f << j.dump(2) << '\n';
  if (!f) throw IoError("error writing '" + path + "'");
}

int cmd_solve(const Overrides& o, std::ostream& out, std::ostream& err) {
  const ExperimentConfig c = resolve(o);
  const Experiment e = run_experiment(c);
  if (c.output.empty() || c.output == "-") {
    if (c.format == TraceFormat::Csv) {
      write_trace_csv(e.result, out);
    } else {
      out << trace_to_json(e.result, {c, e.geometry}).dump(1) << '\n';
    }
  } else {
    emit_trace(e.result, c.format, c.output, {c, e.geometry});
  }
  if (e.result.error) {
    err << "run aborted at iteration " << e.result.trace.size() + 1 << ": " << *e.result.error
        << '\n';
    return 1;
  }
  return 0;
}

int cmd_compare(const Overrides& o, double tol, std::ostream& out) {
  const ExperimentConfig c = resolve(o);
  const ProblemInstance problem = generate_problem(c.problem, c.seed);
  const GeometryConstants geometry = geometry_constants(problem);
  const StepSchedule schedule = make_schedule(c.schedule, problem, geometry);
  const Vector y0(problem.n(), 0.0);
  const EquivalenceReport report = verify_equivalence(problem, y0, schedule, c.max_iters, tol);
  Json j = equivalence_report_to_json(report);
  j["schedule"] = to_string(c.schedule);
  write_json(j, c.output, out);
  return report.pass ? 0 : 1;
}

int cmd_certify(const Overrides& o, const std::string& prop, double slack, std::ostream& out) {
  ExperimentConfig c = resolve(o);
  const BoundKind which = parse_bound_kind(prop);
  switch (which) {
    case BoundKind::Prop1Avg:
    case BoundKind::Prop1Min:
    case BoundKind::Prop1Bregman:
      c.algorithm = Algorithm::MirrorDescent;
      c.schedule = ScheduleKind::TwoOverTPlusOne;
      break;
    case BoundKind::Prop3Dual:
    case BoundKind::Prop3Gap:
      if (c.algorithm == Algorithm::CompactMirrorDescent) c.algorithm = Algorithm::ConditionalGradient;
      c.schedule = ScheduleKind::TwoOverTPlusOne;
      break;
    case BoundKind::Prop4Dual:
    case BoundKind::Prop4Gap:
      if (c.algorithm == Algorithm::CompactMirrorDescent) c.algorithm = Algorithm::ConditionalGradient;
      c.schedule = ScheduleKind::LineSearch;
      break;
    case BoundKind::AppendixAGap:
      c.algorithm = Algorithm::CompactMirrorDescent;
      c.schedule = ScheduleKind::SqrtDecay;
      break;
  }
  c.with_reference = needs_reference(which);
  const Experiment e = run_experiment(c);
  if (e.reference && !e.reference->certified) {
    throw ConfigError("reference solution not certified to gap " + std::to_string(c.reference_tol));
  }
  ReferencePoint point;
  BoundCheckOptions options;
  options.slack = slack;
  if (e.reference) {
    point = e.reference->as_reference_point();
    options.reference = &point;
  }
  const double mu = e.generated.instance.regularizer.modulus();
  BoundReport report = check_bound(e.result, e.geometry, mu, which, options);
  if (e.result.error) {
    report.pass = false;
    report.note = "run aborted: " + *e.result.error;
  }
  Json j = bound_report_to_json(report, e.geometry, mu);
  j["algorithm"] = to_string(c.algorithm);
  j["schedule"] = to_string(c.schedule);
  write_json(j, c.output, out);
  return report.pass ? 0 : 1;
}

int cmd_sweep(const Overrides& o, const std::vector<std::string>& schedule_names,
              const std::vector<std::uint64_t>& seeds, const std::string& out_dir, int threads,
              std::ostream& out) {
  const ExperimentConfig c = resolve(o);
  std::vector<ScheduleKind> schedules;
  for (const std::string& s : schedule_names) schedules.push_back(parse_schedule_kind(s));
  if (schedules.empty()) schedules.push_back(c.schedule);
  std::vector<std::uint64_t> seed_list = seeds;
  if (seed_list.empty()) seed_list.push_back(c.seed);

  const std::vector<SweepCell> cells = run_sweep(c, schedules, seed_list, out_dir, threads);
  Json summary = Json::array();
  bool ok = true;
  for (const SweepCell& cell : cells) {
    summary.push_back({{"schedule", to_string(cell.config.schedule)},
                       {"seed", cell.config.seed},
                       {"path", cell.path},
                       {"termination", to_string(cell.reason)},
                       {"error", cell.error ? Json(*cell.error) : Json(nullptr)}});
    ok = ok && !cell.error;
  }
  out << summary.dump(2) << '\n';
  return ok ? 0 : 1;
}

}  // namespace

int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Primal-dual first-order solvers with duality-gap certificates", "pdcg"};
  app.require_subcommand(1);

  Overrides solve_o, compare_o, certify_o, sweep_o;
  CLI::App* solve = app.add_subcommand("solve", "run one experiment and emit its trace");
  add_overrides(solve, solve_o);

  CLI::App* compare = app.add_subcommand("compare", "run MD and GCG in lockstep");
  add_overrides(compare, compare_o);
  double tol = 1e-9;
  compare->add_option("--tol", tol, "equivalence tolerance");

  CLI::App* certify = app.add_subcommand("certify", "run and check one convergence bound");
  add_overrides(certify, certify_o);
  std::string prop;
  double slack = 1e-8;
  certify->add_option("--prop", prop,
                      "prop1-avg | prop1-min | prop1-bregman | prop3-dual | prop3-gap | "
                      "prop4-dual | prop4-gap | appendixa-gap")
      ->required();
  certify->add_option("--slack", slack, "absolute slack added to the bound");

  CLI::App* sweep = app.add_subcommand("sweep", "grid over schedules and seeds, one trace per cell");
  add_overrides(sweep, sweep_o);
  std::vector<std::string> schedule_names;
  std::vector<std::uint64_t> seeds;
  std::string out_dir;
  int threads = 0;
  sweep->add_option("--schedules", schedule_names, "schedules to run")->delimiter(',');
  sweep->add_option("--seeds", seeds, "seeds to run")->delimiter(',');
  sweep->add_option("--out-dir", out_dir, "directory for per-cell traces")->required();
  sweep->add_option("--threads", threads, "worker cap (default PDCG_THREADS or all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (solve->parsed()) return cmd_solve(solve_o, out, err);
    if (compare->parsed()) return cmd_compare(compare_o, tol, out);
    if (certify->parsed()) return cmd_certify(certify_o, prop, slack, out);
    if (sweep->parsed()) {
      return cmd_sweep(sweep_o, schedule_names, seeds, out_dir, threads, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace pdcg
