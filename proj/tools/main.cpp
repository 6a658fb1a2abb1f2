/*
 * Copyright 2026 The irssec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// irssec: generate scenarios, solve them, run sweeps and audit solutions.
//
// Exit status: 0 success, 2 infeasible (no feasible point found, or a
// solution that fails the check), 1 any other error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "irssec/harness.hpp"
#include "irssec/io.hpp"
#include "plot.hpp"

namespace {

using namespace irssec;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;

struct GenerateArgs {
  std::string preset = "desk";
  int M = -1, N = -1, K = -1, L = -1, group_size = -1;
  std::vector<int> group_sizes;
  double sigma2_dbm = std::numeric_limits<double>::quiet_NaN();
  double gamma_s = std::numeric_limits<double>::quiet_NaN();
  double beta = std::numeric_limits<double>::quiet_NaN();
  double d_v = std::numeric_limits<double>::quiet_NaN();
  double d_AI = std::numeric_limits<double>::quiet_NaN();
  std::uint64_t seed = 1;
  bool no_channels = false;
  std::string out;
};

struct SolveArgs {
  std::string scenario, method = "socp", out, trace;
  std::uint64_t seed = 1;
  double epsilon = 1e-3;
  int max_iters = 50;
  int randomization = 100;
  std::string u_step = "analytic_center";
  std::string slack_mode = "paper_faithful";
};

struct SweepArgs {
  std::string spec, results = "results.csv", aggregate = "aggregate.csv", plot;
  int workers = -1;
  int trials = 0;
  bool quiet = false;
};

struct CheckArgs {
  std::string scenario, solution;
  double tol = 1e-4;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-")
    std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
  else
    write_file(path, text);
}

int do_generate(const GenerateArgs& a) {
  const Preset p = preset(a.preset);
  SystemConfig c = p.config;
  Geometry g = p.geometry;
  if (a.M >= 0) c.M = a.M;
  if (a.N >= 0) c.N = a.N;
  if (a.L >= 0) c.L = a.L;
  if (a.K >= 0) {
    const int size = c.group_sizes.empty() ? 1 : c.group_sizes.front();
    c.K = a.K;
    c.group_sizes.assign(c.K, size);
  }
  if (a.group_size >= 0) c.group_sizes.assign(c.K, a.group_size);
  if (!a.group_sizes.empty()) {
    c.group_sizes = a.group_sizes;
    c.K = static_cast<int>(a.group_sizes.size());
  }
  if (!std::isnan(a.sigma2_dbm)) c.sigma2 = dbm_to_watts(a.sigma2_dbm);
  if (!std::isnan(a.gamma_s)) c.gamma_s = a.gamma_s;
  if (!std::isnan(a.beta)) c.beta = a.beta;
  if (!std::isnan(a.d_v)) g.d_v = a.d_v;
  if (!std::isnan(a.d_AI)) g.d_AI = a.d_AI;
  c.validate();
  g.validate();
  emit(a.out, scenario_to_json(make_scenario(c, g, a.seed), !a.no_channels));
  return kOk;
}

int do_solve(const SolveArgs& a) {
  const Scenario s = scenario_from_json(read_file(a.scenario));
  MethodOptions o;
  o.sdr.epsilon = o.socp.epsilon = a.epsilon;
  o.sdr.max_iters = o.socp.max_iters = a.max_iters;
  o.sdr.randomization_count = a.randomization;
  o.sdr.u_step = a.u_step == "max_margin" ? UStepMode::max_margin : UStepMode::analytic_center;
  o.socp.slack_mode = a.slack_mode == "margin_max" ? SlackMode::margin_max : SlackMode::paper_faithful;
  RunResult r;
  try {
    r = run_method(parse_method(a.method), s, a.seed, o);
  } catch (const SolveError& e) {
    std::cerr << "irssec solve: " << e.what() << '\n';
    return e.kind() == SolveError::Kind::infeasible ? kInfeasible : kError;
  }
  const auto rep = check_feasible(r.solution, lift_channels(s.channels, s.config.beta), s.config);
  emit(a.out, solution_to_json(r.solution, rep));
  if (!a.trace.empty()) {
    std::ostringstream t;
    write_trace_csv(t, r.trace);
    write_file(a.trace, t.str());
  }
  std::fprintf(stderr, "%s: power %.6g W (%.3f dBm), %d iterations, %.2f s, %s\n", a.method.c_str(), r.power_w,
               r.power_w > 0 ? watts_to_dbm(r.power_w) : -INFINITY, r.trace.iterations(), r.solve_time_s,
               rep.feasible ? "feasible" : "INFEASIBLE");
  return rep.feasible ? kOk : kInfeasible;
}

int do_sweep(const SweepArgs& a) {
  ExperimentSpec spec = spec_from_json(read_file(a.spec));
  if (a.workers >= 0) spec.workers = a.workers;
  if (a.trials > 0) spec.trials = a.trials;
  ProgressFn progress;
  if (!a.quiet)
    progress = [](std::size_t done, std::size_t total) {
      std::fprintf(stderr, "\r%zu/%zu", done, total);
      if (done == total) std::fprintf(stderr, "\n");
    };
  const SweepResult res = run_sweep(spec, progress);
  std::ostringstream rs, as;
  write_results_csv(rs, res.rows);
  write_aggregate_csv(as, res.aggregate);
  write_file(a.results, rs.str());
  write_file(a.aggregate, as.str());
  if (!a.plot.empty()) write_file(a.plot, tools::aggregate_svg(res.aggregate));
  int failed = 0;
  for (const auto& r : res.rows)
    if (!r.feasible) {
      ++failed;
      if (!a.quiet)
        std::fprintf(stderr, "  %s %s=%g trial seed %llu: %s\n", r.method.c_str(), r.sweep_var.c_str(),
                     r.sweep_value, static_cast<unsigned long long>(r.trial_seed), r.error.c_str());
    }
  if (!a.quiet) std::fprintf(stderr, "%zu rows, %d infeasible\n", res.rows.size(), failed);
  return kOk;
}

int do_check(const CheckArgs& a) {
  const Scenario s = scenario_from_json(read_file(a.scenario));
  const BeamformingSolution sol = solution_from_json(read_file(a.solution));
  const auto& c = s.config;
  if (static_cast<int>(sol.w.size()) != c.K || sol.q.size() != c.M ||
      (sol.v.size() != 0 && sol.v.size() != c.N))
    throw FormatError("solution dimensions do not match the scenario");
  for (const auto& x : sol.w)
    if (x.size() != c.M) throw FormatError("solution dimensions do not match the scenario");
  const auto rep = check_feasible(sol, lift_channels(s.channels, c.beta), c, a.tol);
  std::printf("power_w %.10g\npower_dbm %.6f\n", rep.power, rep.power > 0 ? watts_to_dbm(rep.power) : -INFINITY);
  for (int k = 0; k < c.K; ++k)
    for (int j = 0; j < c.group_sizes[k]; ++j)
      std::printf("group %d user %d: R_b %.6f  max R_e %.6f  R_s %.6f\n", k, j, rep.R_b[k][j], rep.R_e_max[k][j],
                  rep.R_s[k][j]);
  std::printf("min_secrecy_margin %.3e\nmax_modulus_error %.3e\n%s\n", rep.min_secrecy_margin,
              rep.max_modulus_error, rep.feasible ? "FEASIBLE" : "INFEASIBLE");
  return rep.feasible ? kOk : kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transmit-power minimization for IRS-aided secure multigroup multicast"};
  app.require_subcommand(1);

  GenerateArgs ga;
  auto* gen = app.add_subcommand("generate", "write a scenario JSON");
  gen->add_option("--preset", ga.preset, "desk | paper | fig8-k")->capture_default_str();
  gen->add_option("--M", ga.M, "transmit antennas");
  gen->add_option("--N", ga.N, "IRS elements");
  gen->add_option("--K", ga.K, "multicast groups (keeps the preset group size)");
  gen->add_option("--group-size", ga.group_size, "users per group");
  gen->add_option("--group-sizes", ga.group_sizes, "explicit users per group (sets K)");
  gen->add_option("--L", ga.L, "eavesdroppers");
  gen->add_option("--sigma2-dbm", ga.sigma2_dbm, "noise power");
  gen->add_option("--gamma-s", ga.gamma_s, "secrecy rate threshold, bits/s/Hz");
  gen->add_option("--beta", ga.beta, "IRS reflection amplitude");
  gen->add_option("--d-v", ga.d_v, "vertical offset of the IRS, m");
  gen->add_option("--d-ai", ga.d_AI, "Alice to IRS horizontal distance, m");
  gen->add_option("--seed", ga.seed)->capture_default_str();
  gen->add_flag("--no-channels", ga.no_channels, "omit channels (regenerated from the seed on load)");
  gen->add_option("-o,--out", ga.out, "output file (default stdout)");

  SolveArgs sa;
  auto* sol = app.add_subcommand("solve", "solve one scenario");
  sol->add_option("scenario", sa.scenario, "scenario JSON")->required();
  sol->add_option("--method", sa.method)
      ->check(CLI::IsMember({"sdr", "socp", "no-irs", "random-phase"}))
      ->capture_default_str();
  sol->add_option("-o,--out", sa.out, "solution JSON (default stdout)");
  sol->add_option("--trace", sa.trace, "per-iteration CSV");
  sol->add_option("--seed", sa.seed, "initialization / randomization seed")->capture_default_str();
  sol->add_option("--epsilon", sa.epsilon, "relative convergence threshold")->capture_default_str();
  sol->add_option("--max-iters", sa.max_iters)->capture_default_str();
  sol->add_option("--randomizations", sa.randomization, "Gaussian randomization draws (sdr)")->capture_default_str();
  sol->add_option("--u-step", sa.u_step, "phase step of sdr")
      ->check(CLI::IsMember({"analytic_center", "max_margin"}))
      ->capture_default_str();
  sol->add_option("--slack-mode", sa.slack_mode, "phase step of socp")
      ->check(CLI::IsMember({"paper_faithful", "margin_max"}))
      ->capture_default_str();

  SweepArgs wa;
  auto* sw = app.add_subcommand("sweep", "run a Monte-Carlo sweep from a spec JSON");
  sw->add_option("spec", wa.spec)->required();
  sw->add_option("--results", wa.results)->capture_default_str();
  sw->add_option("--aggregate", wa.aggregate)->capture_default_str();
  sw->add_option("--plot", wa.plot, "SVG plot of the aggregate");
  sw->add_option("--workers", wa.workers, "override the spec's worker count (0: all cores)");
  sw->add_option("--trials", wa.trials, "override the spec's trial count");
  sw->add_flag("-q,--quiet", wa.quiet);

  CheckArgs ca;
  auto* chk = app.add_subcommand("check", "audit a solution against a scenario");
  chk->add_option("scenario", ca.scenario)->required();
  chk->add_option("solution", ca.solution)->required();
  chk->add_option("--tol", ca.tol)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }

  try {
    if (*gen) return do_generate(ga);
    if (*sol) return do_solve(sa);
    if (*sw) return do_sweep(wa);
    if (*chk) return do_check(ca);
  } catch (const std::exception& e) {
    std::cerr << "irssec: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
