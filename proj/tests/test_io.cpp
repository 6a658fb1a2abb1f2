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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <sstream>

#include "irssec/io.hpp"

using namespace irssec;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST_CASE("double formatting round trips bit for bit") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double x = std::ldexp(cn01(rng).real(), static_cast<int>(rng() % 200) - 100);
    CHECK(same_bits(parse_double(format_double(x)), x));
  }
  CHECK(std::isnan(parse_double(format_double(std::nan("")))));
  CHECK(parse_double(format_double(-std::numeric_limits<double>::infinity())) < 0);
  CHECK_THROWS(parse_double("1.5x"));
}

TEST_CASE("scenario json round trip") {
  SystemConfig c;
  c.N = 5;
  c.group_sizes = {2, 1};
  c.L = 2;
  Geometry g;
  g.d_v = 3.5;
  const auto s = make_scenario(c, g, 123);
  const auto back = scenario_from_json(scenario_to_json(s));
  CHECK(back.seed == 123);
  CHECK(back.config.group_sizes == c.group_sizes);
  CHECK(back.config.sigma2 == doctest::Approx(c.sigma2).epsilon(1e-12));
  CHECK(back.geometry.d_v == 3.5);
  CHECK(back.channels.G == s.channels.G);
  CHECK(back.channels.h_ab[0][1] == s.channels.h_ab[0][1]);
  CHECK(back.channels.h_ie[1] == s.channels.h_ie[1]);

  // Without channels they are regenerated from the seed.
  const auto regen = scenario_from_json(scenario_to_json(s, false));
  CHECK(regen.channels.G == s.channels.G);
  CHECK(regen.channels.h_ae[0] == s.channels.h_ae[0]);
}

TEST_CASE("scenario json errors") {
  CHECK_THROWS_AS(scenario_from_json("{"), FormatError);
  CHECK_THROWS_AS(scenario_from_json("{\"seed\": 1}"), FormatError);
  CHECK_THROWS_AS(scenario_from_json(R"({"config": {"M": 2, "N": 0, "K": 1, "group_sizes": [1, 1], "L": 1,
      "sigma2_dbm": -90, "gamma_s": 1}})"),
                  FormatError);
  SystemConfig c;
  c.N = 2;
  auto text = scenario_to_json(make_scenario(c, Geometry{}, 1));
  // corrupt a channel pair
  const auto pos = text.find("\"G\"");
  REQUIRE(pos != std::string::npos);
  text.insert(text.find('[', text.find('[', text.find('[', pos) + 1) + 1) + 1, "\"x\",");
  CHECK_THROWS_AS(scenario_from_json(text), FormatError);
}

TEST_CASE("solution json round trip") {
  auto sol = BeamformingSolution::zeros(3, 4, 2);
  std::mt19937_64 rng(2);
  for (auto& w : sol.w)
    for (int m = 0; m < 3; ++m) w(m) = cn01(rng);
  for (int m = 0; m < 3; ++m) sol.q(m) = cn01(rng);
  sol.set_theta(Eigen::Vector4d(0.1, -2.0, 3.0, 1.5));
  RateReport rep;
  const auto back = solution_from_json(solution_to_json(sol, rep));
  CHECK(back.w[1] == sol.w[1]);
  CHECK(back.q == sol.q);
  CHECK(back.theta == sol.theta);
  CHECK((back.v - sol.v).norm() == 0.0);

  auto none = BeamformingSolution::zeros(3, 0, 1);
  none.v.resize(0);
  const auto b2 = solution_from_json(solution_to_json(none, rep));
  CHECK(b2.v.size() == 0);
  CHECK_THROWS_AS(solution_from_json("{\"w\": []}"), FormatError);
}

TEST_CASE("results csv round trip") {
  std::vector<ResultRow> rows;
  std::mt19937_64 rng(5);
  for (int i = 0; i < 20; ++i) {
    ResultRow r;
    r.method = i % 2 ? "sdr" : "no-irs";
    r.sweep_var = "gamma_s";
    r.sweep_value = 0.5 * (i % 4 + 1);
    r.trial_seed = rng();
    r.power_w = std::exp(cn01(rng).real()) * 1e-3;
    r.power_dbm = watts_to_dbm(r.power_w);
    r.iterations = i;
    r.solve_time_s = 0.1 * i + 1e-7;
    r.feasible = i != 7;
    r.min_secrecy_margin = cn01(rng).real() * 1e-6;
    if (!r.feasible) r.power_w = r.power_dbm = r.min_secrecy_margin = std::nan("");
    rows.push_back(r);
  }
  std::stringstream ss;
  write_results_csv(ss, rows);
  CHECK(ss.str().rfind(std::string(kResultsHeader) + "\n", 0) == 0);
  const auto back = read_results_csv(ss);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(back[i].method == rows[i].method);
    CHECK(back[i].sweep_var == rows[i].sweep_var);
    CHECK(same_bits(back[i].sweep_value, rows[i].sweep_value));
    CHECK(back[i].trial_seed == rows[i].trial_seed);
    CHECK((same_bits(back[i].power_w, rows[i].power_w) || (std::isnan(back[i].power_w) && std::isnan(rows[i].power_w))));
    CHECK((same_bits(back[i].power_dbm, rows[i].power_dbm) || std::isnan(rows[i].power_dbm)));
    CHECK(back[i].iterations == rows[i].iterations);
    CHECK(same_bits(back[i].solve_time_s, rows[i].solve_time_s));
    CHECK(back[i].feasible == rows[i].feasible);
    CHECK((same_bits(back[i].min_secrecy_margin, rows[i].min_secrecy_margin) || std::isnan(rows[i].min_secrecy_margin)));
  }
  std::stringstream bad("method,power\nsdr,1\n");
  CHECK_THROWS_AS(read_results_csv(bad), FormatError);
}

TEST_CASE("aggregate csv round trip") {
  std::vector<AggregateRow> rows(3);
  for (int i = 0; i < 3; ++i) {
    rows[i].method = "socp";
    rows[i].sweep_var = "N";
    rows[i].sweep_value = 8 << i;
    rows[i].trials_ok = 50 - i;
    rows[i].trials_infeasible = i;
    rows[i].mean_power_w = 1e-3 / (i + 3);
    rows[i].mean_power_dbm = watts_to_dbm(rows[i].mean_power_w);
  }
  std::stringstream ss;
  write_aggregate_csv(ss, rows);
  const auto back = read_aggregate_csv(ss);
  REQUIRE(back.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(back[i].sweep_value == rows[i].sweep_value);
    CHECK(back[i].trials_ok == rows[i].trials_ok);
    CHECK(back[i].trials_infeasible == rows[i].trials_infeasible);
    CHECK(same_bits(back[i].mean_power_w, rows[i].mean_power_w));
    CHECK(same_bits(back[i].mean_power_dbm, rows[i].mean_power_dbm));
  }
}

TEST_CASE("trace csv layouts") {
  SolveTrace t;
  t.method = "sdr";
  t.rows = {{0, 2e-3, 0.1, 0.0, "init", false}, {1, 1e-3, 0.1, 0.2, "ok", false}};
  std::ostringstream a;
  write_trace_csv(a, t);
  CHECK(a.str().rfind(std::string(kSdrTraceHeader) + "\n", 0) == 0);
  CHECK(a.str().find(",init\n") != std::string::npos);
  t.method = "socp";
  t.rows[1].recovery_violation = true;
  std::ostringstream b;
  write_trace_csv(b, t);
  CHECK(b.str().rfind(std::string(kSocpTraceHeader) + "\n", 0) == 0);
  CHECK(b.str().substr(b.str().size() - 3) == ",1\n");
}

TEST_CASE("spec json") {
  const auto s = spec_from_json(R"({"scenario": "desk", "sweep": {"var": "gamma_s", "values": [0.5, 1, 1.5, 2]},
      "trials": 50, "methods": ["sdr", "socp", "random-phase", "no-irs"], "seed": 7, "workers": 2})");
  CHECK(s.values.size() == 4);
  CHECK(s.methods.size() == 4);
  CHECK(s.methods[2] == Method::random_phase);
  CHECK(s.config.N == 16);
  CHECK(s.workers == 2);

  const auto t = spec_from_json(R"({"scenario": {"config": {"M": 2, "N": 4, "K": 1, "group_sizes": [1], "L": 1,
      "sigma2_dbm": -90, "gamma_s": 1}, "geometry": {"d_v": 7}}, "sweep": {"var": "N", "values": [2, 4]},
      "trials": 3, "methods": ["socp"], "seed": 1, "workers": 1, "options": {"u_step": "max_margin"}})");
  CHECK(t.config.M == 2);
  CHECK(t.geometry.d_v == 7);
  CHECK(t.geometry.d_AI == 70);
  CHECK(t.options.sdr.u_step == UStepMode::max_margin);

  CHECK_THROWS_AS(spec_from_json(R"({"scenario": "desk", "sweep": {"var": "N", "values": [1.5]}, "trials": 1,
      "methods": ["socp"], "seed": 1})"),
                  FormatError);
  CHECK_THROWS_AS(spec_from_json(R"({"scenario": "desk", "sweep": {"var": "N", "values": [8]}, "trials": 1,
      "methods": ["magic"], "seed": 1})"),
                  FormatError);
  CHECK_THROWS_AS(spec_from_json(R"({"scenario": "desk"})"), FormatError);
}
