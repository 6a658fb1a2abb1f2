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

#include "irssec/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace irssec {

using nlohmann::json;

namespace {

json cplx(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json vec(const Eigen::VectorXcd& x) {
  json a = json::array();
  for (Eigen::Index i = 0; i < x.size(); ++i) a.push_back(cplx(x(i)));
  return a;
}

std::complex<double> to_cplx(const json& j) {
  if (!j.is_array() || j.size() != 2) throw FormatError("expected a [re, im] pair, got " + j.dump());
  return {j[0].get<double>(), j[1].get<double>()};
}

Eigen::VectorXcd to_vec(const json& j) {
  if (!j.is_array()) throw FormatError("expected an array of [re, im] pairs");
  Eigen::VectorXcd x(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) x(i) = to_cplx(j[i]);
  return x;
}

const json& at(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw FormatError(std::string("missing key '") + key + "'");
  return j.at(key);
}

template <class T>
void opt(const json& j, const char* key, T& out) {
  if (j.is_object() && j.contains(key)) out = j.at(key).get<T>();
}

json config_json(const SystemConfig& c) {
  return {{"M", c.M},
          {"N", c.N},
          {"K", c.K},
          {"group_sizes", c.group_sizes},
          {"L", c.L},
          {"sigma2_dbm", watts_to_dbm(c.sigma2)},
          {"gamma_s", c.gamma_s},
          {"beta", c.beta}};
}

SystemConfig config_from(const json& j) {
  SystemConfig c;
  c.M = at(j, "M").get<int>();
  c.N = at(j, "N").get<int>();
  c.K = at(j, "K").get<int>();
  c.group_sizes = at(j, "group_sizes").get<std::vector<int>>();
  c.L = at(j, "L").get<int>();
  c.sigma2 = dbm_to_watts(at(j, "sigma2_dbm").get<double>());
  c.gamma_s = at(j, "gamma_s").get<double>();
  opt(j, "beta", c.beta);
  return c;
}

json geometry_json(const Geometry& g) {
  return {{"d_AI", g.d_AI},         {"d_AB_h", g.d_AB_h},     {"d_AE_h", g.d_AE_h},     {"d_v", g.d_v},
          {"r_B", g.r_B},           {"r_E", g.r_E},           {"alpha_AI", g.alpha_AI}, {"alpha_IU", g.alpha_IU},
          {"alpha_AU", g.alpha_AU}, {"PL0_db", g.PL0_db},     {"d0", g.d0}};
}

// Missing geometry keys keep their defaults.
Geometry geometry_from(const json& j) {
  Geometry g;
  opt(j, "d_AI", g.d_AI);
  opt(j, "d_AB_h", g.d_AB_h);
  opt(j, "d_AE_h", g.d_AE_h);
  opt(j, "d_v", g.d_v);
  opt(j, "r_B", g.r_B);
  opt(j, "r_E", g.r_E);
  opt(j, "alpha_AI", g.alpha_AI);
  opt(j, "alpha_IU", g.alpha_IU);
  opt(j, "alpha_AU", g.alpha_AU);
  opt(j, "PL0_db", g.PL0_db);
  opt(j, "d0", g.d0);
  return g;
}

json channels_json(const ChannelSet& ch) {
  json G = json::array();
  for (Eigen::Index n = 0; n < ch.G.rows(); ++n) G.push_back(vec(ch.G.row(n).transpose()));
  auto users = [](const std::vector<std::vector<Eigen::VectorXcd>>& h) {
    json a = json::array();
    for (const auto& grp : h) {
      json b = json::array();
      for (const auto& x : grp) b.push_back(vec(x));
      a.push_back(b);
    }
    return a;
  };
  json ae = json::array(), ie = json::array();
  for (const auto& x : ch.h_ae) ae.push_back(vec(x));
  for (const auto& x : ch.h_ie) ie.push_back(vec(x));
  return {{"G", G}, {"h_ab", users(ch.h_ab)}, {"h_ib", users(ch.h_ib)}, {"h_ae", ae}, {"h_ie", ie}};
}

ChannelSet channels_from(const json& j, const SystemConfig& c) {
  ChannelSet ch;
  const json& G = at(j, "G");
  if (!G.is_array() || static_cast<int>(G.size()) != c.N) throw FormatError("channels.G must have N rows");
  ch.G.resize(c.N, c.M);
  for (int n = 0; n < c.N; ++n) {
    auto row = to_vec(G[n]);
    if (row.size() != c.M) throw FormatError("channels.G rows must have M entries");
    ch.G.row(n) = row.transpose();
  }
  auto users = [&](const char* key, int len) {
    const json& a = at(j, key);
    std::vector<std::vector<Eigen::VectorXcd>> h;
    if (!a.is_array() || static_cast<int>(a.size()) != c.K) throw FormatError(std::string("channels.") + key + " must have K groups");
    for (int k = 0; k < c.K; ++k) {
      if (!a[k].is_array() || static_cast<int>(a[k].size()) != c.group_sizes[k])
        throw FormatError(std::string("channels.") + key + " group size mismatch");
      h.emplace_back();
      for (const auto& x : a[k]) {
        h.back().push_back(to_vec(x));
        if (h.back().back().size() != len) throw FormatError(std::string("channels.") + key + " has a wrong length");
      }
    }
    return h;
  };
  auto eves = [&](const char* key, int len) {
    const json& a = at(j, key);
    std::vector<Eigen::VectorXcd> h;
    if (!a.is_array() || static_cast<int>(a.size()) != c.L) throw FormatError(std::string("channels.") + key + " must have L entries");
    for (const auto& x : a) {
      h.push_back(to_vec(x));
      if (h.back().size() != len) throw FormatError(std::string("channels.") + key + " has a wrong length");
    }
    return h;
  };
  ch.h_ab = users("h_ab", c.M);
  ch.h_ib = users("h_ib", c.N);
  ch.h_ae = eves("h_ae", c.M);
  ch.h_ie = eves("h_ie", c.N);
  return ch;
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

// Wraps nlohmann type errors so callers only see FormatError.
template <class F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw FormatError(e.what());
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

template <class Row, class F>
std::vector<Row> read_csv(std::istream& is, const char* header, std::size_t ncols, F&& fill) {
  std::string line;
  if (!std::getline(is, line)) throw FormatError("empty CSV");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header) throw FormatError("unexpected CSV header: " + line);
  std::vector<Row> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto f = split_csv(line);
    if (f.size() != ncols) throw FormatError("CSV line " + std::to_string(lineno) + ": wrong column count");
    try {
      rows.push_back(fill(f));
    } catch (const std::exception& e) {
      throw FormatError("CSV line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return rows;
}

bool parse_bool(const std::string& s) {
  if (s == "true" || s == "1") return true;
  if (s == "false" || s == "0") return false;
  throw std::invalid_argument("bad boolean '" + s + "'");
}

long long parse_int(const std::string& s) {
  long long v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("bad integer '" + s + "'");
  return v;
}

std::uint64_t parse_u64(const std::string& s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("bad seed '" + s + "'");
  return v;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, p);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw std::invalid_argument("bad number '" + s + "'");
  return v;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

std::string scenario_to_json(const Scenario& s, bool include_channels) {
  json j = {{"config", config_json(s.config)}, {"geometry", geometry_json(s.geometry)}, {"seed", s.seed}};
  if (include_channels) j["channels"] = channels_json(s.channels);
  return j.dump(1);
}

Scenario scenario_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text);
    const SystemConfig c = config_from(at(j, "config"));
    const Geometry g = j.contains("geometry") ? geometry_from(j.at("geometry")) : Geometry{};
    c.validate();
    g.validate();
    const std::uint64_t seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>() : 1;
    if (!j.contains("channels")) return make_scenario(c, g, seed);
    Scenario s;
    s.config = c;
    s.geometry = g;
    s.seed = seed;
    s.channels = channels_from(j.at("channels"), c);
    return s;
  });
}

std::string solution_to_json(const BeamformingSolution& sol, const RateReport& report) {
  json w = json::array();
  for (const auto& x : sol.w) w.push_back(vec(x));
  json theta = json::array();
  for (Eigen::Index n = 0; n < sol.theta.size(); ++n) theta.push_back(sol.theta(n));
  json rates = {{"R_b", report.R_b},
                {"R_e_max", report.R_e_max},
                {"R_s", report.R_s},
                {"min_secrecy_margin", report.min_secrecy_margin},
                {"max_modulus_error", report.max_modulus_error},
                {"feasible", report.feasible}};
  json j = {{"w", w}, {"q_AN", vec(sol.q)}, {"theta", theta}, {"power_w", transmit_power(sol)}, {"rates", rates}};
  if (sol.v.size() == 0) j["irs"] = false;
  return j.dump(1);
}

BeamformingSolution solution_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text);
    BeamformingSolution sol;
    for (const auto& x : at(j, "w")) sol.w.push_back(to_vec(x));
    sol.q = to_vec(at(j, "q_AN"));
    const auto th = at(j, "theta").get<std::vector<double>>();
    const bool irs = !j.contains("irs") || j.at("irs").get<bool>();
    if (irs) sol.set_theta(Eigen::Map<const Eigen::VectorXd>(th.data(), static_cast<Eigen::Index>(th.size())));
    for (const auto& x : sol.w)
      if (x.size() != sol.q.size()) throw FormatError("w and q_AN lengths differ");
    return sol;
  });
}

ExperimentSpec spec_from_json(const std::string& text) {
  return guarded([&] {
    const json j = parse(text);
    ExperimentSpec spec;
    const json& sc = at(j, "scenario");
    if (sc.is_string()) {
      const Preset p = preset(sc.get<std::string>());
      spec.config = p.config;
      spec.geometry = p.geometry;
    } else {
      spec.config = config_from(at(sc, "config"));
      spec.geometry = sc.contains("geometry") ? geometry_from(sc.at("geometry")) : Geometry{};
    }
    const json& sw = at(j, "sweep");
    spec.sweep_var = at(sw, "var").get<std::string>();
    spec.values = at(sw, "values").get<std::vector<double>>();
    spec.trials = at(j, "trials").get<int>();
    for (const auto& m : at(j, "methods")) spec.methods.push_back(parse_method(m.get<std::string>()));
    spec.seed = at(j, "seed").get<std::uint64_t>();
    opt(j, "workers", spec.workers);
    if (j.contains("options")) {
      const json& o = j.at("options");
      opt(o, "epsilon", spec.options.sdr.epsilon);
      opt(o, "epsilon", spec.options.socp.epsilon);
      opt(o, "max_iters", spec.options.sdr.max_iters);
      opt(o, "max_iters", spec.options.socp.max_iters);
      opt(o, "randomization_count", spec.options.sdr.randomization_count);
      if (o.contains("u_step")) {
        const auto m = o.at("u_step").get<std::string>();
        if (m == "analytic_center") spec.options.sdr.u_step = UStepMode::analytic_center;
        else if (m == "max_margin") spec.options.sdr.u_step = UStepMode::max_margin;
        else throw FormatError("options.u_step must be analytic_center or max_margin");
      }
      if (o.contains("slack_mode")) {
        const auto m = o.at("slack_mode").get<std::string>();
        if (m == "paper_faithful") spec.options.socp.slack_mode = SlackMode::paper_faithful;
        else if (m == "margin_max") spec.options.socp.slack_mode = SlackMode::margin_max;
        else throw FormatError("options.slack_mode must be paper_faithful or margin_max");
      }
    }
    spec.validate();
    return spec;
  });
}

void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kResultsHeader << '\n';
  for (const auto& r : rows)
    os << r.method << ',' << r.sweep_var << ',' << format_double(r.sweep_value) << ',' << r.trial_seed << ','
       << format_double(r.power_w) << ',' << format_double(r.power_dbm) << ',' << r.iterations << ','
       << format_double(r.solve_time_s) << ',' << (r.feasible ? "true" : "false") << ','
       << format_double(r.min_secrecy_margin) << '\n';
}

std::vector<ResultRow> read_results_csv(std::istream& is) {
  return read_csv<ResultRow>(is, kResultsHeader, 10, [](const std::vector<std::string>& f) {
    ResultRow r;
    r.method = f[0];
    r.sweep_var = f[1];
    r.sweep_value = parse_double(f[2]);
    r.trial_seed = parse_u64(f[3]);
    r.power_w = parse_double(f[4]);
    r.power_dbm = parse_double(f[5]);
    r.iterations = static_cast<int>(parse_int(f[6]));
    r.solve_time_s = parse_double(f[7]);
    r.feasible = parse_bool(f[8]);
    r.min_secrecy_margin = parse_double(f[9]);
    return r;
  });
}

void write_aggregate_csv(std::ostream& os, const std::vector<AggregateRow>& rows) {
  os << kAggregateHeader << '\n';
  for (const auto& a : rows)
    os << a.method << ',' << a.sweep_var << ',' << format_double(a.sweep_value) << ',' << a.trials_ok << ','
       << a.trials_infeasible << ',' << format_double(a.mean_power_w) << ',' << format_double(a.mean_power_dbm)
       << '\n';
}

std::vector<AggregateRow> read_aggregate_csv(std::istream& is) {
  return read_csv<AggregateRow>(is, kAggregateHeader, 7, [](const std::vector<std::string>& f) {
    AggregateRow a;
    a.method = f[0];
    a.sweep_var = f[1];
    a.sweep_value = parse_double(f[2]);
    a.trials_ok = static_cast<int>(parse_int(f[3]));
    a.trials_infeasible = static_cast<int>(parse_int(f[4]));
    a.mean_power_w = parse_double(f[5]);
    a.mean_power_dbm = parse_double(f[6]);
    return a;
  });
}

void write_trace_csv(std::ostream& os, const SolveTrace& trace) {
  const bool sdr = trace.method == "sdr";
  os << (sdr ? kSdrTraceHeader : kSocpTraceHeader) << '\n';
  for (const auto& r : trace.rows) {
    os << r.iter << ',' << format_double(r.objective_w) << ',' << format_double(r.time_a_s) << ','
       << format_double(r.time_b_s) << ',';
    if (sdr)
      os << r.status;
    else
      os << (r.recovery_violation ? 1 : 0);
    os << '\n';
  }
}

}  // namespace irssec
