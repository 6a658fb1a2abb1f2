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

// Acceptance run: one PASS/FAIL line per criterion.
//
// Criteria listed with --allow-unattained are still printed as FAIL when
// they fail, but do not change the exit status. They are the ones whose
// failure is understood and documented; a pass on them is printed as is.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "irssec/harness.hpp"
#include "irssec/sdr.hpp"
#include "irssec/socp.hpp"
#include "oracle.hpp"
#include "util.hpp"

using namespace irssec;
using namespace irssec::testing;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Args {
  int trials = 50;
  int paired = 20;
  int workers = 0;
  std::uint64_t seed = 2026;
  std::vector<int> only;
  std::vector<int> allow_unattained;
};

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ExperimentSpec desk_spec(const Args& a, const std::string& var, std::vector<double> values, std::vector<Method> methods) {
  const Preset p = preset("desk");
  ExperimentSpec s;
  s.config = p.config;
  s.geometry = p.geometry;
  s.sweep_var = var;
  s.values = std::move(values);
  s.trials = a.trials;
  s.methods = std::move(methods);
  s.seed = a.seed;
  s.workers = a.workers;
  return s;
}

// Means of the aggregate table, keyed by (method, value).
std::map<std::pair<std::string, double>, AggregateRow> by_key(const SweepResult& r) {
  std::map<std::pair<std::string, double>, AggregateRow> m;
  for (const auto& a : r.aggregate) m[{a.method, a.sweep_value}] = a;
  return m;
}

// --- 1 --------------------------------------------------------------------

Verdict surrogates() {
  std::mt19937_64 rng(101);
  const double step = 1e-5;
  double dom = 1e300, tang = 0, fd = 0;
  int samples = 0;

  // MM bounds in (W, Q) and in U: 10^4 samples each.
  for (int pass = 0; pass < 2; ++pass) {
    const auto h = synthetic_lifted(rng, 3, 4, {2, 1}, 2);
    for (int e_i = 0; e_i < 100; ++e_i) {
      const auto e = rand_iterate(rng, 3, 4, 2, std::exp(cn01(rng).real()));
      const int k = e_i % 2, j = 0, l = (e_i / 2) % 2;
      const auto [b2, b3] = pass == 0 ? mm_bound_wq(e, h, 1.0, k, j, l) : mm_bound_u(e, h, 1.0, k, j, l);
      tang = std::max({tang, std::abs(b2(e) - eval_f(2, e, h, 1.0, k, j, l)),
                       std::abs(b3(e) - eval_f(3, e, h, 1.0, k, j, l))});
      for (int s = 0; s < 100; ++s, ++samples) {
        auto x = e;
        if (pass == 0) {
          const auto r = rand_iterate(rng, 3, 4, 2, std::exp(2 * cn01(rng).real()));
          x.W = r.W;
          x.Q = r.Q;
        } else {
          x.U = rand_unit_diag_psd(rng, 5, 1 + s % 5);
        }
        dom = std::min({dom, b2(x) - eval_f(2, x, h, 1.0, k, j, l), b3(x) - eval_f(3, x, h, 1.0, k, j, l)});
      }
      // central differences along a random Hermitian direction
      auto p = e, m = e;
      Eigen::MatrixXcd D;
      if (pass == 0) {
        D = rand_herm(rng, 3);
        if (e_i % 3 == 0) {
          p.Q += step * D;
          m.Q -= step * D;
        } else {
          const int g = 1 - k;  // interference beam, present in both f2 and f3
          p.W[g] += step * D;
          m.W[g] -= step * D;
        }
      } else {
        D = rand_herm(rng, 5);
        p.U += step * D;
        m.U -= step * D;
      }
      for (int i : {2, 3}) {
        const auto& b = i == 2 ? b2 : b3;
        const double num = (eval_f(i, p, h, 1.0, k, j, l) - eval_f(i, m, h, 1.0, k, j, l)) / (2 * step);
        const double ana = (b.grad * D).trace().real();
        fd = std::max(fd, std::abs(num - ana) / std::max(std::abs(ana), 1e-12));
      }
    }
  }

  // F bound: 10^4 samples, tangency, gradient of |x|^2/r at the expansion point.
  double fdom = 1e300, ftang = 0, ffd = 0;
  std::exponential_distribution<double> ex(1.0);
  for (int i = 0; i < 10000; ++i) {
    const std::complex<double> x = 3.0 * cn01(rng), xt = 3.0 * cn01(rng);
    const double r = 4 * ex(rng) + 1e-3, rt = 4 * ex(rng) + 1e-3;
    fdom = std::min(fdom, std::norm(x) / r - surrogate_F(x, r, xt, rt));
    ftang = std::max(ftang, std::abs(surrogate_F(xt, rt, xt, rt) - std::norm(xt) / rt) / (1 + std::norm(xt) / rt));
    if (i < 1000) {
      auto f = [](std::complex<double> z, double q) { return std::norm(z) / q; };
      const double hs = 1e-6 * (1 + std::abs(xt)), hr = 1e-6 * rt;
      const double g_re = (f(xt + hs, rt) - f(xt - hs, rt)) / (2 * hs);
      const double g_im = (f(xt + std::complex<double>(0, hs), rt) - f(xt - std::complex<double>(0, hs), rt)) / (2 * hs);
      const double g_r = (f(xt, rt + hr) - f(xt, rt - hr)) / (2 * hr);
      // F is affine: its partials are exact differences.
      const double F0 = surrogate_F(xt, rt, xt, rt);
      const double a_re = surrogate_F(xt + 1.0, rt, xt, rt) - F0;
      const double a_im = surrogate_F(xt + std::complex<double>(0, 1), rt, xt, rt) - F0;
      const double a_r = surrogate_F(xt, rt + 1.0, xt, rt) - F0;
      for (auto [n, a] : {std::pair{g_re, a_re}, {g_im, a_im}, {g_r, a_r}})
        ffd = std::max(ffd, std::abs(n - a) / std::max(std::abs(a), 1e-9));
    }
  }
  Verdict v;
  v.pass = dom >= -1e-9 && fdom >= -1e-9 && tang < 1e-10 && ftang < 1e-12 && fd < 1e-5 && ffd < 1e-5;
  v.detail = fmt("MM: %d samples, min(bound - f) %.2e, tangency %.1e, fd rel %.1e; F: min %.2e, tangency %.1e, fd rel %.1e",
                 samples, dom, tang, fd, fdom, ftang, ffd);
  return v;
}

// --- 2 --------------------------------------------------------------------

Verdict lifting() {
  const SystemConfig c = preset("desk").config;
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> ph(0, 2 * std::numbers::pi);
  double worst = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto s = make_scenario(c, Geometry{}, 5000 + t);
    const auto h = lift_channels(s.channels);
    Eigen::VectorXd th(c.N);
    for (int n = 0; n < c.N; ++n) th(n) = ph(rng);
    auto sol = BeamformingSolution::zeros(c.M, c.N, 1);
    sol.set_theta(th);
    const Eigen::VectorXcd w = rand_cmat(rng, c.M, 1);
    const int k = t % c.K;
    const auto lhs = (sol.u().adjoint() * h.H_user[k][0] * w)(0);
    const auto rhs = (oracle::bob_row(s.channels, k, 0, th) * w)(0);
    // scale: sum of the magnitudes of the individual terms
    const Eigen::VectorXcd Gw = s.channels.G * w;
    double scale = std::abs(s.channels.h_ab[k][0].dot(w));
    for (int n = 0; n < c.N; ++n) scale += std::abs(s.channels.h_ib[k][0](n) * Gw(n));
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
    const auto le = (sol.u().adjoint() * h.H_eve[0] * w)(0);
    const auto re = (oracle::eve_row(s.channels, 0, th) * w)(0);
    const double eve_scale =
        std::abs(s.channels.h_ae[0].dot(w)) + Gw.cwiseAbs().dot(s.channels.h_ie[0].cwiseAbs());
    worst = std::max(worst, std::abs(le - re) / eve_scale);
  }
  return {worst < 1e-10, fmt("1000 draws, worst relative residual %.2e", worst)};
}

// --- 3 and 6 ----------------------------------------------------------------

struct Paired {
  std::vector<RunResult> sdr, socp;
  std::vector<Scenario> scen;
};

Verdict descent(const Args& a) {
  const Preset p = preset("desk");
  double worst_sdr = 0, worst_socp = 0, worst_rec = 0;
  int rec_rows = 0, rec_up = 0, steps = 0;
  for (int t = 0; t < a.paired; ++t) {
    const auto seed = trial_seed(a.seed + 3, t);
    const auto s = make_scenario(p.config, p.geometry, seed);
    SdrOptions so;
    so.seed = seed;
    SocpOptions co;
    co.seed = seed;
    const auto r1 = run_sdr(s, so);
    const auto r2 = run_socp(s, co);
    for (std::size_t i = 1; i < r1.trace.rows.size(); ++i, ++steps) {
      const double prev = r1.trace.rows[i - 1].objective_w;
      worst_sdr = std::max(worst_sdr, (r1.trace.rows[i].objective_w - prev) / prev);
    }
    for (std::size_t i = 1; i < r2.trace.rows.size(); ++i, ++steps) {
      const double prev = r2.trace.rows[i - 1].objective_w;
      const double inc = (r2.trace.rows[i].objective_w - prev) / prev;
      if (r2.trace.rows[i].recovery_violation) {
        ++rec_rows;
        if (inc > 1e-6) ++rec_up;
        worst_rec = std::max(worst_rec, inc);
      } else {
        worst_socp = std::max(worst_socp, inc);
      }
    }
  }
  Verdict v;
  v.pass = worst_sdr <= 1e-6 && worst_socp <= 1e-6;
  v.detail = fmt("%d instances, %d steps; worst relative increase sdr %.2e, socp %.2e; recovery steps %d (%d increased, worst %.2e)",
                 a.paired, steps, worst_sdr, worst_socp, rec_rows, rec_up, worst_rec);
  return v;
}

Verdict lower_bound(const Args& a) {
  const Preset p = preset("desk");
  int first = 0, second = 0;
  double worst_first = -1e300, worst_second = -1e300;
  for (int t = 0; t < a.paired; ++t) {
    const auto seed = trial_seed(a.seed + 6, t);
    const auto s = make_scenario(p.config, p.geometry, seed);
    SdrOptions so;
    so.seed = seed;
    so.epsilon = 1e-5;  // run the alternation to convergence
    so.max_iters = 300;
    SocpOptions co;
    co.seed = seed;
    const auto r1 = run_sdr(s, so);
    const auto r2 = run_socp(s, co);
    const double d1 = r1.relaxed_objective_w - r1.power_w;
    const double d2 = r1.relaxed_objective_w - r2.power_w;
    if (d1 <= 1e-6) ++first;
    if (d2 <= 0) ++second;
    worst_first = std::max(worst_first, d1);
    worst_second = std::max(worst_second, d2 / r2.power_w);
  }
  Verdict v;
  v.pass = first == a.paired && second == a.paired;
  v.detail = fmt("relaxed <= randomized (+1e-6 W) on %d/%d (worst excess %.2e W); relaxed <= socp on %d/%d (worst excess %.2f%%)",
                 first, a.paired, worst_first, second, a.paired, 100 * worst_second);
  return v;
}

// --- 5 ----------------------------------------------------------------------

Verdict small_oracle() {
  SystemConfig c;
  c.M = 2;
  c.N = 2;
  c.K = 1;
  c.group_sizes = {1};
  c.L = 1;
  c.sigma2 = dbm_to_watts(-90);
  double worst_socp = 0, worst_sdr = 0;
  bool ok = true;
  const int n = 5;
  for (int i = 0; i < n; ++i) {
    const auto s = make_scenario(c, Geometry{}, 900 + i);
    const auto best = oracle::phase_grid_optimum(s.channels, c.sigma2, c.gamma_s, 360);
    SocpOptions co;
    co.seed = 900 + i;
    SdrOptions so;
    so.seed = 900 + i;
    const double r1 = run_socp(s, co).power_w / best.power;
    const double r2 = run_sdr(s, so).power_w / best.power;
    worst_socp = std::max(worst_socp, r1);
    worst_sdr = std::max(worst_sdr, r2);
    ok = ok && r1 <= 1.05 && r2 <= 1.10;
  }
  return {ok, fmt("%d instances, 360x360 grid; worst power / oracle: socp %.4f (<= 1.05), sdr %.4f (<= 1.10)", n,
                  worst_socp, worst_sdr)};
}

// --- 11 ---------------------------------------------------------------------

Verdict paper_smoke(const Args& a) {
  const Preset p = preset("paper");
  const auto s = make_scenario(p.config, p.geometry, a.seed);
  std::ostringstream os;
  bool ok = true;
  for (Method m : {Method::sdr, Method::socp, Method::no_irs, Method::random_phase}) {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      const auto r = run_method(m, s, a.seed);
      const double dt = seconds_since(t0);
      const bool feas = check_feasible(r.solution, lift_channels(s.channels), p.config, 1e-4).feasible;
      const double limit = m == Method::sdr ? 1800 : 300;
      ok = ok && dt < limit;
      os << to_string(m) << fmt(" %.1f s %.2f dBm%s; ", dt, watts_to_dbm(r.power_w), feas ? "" : " (check failed)");
    } catch (const std::exception& e) {
      ok = false;
      os << to_string(m) << " error: " << e.what() << "; ";
    }
  }
  return {ok, os.str()};
}

}  // namespace

int main(int argc, char** argv) {
  Args a;
  CLI::App app{"acceptance run"};
  app.add_option("--trials", a.trials, "Monte-Carlo trials for sweeps")->capture_default_str();
  app.add_option("--paired", a.paired, "paired instances for the descent and bound audits")->capture_default_str();
  app.add_option("--workers", a.workers, "0: one per hardware thread")->capture_default_str();
  app.add_option("--seed", a.seed)->capture_default_str();
  app.add_option("--only", a.only, "criteria to run");
  app.add_option("--allow-unattained", a.allow_unattained, "criteria whose failure is documented");
  CLI11_PARSE(app, argc, argv);
  std::setvbuf(stdout, nullptr, _IOLBF, 0);

  const std::set<int> only(a.only.begin(), a.only.end());
  const std::set<int> allowed(a.allow_unattained.begin(), a.allow_unattained.end());
  auto wanted = [&](int i) { return only.empty() || only.count(i); };
  int failed_hard = 0, passed = 0, run = 0;
  std::vector<int> unattained;

  auto report = [&](int id, const char* name, const std::function<Verdict()>& f) {
    if (!wanted(id)) return;
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = f();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    ++run;
    if (v.pass) {
      ++passed;
    } else if (allowed.count(id)) {
      unattained.push_back(id);
    } else {
      ++failed_hard;
    }
    std::printf("[%s] %2d %s (%.0f s): %s\n", v.pass ? "PASS" : "FAIL", id, name, seconds_since(t0), v.detail.c_str());
  };

  report(1, "surrogate correctness", surrogates);
  report(2, "lifting exactness", lifting);
  report(3, "descent", [&] { return descent(a); });

  // Criteria 4, 7 and 10 share the Fig. 4 analogue sweep.
  SweepResult gamma;
  bool have_gamma = false;
  auto gamma_sweep = [&]() -> const SweepResult& {
    if (!have_gamma) {
      gamma = run_sweep(desk_spec(a, "gamma_s", {0.5, 1.0, 1.5, 2.0},
                                  {Method::sdr, Method::socp, Method::random_phase, Method::no_irs}));
      have_gamma = true;
    }
    return gamma;
  };

  report(4, "feasibility", [&] {
    const auto& g = gamma_sweep();
    std::map<std::string, int> bad, total;
    for (const auto& r : g.rows)
      if (r.sweep_value == 1.0) {
        ++total[r.method];
        if (!r.feasible) ++bad[r.method];
      }
    int nbad = 0;
    std::ostringstream os;
    os << a.trials << " trials at gamma_s = 1, tol 1e-4;";
    for (const auto& [m, n] : total) {
      os << ' ' << m << ' ' << n - bad[m] << '/' << n;
      nbad += bad[m];
    }
    int all_bad = 0;
    for (const auto& r : g.rows) all_bad += !r.feasible;
    os << "; whole sweep " << g.rows.size() - all_bad << '/' << g.rows.size();
    return Verdict{nbad == 0, os.str()};
  });

  report(5, "small-instance oracle", small_oracle);
  report(6, "sdr lower bound", [&] { return lower_bound(a); });

  report(7, "gamma_s trend", [&] {
    const auto m = by_key(gamma_sweep());
    const std::vector<double> vals{0.5, 1.0, 1.5, 2.0};
    bool inc = true, order = true;
    std::ostringstream os;
    for (const char* meth : {"sdr", "socp", "random-phase", "no-irs"}) {
      os << meth << ":";
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const auto& r = m.at({meth, vals[i]});
        os << fmt(" %.2f", r.mean_power_dbm);
        if (i > 0 && !(r.mean_power_w > m.at({meth, vals[i - 1]}).mean_power_w)) inc = false;
      }
      os << " dBm; ";
    }
    for (double v : vals) {
      const double irs = std::max(m.at({"sdr", v}).mean_power_w, m.at({"socp", v}).mean_power_w);
      if (!(irs < m.at({"random-phase", v}).mean_power_w && m.at({"random-phase", v}).mean_power_w < m.at({"no-irs", v}).mean_power_w))
        order = false;
    }
    // paired audits of the baselines
    std::map<std::pair<double, int>, std::map<std::string, double>> trial;
    for (const auto& r : gamma_sweep().rows)
      if (r.feasible) trial[{r.sweep_value, r.trial}][r.method] = r.power_w;
    int n = 0, ni = 0, nr = 0;
    for (auto& [key, pw] : trial)
      if (pw.count("socp") && pw.count("no-irs") && pw.count("random-phase")) {
        ++n;
        ni += pw["no-irs"] >= pw["socp"];
        nr += pw["random-phase"] >= pw["socp"];
      }
    os << fmt("increasing %s, ordering %s; paired: no-irs >= socp %d/%d, random-phase >= socp %d/%d",
              inc ? "yes" : "no", order ? "yes" : "no", ni, n, nr, n);
    return Verdict{inc && order, os.str()};
  });

  SweepResult nsweep;
  bool have_n = false;
  auto n_sweep = [&]() -> const SweepResult& {
    if (!have_n) {
      nsweep = run_sweep(desk_spec(a, "N", {8, 16, 32}, {Method::socp, Method::no_irs}));
      have_n = true;
    }
    return nsweep;
  };

  report(8, "N trend", [&] {
    const auto m = by_key(n_sweep());
    const double s8 = m.at({"socp", 8.0}).mean_power_w, s16 = m.at({"socp", 16.0}).mean_power_w,
                 s32 = m.at({"socp", 32.0}).mean_power_w;
    double lo = 1e300, hi = -1e300;
    for (double v : {8.0, 16.0, 32.0}) {
      lo = std::min(lo, m.at({"no-irs", v}).mean_power_dbm);
      hi = std::max(hi, m.at({"no-irs", v}).mean_power_dbm);
    }
    const bool ok = s8 > s16 && s16 > s32 && hi - lo < 0.5;
    return Verdict{ok, fmt("socp mean %.2f / %.2f / %.2f dBm at N = 8 / 16 / 32; no-irs spread %.3f dB",
                           watts_to_dbm(s8), watts_to_dbm(s16), watts_to_dbm(s32), hi - lo)};
  });

  report(9, "half-power claim", [&] {
    const auto m = by_key(n_sweep());
    std::vector<double> ratio;
    for (double v : {8.0, 16.0, 32.0}) ratio.push_back(m.at({"socp", v}).mean_power_w / m.at({"no-irs", v}).mean_power_w);
    const bool strict = ratio[2] <= 0.6;
    const bool fallback = ratio[2] < 1.0 && ratio[0] > ratio[1] && ratio[1] > ratio[2];
    return Verdict{strict || fallback,
                   fmt("socp / no-irs mean power at N = 32: %.3f (%s); ratio at N = 8 / 16 / 32: %.3f / %.3f / %.3f",
                       ratio[2], strict ? "<= 0.6" : (fallback ? "above 0.6, < 1 and widening in N" : "not attained"),
                       ratio[0], ratio[1], ratio[2])};
  });

  report(10, "convergence speed", [&] {
    std::map<int, int> it_sdr, it_socp;
    for (const auto& r : gamma_sweep().rows)
      if (r.sweep_value == 1.0 && r.feasible) {
        if (r.method == "sdr") it_sdr[r.trial] = r.iterations;
        if (r.method == "socp") it_socp[r.trial] = r.iterations;
      }
    int paired = 0, faster = 0, sdr30 = 0, socp30 = 0;
    for (const auto& [t, n] : it_sdr)
      if (it_socp.count(t)) {
        ++paired;
        faster += it_socp[t] < n;
        sdr30 += n <= 30;
        socp30 += it_socp[t] <= 30;
      }
    const bool ok = paired > 0 && faster >= 0.7 * paired && sdr30 >= 0.9 * paired && socp30 >= 0.9 * paired;
    return Verdict{ok, fmt("%d paired trials: socp fewer iterations %d (%.0f%%), within 30: sdr %d (%.0f%%), socp %d (%.0f%%)",
                           paired, faster, 100.0 * faster / paired, sdr30, 100.0 * sdr30 / paired, socp30,
                           100.0 * socp30 / paired)};
  });

  report(11, "paper-profile smoke run", [&] { return paper_smoke(a); });

  std::printf("%d/%d criteria pass", passed, run);
  if (!unattained.empty()) {
    std::printf("; documented unattained:");
    for (int i : unattained) std::printf(" %d", i);
  }
  std::printf("; unexpected failures: %d\n", failed_hard);
  return failed_hard == 0 ? 0 : 1;
}
