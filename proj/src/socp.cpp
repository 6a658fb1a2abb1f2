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

#include "irssec/socp.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "normalize.hpp"
#include "scaling.hpp"

namespace irssec {

namespace {

constexpr std::uint64_t kSocpInitStream = 0x5c1;

using conic::ComplexExpr;
using conic::ComplexVarVec;
using conic::ConeProgram;
using conic::LinExpr;
using cplx = std::complex<double>;

// F(x, r, xt, rt) with x, r affine.
LinExpr surrogate_expr(const ComplexExpr& x, const LinExpr& r, cplx xt, double rt) {
  LinExpr e = (2.0 / rt) * (xt.real() * x.re + xt.imag() * x.im);
  e -= (std::norm(xt) / (rt * rt)) * r;
  return e;
}

// ||v||^2 <= R as ||(2v, R - 1)|| <= R + 1
void add_quad_le(ConeProgram& p, const std::vector<ComplexExpr>& v, double constant, const LinExpr& R) {
  std::vector<LinExpr> x;
  for (const auto& c : v) {
    x.push_back(2.0 * c.re);
    x.push_back(2.0 * c.im);
  }
  x.push_back(LinExpr(2.0 * constant));
  x.push_back(R - 1.0);
  p.add_soc(R + 1.0, x);
}

std::vector<std::vector<double>> exact_bob_sinr(const BeamformingSolution& s, const LiftedChannels& lifted,
                                                double sigma2) {
  std::vector<std::vector<double>> g(lifted.K());
  for (int k = 0; k < lifted.K(); ++k)
    for (int j = 0; j < lifted.group_size(k); ++j) g[k].push_back(sinr_bob(s, lifted, sigma2, k, j));
  return g;
}

double margin_of(const BeamformingSolution& s, const LiftedChannels& lifted, double sigma2) {
  return detail::secrecy_margin(detail::received_powers(s, lifted), 1.0, sigma2);
}

SinrSlacks read_slacks(const conic::ConicSolution& sol, const std::vector<std::vector<LinExpr>>& gb,
                       const std::vector<std::vector<LinExpr>>& ge) {
  SinrSlacks s;
  for (const auto& row : gb) {
    s.gamma_b.emplace_back();
    for (const auto& e : row) s.gamma_b.back().push_back(sol.value(e));
  }
  for (const auto& row : ge) {
    s.gamma_e.emplace_back();
    for (const auto& e : row) s.gamma_e.back().push_back(sol.value(e));
  }
  return s;
}

P31Result p31(const Eigen::VectorXcd& u, const ScaExpansion& ex, const LiftedChannels& lifted,
              const SystemConfig& config, const conic::SolverOptions& solver) {
  const int K = lifted.K(), M = lifted.M, L = lifted.L();
  const double sigma = std::sqrt(config.sigma2);
  P31Result res;
  if (config.gamma_s <= 0.0) {
    res.status = conic::SolveStatus::optimal;
    res.w.assign(K, Eigen::VectorXcd::Zero(M));
    res.q = Eigen::VectorXcd::Zero(M);
    return res;
  }
  ConeProgram p;
  std::vector<ComplexVarVec> w;
  for (int g = 0; g < K; ++g) w.push_back(p.add_complex_variables(M));
  const ComplexVarVec q = p.add_complex_variables(M);
  std::vector<std::vector<LinExpr>> gb(K), ge(K);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < lifted.group_size(k); ++j) gb[k].push_back(p.add_variables(1)[0]);
    for (int l = 0; l < L; ++l) ge[k].push_back(p.add_variables(1)[0]);
  }

  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j) {
      const Eigen::RowVectorXcd a = u.adjoint() * lifted.H_user[k][j];
      const cplx xt = (a * ex.w[k])(0);
      const double rt = ex.gamma_b[k][j];
      if (!(rt > 0.0) || std::abs(xt) == 0.0) {
        res.status = conic::SolveStatus::infeasible;
        res.message = "bob: zero signal at the expansion point";
        return res;
      }
      std::vector<ComplexExpr> v;
      for (int g = 0; g < K; ++g)
        if (g != k) v.push_back(conic::dot(a, w[g]));
      v.push_back(conic::dot(a, q));
      add_quad_le(p, v, sigma, surrogate_expr(conic::dot(a, w[k]), gb[k][j], xt, rt));
    }

  for (int k = 0; k < K; ++k)
    for (int l = 0; l < L; ++l) {
      const Eigen::RowVectorXcd b = u.adjoint() * lifted.H_eve[l];
      LinExpr S(config.sigma2);
      for (int g = 0; g < K; ++g)
        if (g != k) S += surrogate_expr(conic::dot(b, w[g]), 1.0, (b * ex.w[g])(0), 1.0);
      S += surrogate_expr(conic::dot(b, q), 1.0, (b * ex.q)(0), 1.0);
      const ComplexExpr x = conic::dot(b, w[k]);
      p.add_rotated_soc(ge[k][l], 0.5 * S, {x.re, x.im});
    }

  const double c = std::exp2(config.gamma_s);
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j)
      for (int l = 0; l < L; ++l) p.add_nonneg(1.0 + gb[k][j] - c * (1.0 + ge[k][l]));

  const LinExpr t = p.add_variables(1)[0];
  std::vector<LinExpr> all;
  for (const auto& vec : w)
    for (int i = 0; i < M; ++i) {
      all.push_back(2.0 * vec.re[i]);
      all.push_back(2.0 * vec.im[i]);
    }
  for (int i = 0; i < M; ++i) {
    all.push_back(2.0 * q.re[i]);
    all.push_back(2.0 * q.im[i]);
  }
  all.push_back(t - 1.0);
  p.add_soc(t + 1.0, all);
  p.minimize(t);

  const auto sol = conic::solve(p, solver);
  res.status = sol.status;
  res.time_s = sol.solve_time_s;
  res.message = sol.message;
  if (!sol.ok()) {
    if (sol.status == conic::SolveStatus::infeasible)
      res.message = "surrogate SINR and coupling constraints admit no point";
    return res;
  }
  for (const auto& vec : w) res.w.push_back(sol.value(vec));
  res.q = sol.value(q);
  res.slacks = read_slacks(sol, gb, ge);
  res.power = res.q.squaredNorm();
  for (const auto& vec : res.w) res.power += vec.squaredNorm();
  return res;
}

P32Result p32(const BeamformingSolution& fixed, const LiftedChannels& lifted, const SystemConfig& config,
              SlackMode mode, const conic::SolverOptions& solver) {
  const int K = lifted.K(), L = lifted.L(), N = lifted.N;
  const double sigma = std::sqrt(config.sigma2);
  P32Result res;
  if (N == 0) {
    res.status = conic::SolveStatus::optimal;
    res.u = Eigen::VectorXcd::Ones(1);
    return res;
  }
  const Eigen::VectorXcd ut = fixed.u();
  const auto gt = exact_bob_sinr(fixed, lifted, config.sigma2);

  ConeProgram p;
  const ComplexVarVec u = p.add_complex_variables(N + 1);
  p.add_equality(u.re[N] - 1.0);
  p.add_equality(u.im[N]);
  for (int n = 0; n < N; ++n) p.add_soc(1.0, {u.re[n], u.im[n]});

  // u^H c as an affine expression of u, and its value at the expansion.
  auto amp = [&](const Eigen::VectorXcd& c) { return conic::conj(conic::dot(c.adjoint(), u)); };
  auto amp_t = [&](const Eigen::VectorXcd& c) { return ut.dot(c); };

  std::vector<std::vector<LinExpr>> gb(K), ge(K);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < lifted.group_size(k); ++j) gb[k].push_back(p.add_variables(1)[0]);
    for (int l = 0; l < L; ++l) ge[k].push_back(p.add_variables(1)[0]);
  }
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j) {
      const auto& H = lifted.H_user[k][j];
      const Eigen::VectorXcd ck = H * fixed.w[k];
      std::vector<ComplexExpr> v;
      for (int g = 0; g < K; ++g)
        if (g != k) v.push_back(amp(H * fixed.w[g]));
      v.push_back(amp(H * fixed.q));
      add_quad_le(p, v, sigma, surrogate_expr(amp(ck), gb[k][j], amp_t(ck), gt[k][j]));
    }
  for (int k = 0; k < K; ++k)
    for (int l = 0; l < L; ++l) {
      const auto& H = lifted.H_eve[l];
      LinExpr S(config.sigma2);
      for (int g = 0; g < K; ++g)
        if (g != k) {
          const Eigen::VectorXcd c = H * fixed.w[g];
          S += surrogate_expr(amp(c), 1.0, amp_t(c), 1.0);
        }
      const Eigen::VectorXcd cq = H * fixed.q;
      S += surrogate_expr(amp(cq), 1.0, amp_t(cq), 1.0);
      const ComplexExpr x = amp(H * fixed.w[k]);
      p.add_rotated_soc(ge[k][l], 0.5 * S, {x.re, x.im});
    }

  const double c = std::exp2(config.gamma_s);
  LinExpr m;
  if (mode == SlackMode::margin_max) m = p.add_variables(1)[0];
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j)
      for (int l = 0; l < L; ++l) p.add_nonneg(1.0 + gb[k][j] - c * (1.0 + ge[k][l]) - m);
  if (mode == SlackMode::margin_max) p.maximize(m); else p.minimize(LinExpr(0.0));

  const auto sol = conic::solve(p, solver);
  res.status = sol.status;
  res.time_s = sol.solve_time_s;
  if (!sol.ok()) return res;
  res.u = sol.value(u);
  res.u(N) = 1.0;
  res.slacks = read_slacks(sol, gb, ge);
  res.min_margin = std::numeric_limits<double>::infinity();
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j)
      for (int l = 0; l < L; ++l)
        res.min_margin = std::min(res.min_margin, 1.0 + res.slacks.gamma_b[k][j] - c * (1.0 + res.slacks.gamma_e[k][l]));
  return res;
}

// Maximum-ratio beams towards the first user of each group, scaled so every
// Bob reaches gamma_s with the Eves ignored, plus a small AN vector aimed at
// the Eves inside the null space of the Bobs.
BeamformingSolution mrt_start(const LiftedChannels& lifted, const SystemConfig& config, const Eigen::VectorXd& theta) {
  const int K = lifted.K(), M = lifted.M;
  BeamformingSolution s = BeamformingSolution::zeros(M, static_cast<int>(theta.size()), K);
  s.set_theta(theta);
  for (int k = 0; k < K; ++k) {
    const Eigen::RowVectorXcd a = effective_row(s, lifted.H_user[k][0]);
    const double n = a.norm();
    s.w[k] = n > 0.0 ? Eigen::VectorXcd(a.adjoint() / n) : Eigen::VectorXcd::Ones(M);
  }
  const auto rp = detail::received_powers(s, lifted);
  const double t = detail::smallest_scale([&](double x) { return detail::min_bob_rate(rp, x, config.sigma2); },
                                          config.gamma_s, 1e-8, 1e8, 1e-3);
  const double rho = std::sqrt(t > 0.0 ? t : 1e4);
  for (auto& w : s.w) w *= rho;

  int T = 0;
  for (int k = 0; k < K; ++k) T += lifted.group_size(k);
  Eigen::MatrixXcd B(T, M);
  int r = 0;
  for (int k = 0; k < K; ++k)
    for (const auto& H : lifted.H_user[k]) B.row(r++) = effective_row(s, H);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(M);
  for (const auto& H : lifted.H_eve) {
    const Eigen::RowVectorXcd b = effective_row(s, H);
    if (b.norm() > 0.0) e += b.adjoint() / b.norm();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeFullV);
  const int rank = static_cast<int>((svd.singularValues().array() > 1e-10 * svd.singularValues()(0)).count());
  const Eigen::MatrixXcd V0 = svd.matrixV().rightCols(M - rank);
  Eigen::VectorXcd qdir = V0 * (V0.adjoint() * e);
  if (qdir.norm() < 1e-8 * std::max(1.0, e.norm())) qdir = e;
  double hit = 0.0;
  for (const auto& H : lifted.H_eve) hit += std::norm((effective_row(s, H) * qdir)(0));
  if (hit > 0.0) s.q = qdir * std::sqrt(config.sigma2 / hit);
  return s;
}

SystemConfig unit_noise(SystemConfig c) {
  c.sigma2 = 1.0;
  return c;
}

ScaExpansion scaled(ScaExpansion e, double amp) {
  for (auto& w : e.w) w *= amp;
  e.q *= amp;
  return e;
}

// Shared loop. theta == nullptr means the phases are optimized.
RunResult sca_loop(const LiftedChannels& lifted, const SystemConfig& config, const SocpOptions& options,
                   const Eigen::VectorXd* theta, const std::string& method) {
  const auto t_start = std::chrono::steady_clock::now();
  const int K = lifted.K(), M = lifted.M, N = lifted.N;
  RunResult out;
  out.trace.method = method;
  auto finish = [&] {
    out.solve_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    out.power_w = transmit_power(out.solution);
    out.relaxed_objective_w = out.power_w;
    return out;
  };
  if (config.gamma_s <= 0.0) {
    out.solution = BeamformingSolution::zeros(M, theta ? static_cast<int>(theta->size()) : N, K);
    out.trace.converged = true;
    out.trace.rows.push_back({0, 0.0, 0.0, 0.0, "trivial", false});
    return finish();
  }

  const auto n = detail::normalize(lifted, config.sigma2);
  const auto cfg = unit_noise(config);
  const double to_w = n.power();

  BeamformingSolution cur;
  P31Result first;
  const int attempts = theta ? 1 : options.init_attempts;
  int attempt = 0;
  for (; attempt < attempts && !first.ok(); ++attempt) {
    Eigen::VectorXd th;
    if (theta) {
      th = *theta;
    } else {
      auto rng = stream(options.seed, kSocpInitStream, attempt);
      std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
      th.resize(N);
      for (int i = 0; i < N; ++i) th(i) = ph(rng);
    }
    cur = mrt_start(n.lifted, cfg, th);
    first = p31(cur.u(), ScaExpansion::exact(cur, n.lifted, 1.0), n.lifted, cfg, options.solver);
  }
  out.trace.restarts = attempt - 1;
  if (!first.ok()) {
    throw SolveError(SolveError::Kind::infeasible,
                     method + ": initialization failed (" + first.message + ")");
  }
  cur.w = first.w;
  cur.q = first.q;
  double P = first.power;
  out.trace.rows.push_back({0, P * to_w, first.time_s, 0.0, "init", false});

  for (int it = 1; it <= options.max_iters; ++it) {
    TraceRow row{it, 0.0, 0.0, 0.0, "ok", false};
    if (!theta && N > 0) {
      const auto r2 = p32(cur, n.lifted, cfg, options.slack_mode, options.solver);
      row.time_b_s = r2.time_s;
      if (r2.ok()) {
        BeamformingSolution cand = cur;
        cand.set_from_u(recover_unit_modulus(r2.u));
        if (margin_of(cand, n.lifted, 1.0) >= cfg.gamma_s) {
          cur = cand;
        } else {
          // Rounding to unit modulus broke feasibility: one beamformer
          // solve at the rounded phases, else keep the old phases.
          row.recovery_violation = true;
          const auto extra = p31(cand.u(), ScaExpansion::exact(cand, n.lifted, 1.0), n.lifted, cfg, options.solver);
          row.time_a_s += extra.time_s;
          if (extra.ok()) {
            cand.w = extra.w;
            cand.q = extra.q;
            cur = cand;
          } else {
            row.status = "revert";
          }
        }
      } else {
        row.status = "stall";
      }
    }
    const auto r1 = p31(cur.u(), ScaExpansion::exact(cur, n.lifted, 1.0), n.lifted, cfg, options.solver);
    row.time_a_s += r1.time_s;
    if (!r1.ok()) {
      // Keep the incumbent, which is feasible.
      row.status = "p3_1 failed";
      row.objective_w = transmit_power(cur) * to_w;
      out.trace.rows.push_back(row);
      break;
    }
    cur.w = r1.w;
    cur.q = r1.q;
    const bool done = std::abs(P - r1.power) < options.epsilon * P;
    P = r1.power;
    row.objective_w = P * to_w;
    if (done) row.status = "converged";
    out.trace.rows.push_back(row);
    if (done) {
      out.trace.converged = true;
      break;
    }
  }
  out.solution = detail::to_physical(cur, n);
  return finish();
}

}  // namespace

double surrogate_F(cplx x, double r, cplx x_tilde, double r_tilde) {
  return 2.0 * (std::conj(x_tilde) * x).real() / r_tilde - std::norm(x_tilde) / (r_tilde * r_tilde) * r;
}

ScaExpansion ScaExpansion::exact(const BeamformingSolution& sol, const LiftedChannels& lifted, double sigma2) {
  return {sol.w, sol.q, exact_bob_sinr(sol, lifted, sigma2)};
}

P31Result solve_p3_1(const Eigen::VectorXcd& u, const ScaExpansion& expansion, const LiftedChannels& lifted,
                     const SystemConfig& config, const conic::SolverOptions& solver) {
  const auto n = detail::normalize(lifted, config.sigma2);
  auto r = p31(u, scaled(expansion, 1.0 / n.amp), n.lifted, unit_noise(config), solver);
  if (r.ok()) {
    for (auto& w : r.w) w *= n.amp;
    r.q *= n.amp;
    r.power *= n.power();
  }
  return r;
}

P32Result solve_p3_2(const BeamformingSolution& wq_fixed, const LiftedChannels& lifted, const SystemConfig& config,
                     SlackMode mode, const conic::SolverOptions& solver) {
  const auto n = detail::normalize(lifted, config.sigma2);
  return p32(detail::to_normalized(wq_fixed, n), n.lifted, unit_noise(config), mode, solver);
}

Eigen::VectorXcd recover_unit_modulus(const Eigen::VectorXcd& u_relaxed) {
  const int n = static_cast<int>(u_relaxed.size());
  if (n == 0 || std::abs(u_relaxed(n - 1)) < 1e-300)
    throw std::domain_error("recover_unit_modulus: reference entry vanishes");
  Eigen::VectorXcd out(n);
  for (int i = 0; i < n; ++i) out(i) = std::polar(1.0, std::arg(u_relaxed(i) / u_relaxed(n - 1)));
  out(n - 1) = 1.0;
  return out;
}

RunResult run_socp(const LiftedChannels& lifted, const SystemConfig& config, const SocpOptions& options) {
  return sca_loop(lifted, config, options, nullptr, "socp");
}

RunResult run_socp(const Scenario& scenario, const SocpOptions& options) {
  return run_socp(lift_channels(scenario.channels, scenario.config.beta), scenario.config, options);
}

RunResult run_fixed_phase_sca(const LiftedChannels& lifted, const SystemConfig& config, const Eigen::VectorXd& theta,
                              const SocpOptions& options) {
  if (theta.size() != lifted.N && theta.size() != 0)
    throw std::invalid_argument("run_fixed_phase_sca: theta length differs from N");
  const LiftedChannels used = theta.size() == 0 ? direct_only(lifted) : lifted;
  return sca_loop(used, config, options, &theta, "fixed-phase");
}

}  // namespace irssec
