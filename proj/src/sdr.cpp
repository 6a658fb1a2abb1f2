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

#include "irssec/sdr.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "normalize.hpp"
#include "scaling.hpp"

namespace irssec {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr std::uint64_t kSdrInitStream = 0x5d1;
constexpr std::uint64_t kSdrRandStream = 0x5d2;

using conic::ConeProgram;
using conic::HermitianVar;
using conic::LinExpr;

// Re tr(A X)
double rtr(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& X) {
  return A.cwiseProduct(X.transpose()).sum().real();
}

std::vector<bool> all_but(int K, int k) {
  std::vector<bool> on(K, true);
  if (k >= 0) on[k] = false;
  return on;
}

// Which channel and which beams enter the log argument of f_i.
const Eigen::MatrixXcd& channel_of(int i, const LiftedChannels& lifted, int k, int j, int l) {
  return (i <= 2) ? lifted.H_user.at(k).at(j) : lifted.H_eve.at(l);
}

std::vector<bool> beams_of(int i, int K, int k) { return (i == 1 || i == 3) ? all_but(K, -1) : all_but(K, k); }

// M x M weight A = H^H U H
Eigen::MatrixXcd weight_wq(const Eigen::MatrixXcd& H, const Eigen::MatrixXcd& U) {
  Eigen::MatrixXcd A = H.adjoint() * U * H;
  return 0.5 * (A + A.adjoint());
}

// (N+1) x (N+1) weight B = H (sum W_g + Q) H^H
Eigen::MatrixXcd weight_u(const Eigen::MatrixXcd& H, const SdrIterate& x, const std::vector<bool>& on) {
  Eigen::MatrixXcd S = x.Q;
  for (std::size_t g = 0; g < on.size(); ++g)
    if (on[g]) S += x.W[g];
  Eigen::MatrixXcd B = H * S * H.adjoint();
  return 0.5 * (B + B.adjoint());
}

double log_argument(int i, const SdrIterate& x, const LiftedChannels& lifted, double sigma2, int k, int j, int l) {
  if (i < 1 || i > 4) throw std::invalid_argument("eval_f: index must be 1..4");
  const Eigen::MatrixXcd A = weight_wq(channel_of(i, lifted, k, j, l), x.U);
  const auto on = beams_of(i, lifted.K(), k);
  double a = sigma2 + rtr(A, x.Q);
  for (int g = 0; g < lifted.K(); ++g)
    if (on[g]) a += rtr(A, x.W[g]);
  return a;
}

LinExpr affine_wq(const Eigen::MatrixXcd& A, const std::vector<HermitianVar>& W, const HermitianVar& Q,
                  const std::vector<bool>& on, bool on_q) {
  LinExpr e;
  for (std::size_t g = 0; g < W.size(); ++g)
    if (on[g]) e += W[g].trace_inner(A);
  if (on_q) e += Q.trace_inner(A);
  return e;
}

Eigen::MatrixXcd hermitian_part(const Eigen::MatrixXcd& m) { return 0.5 * (m + m.adjoint()); }

SdrIterate zero_iterate(int K, int M, const Eigen::MatrixXcd& U) {
  SdrIterate x;
  x.W.assign(K, Eigen::MatrixXcd::Zero(M, M));
  x.Q = Eigen::MatrixXcd::Zero(M, M);
  x.U = U;
  return x;
}

// --- subproblems on rescaled data (noise power config.sigma2, usually 1) ---

P21Result p21(const Eigen::MatrixXcd& U, const SdrIterate& expansion, const LiftedChannels& lifted,
              const SystemConfig& config, const conic::SolverOptions& solver) {
  const int K = lifted.K(), M = lifted.M, L = lifted.L();
  const double s2 = config.sigma2;
  P21Result res;
  if (config.gamma_s <= 0.0) {
    res.status = conic::SolveStatus::optimal;
    res.x = zero_iterate(K, M, U);
    return res;
  }
  SdrIterate at = expansion;
  at.U = U;

  ConeProgram p;
  std::vector<HermitianVar> W;
  for (int g = 0; g < K; ++g) W.push_back(p.add_hermitian_psd(M));
  HermitianVar Q = p.add_hermitian_psd(M);

  std::vector<std::vector<LinExpr>> s1(K), s4(K);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < lifted.group_size(k); ++j) {
      const auto A = weight_wq(lifted.H_user[k][j], U);
      const auto s = p.add_variables(1);
      p.add_exp(s[0], 1.0, affine_wq(A, W, Q, all_but(K, -1), true) + s2);
      s1[k].push_back(s[0]);
    }
    for (int l = 0; l < L; ++l) {
      const auto A = weight_wq(lifted.H_eve[l], U);
      const auto s = p.add_variables(1);
      p.add_exp(s[0], 1.0, affine_wq(A, W, Q, all_but(K, k), true) + s2);
      s4[k].push_back(s[0]);
    }
  }
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j)
      for (int l = 0; l < L; ++l) {
        const auto [b2, b3] = mm_bound_wq(at, lifted, s2, k, j, l);
        LinExpr lhs = s1[k][j] + s4[k][l];
        lhs -= kLn2 * (b2.c0 + affine_wq(b2.grad, W, Q, b2.on_w, b2.on_q));
        lhs -= kLn2 * (b3.c0 + affine_wq(b3.grad, W, Q, b3.on_w, b3.on_q));
        lhs.add_constant(-kLn2 * config.gamma_s);
        p.add_nonneg(lhs);
      }
  LinExpr obj = Q.trace();
  for (const auto& w : W) obj += w.trace();
  p.minimize(obj);

  const auto sol = conic::solve(p, solver);
  res.status = sol.status;
  res.time_s = sol.solve_time_s;
  if (!sol.ok()) return res;
  res.x.U = U;
  for (const auto& w : W) res.x.W.push_back(hermitian_part(sol.value(w)));
  res.x.Q = hermitian_part(sol.value(Q));
  res.objective = res.x.power();
  return res;
}

P22Result p22(const SdrIterate& expansion, const LiftedChannels& lifted, const SystemConfig& config,
              const conic::SolverOptions& solver, UStepMode mode) {
  const int K = lifted.K(), L = lifted.L(), n = lifted.N + 1;
  const double s2 = config.sigma2;
  P22Result res;
  if (lifted.N == 0) {
    res.status = conic::SolveStatus::optimal;
    res.U = Eigen::MatrixXcd::Ones(1, 1);
    return res;
  }
  ConeProgram p;
  HermitianVar U = p.add_hermitian_psd(n);
  for (int i = 0; i < n; ++i) p.add_equality(U.entry(i, i).re - 1.0);

  std::vector<std::vector<LinExpr>> s1(K), s4(K);
  for (int k = 0; k < K; ++k) {
    for (int j = 0; j < lifted.group_size(k); ++j) {
      const auto s = p.add_variables(1);
      p.add_exp(s[0], 1.0, U.trace_inner(weight_u(lifted.H_user[k][j], expansion, all_but(K, -1))) + s2);
      s1[k].push_back(s[0]);
    }
    for (int l = 0; l < L; ++l) {
      const auto s = p.add_variables(1);
      p.add_exp(s[0], 1.0, U.trace_inner(weight_u(lifted.H_eve[l], expansion, all_but(K, k))) + s2);
      s4[k].push_back(s[0]);
    }
  }
  LinExpr m;
  if (mode == UStepMode::max_margin) m = p.add_variables(1)[0];
  for (int k = 0; k < K; ++k)
    for (int j = 0; j < lifted.group_size(k); ++j)
      for (int l = 0; l < L; ++l) {
        const auto [b2, b3] = mm_bound_u(expansion, lifted, s2, k, j, l);
        LinExpr lhs = s1[k][j] + s4[k][l] - m;
        lhs -= kLn2 * (b2.c0 + U.trace_inner(b2.grad));
        lhs -= kLn2 * (b3.c0 + U.trace_inner(b3.grad));
        lhs.add_constant(-kLn2 * config.gamma_s);
        p.add_nonneg(lhs);
      }
  if (mode == UStepMode::max_margin) p.maximize(m); else p.minimize(LinExpr(0.0));  // find U

  const auto sol = conic::solve(p, solver);
  res.status = sol.status;
  res.time_s = sol.solve_time_s;
  if (sol.ok()) res.U = hermitian_part(sol.value(U));
  return res;
}

// Square-root factor R with R R^H = X (X Hermitian PSD up to round-off).
Eigen::MatrixXcd psd_factor(const Eigen::MatrixXcd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(X));
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal();
}

Eigen::VectorXcd leading(const Eigen::MatrixXcd& X) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(hermitian_part(X));
  const int last = static_cast<int>(X.rows()) - 1;
  return std::sqrt(std::max(0.0, es.eigenvalues()(last))) * es.eigenvectors().col(last);
}

Eigen::VectorXcd draw(const Eigen::MatrixXcd& R, std::mt19937_64& rng) {
  Eigen::VectorXcd z(R.cols());
  for (int i = 0; i < z.size(); ++i) z(i) = cn01(rng);
  return R * z;
}

BeamformingSolution randomize(const SdrIterate& x, const LiftedChannels& lifted, const SystemConfig& config,
                              const SdrOptions& options) {
  const int K = lifted.K();
  const double s2 = config.sigma2;
  const double p_rel = x.power();
  if (config.gamma_s <= 0.0) return BeamformingSolution::zeros(lifted.M, lifted.N, K);

  std::vector<Eigen::MatrixXcd> RW;
  for (const auto& w : x.W) RW.push_back(psd_factor(w));
  const Eigen::MatrixXcd RQ = psd_factor(x.Q);
  const Eigen::MatrixXcd RU = psd_factor(x.U);
  auto rng = stream(options.seed, kSdrRandStream, 0);

  BeamformingSolution best;
  double best_power = std::numeric_limits<double>::infinity();
  double best_margin = -std::numeric_limits<double>::infinity();
  const double ref = p_rel > 0.0 ? p_rel : 1.0;

  for (int c = 0; c <= options.randomization_count; ++c) {
    BeamformingSolution cand;
    Eigen::VectorXcd ut;
    if (c == 0) {
      for (const auto& w : x.W) cand.w.push_back(leading(w));
      cand.q = leading(x.Q);
      ut = leading(x.U);
    } else {
      for (const auto& R : RW) cand.w.push_back(draw(R, rng));
      cand.q = draw(RQ, rng);
      ut = draw(RU, rng);
    }
    if (std::abs(ut(lifted.N)) < 1e-300) continue;
    cand.set_from_u(ut);
    const double p0 = transmit_power(cand);
    if (!(p0 > 0.0)) continue;
    const auto rp = detail::received_powers(cand, lifted);
    auto margin = [&](double t) { return detail::secrecy_margin(rp, t, s2); };
    best_margin = std::max(best_margin, margin(1e6 * ref / p0));
    double t = detail::smallest_scale(margin, config.gamma_s, 1e-4 * ref / p0, 1e6 * ref / p0,
                                      options.bisection_tol);
    // The drawn scale itself may beat the bisection bracket (it does for
    // the eigenvector candidate of a tight rank-one iterate).
    if ((t < 0.0 || t > 1.0) && margin(1.0) >= config.gamma_s) t = 1.0;
    if (t < 0.0 || t * p0 >= best_power) continue;
    best_power = t * p0;
    const double rho = std::sqrt(t);
    for (auto& w : cand.w) w *= rho;
    cand.q *= rho;
    best = cand;
  }
  if (!std::isfinite(best_power)) {
    throw SolveError(SolveError::Kind::infeasible,
                     "gaussian_randomization: no feasible candidate (best margin " + std::to_string(best_margin) +
                         " bits)");
  }
  return best;
}

SystemConfig unit_noise(SystemConfig c) {
  c.sigma2 = 1.0;
  return c;
}

SdrIterate scale_wq(SdrIterate x, double s) {
  for (auto& w : x.W) w *= s;
  x.Q *= s;
  return x;
}

}  // namespace

SdrIterate SdrIterate::rank_one(const BeamformingSolution& sol) {
  SdrIterate x;
  for (const auto& w : sol.w) x.W.push_back(w * w.adjoint());
  x.Q = sol.q * sol.q.adjoint();
  const Eigen::VectorXcd u = sol.u();
  x.U = u * u.adjoint();
  return x;
}

double SdrIterate::power() const {
  double p = Q.trace().real();
  for (const auto& w : W) p += w.trace().real();
  return p;
}

double MmBound::operator()(const SdrIterate& x) const {
  double v = c0;
  for (std::size_t g = 0; g < on_w.size(); ++g)
    if (on_w[g]) v += rtr(grad, x.W[g]);
  if (on_q) v += rtr(grad, x.Q);
  if (on_u) v += rtr(grad, x.U);
  return v;
}

double eval_f(int i, const SdrIterate& x, const LiftedChannels& lifted, double sigma2, int k, int j, int l) {
  return std::log2(log_argument(i, x, lifted, sigma2, k, j, l));
}

std::pair<MmBound, MmBound> mm_bound_wq(const SdrIterate& expansion, const LiftedChannels& lifted, double sigma2,
                                        int k, int j, int l) {
  auto make = [&](int i) {
    MmBound b;
    const Eigen::MatrixXcd A = weight_wq(channel_of(i, lifted, k, j, l), expansion.U);
    const double a = log_argument(i, expansion, lifted, sigma2, k, j, l);
    b.grad = A / (kLn2 * a);
    b.on_w = beams_of(i, lifted.K(), k);
    b.on_q = true;
    b.c0 = 0.0;
    b.c0 = std::log2(a) - b(expansion);
    return b;
  };
  return {make(2), make(3)};
}

std::pair<MmBound, MmBound> mm_bound_u(const SdrIterate& expansion, const LiftedChannels& lifted, double sigma2,
                                       int k, int j, int l) {
  auto make = [&](int i) {
    MmBound b;
    const Eigen::MatrixXcd B = weight_u(channel_of(i, lifted, k, j, l), expansion, beams_of(i, lifted.K(), k));
    const double a = sigma2 + rtr(B, expansion.U);
    b.grad = B / (kLn2 * a);
    b.on_u = true;
    b.c0 = 0.0;
    b.c0 = std::log2(a) - b(expansion);
    return b;
  };
  return {make(2), make(3)};
}

P21Result solve_p2_1(const Eigen::MatrixXcd& U, const SdrIterate& expansion, const LiftedChannels& lifted,
                     const SystemConfig& config, const conic::SolverOptions& solver) {
  const auto n = detail::normalize(lifted, config.sigma2);
  auto r = p21(U, scale_wq(expansion, 1.0 / n.power()), n.lifted, unit_noise(config), solver);
  if (r.ok()) {
    r.x = scale_wq(r.x, n.power());
    r.objective *= n.power();
  }
  return r;
}

P22Result solve_p2_2(const SdrIterate& expansion, const LiftedChannels& lifted, const SystemConfig& config,
                     const conic::SolverOptions& solver, UStepMode mode) {
  const auto n = detail::normalize(lifted, config.sigma2);
  return p22(scale_wq(expansion, 1.0 / n.power()), n.lifted, unit_noise(config), solver, mode);
}

BeamformingSolution gaussian_randomization(const SdrIterate& final_iterate, const LiftedChannels& lifted,
                                           const SystemConfig& config, const SdrOptions& options) {
  const auto n = detail::normalize(lifted, config.sigma2);
  const auto s = randomize(scale_wq(final_iterate, 1.0 / n.power()), n.lifted, unit_noise(config), options);
  return detail::to_physical(s, n);
}

RunResult run_sdr(const LiftedChannels& lifted, const SystemConfig& config, const SdrOptions& options) {
  const auto t_start = std::chrono::steady_clock::now();
  const int K = lifted.K(), M = lifted.M, N = lifted.N;
  RunResult out;
  out.trace.method = "sdr";
  auto finish = [&] {
    out.solve_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    return out;
  };
  if (config.gamma_s <= 0.0) {
    out.solution = BeamformingSolution::zeros(M, N, K);
    out.trace.converged = true;
    out.trace.rows.push_back({0, 0.0, 0.0, 0.0, "trivial", false});
    return finish();
  }

  const auto n = detail::normalize(lifted, config.sigma2);
  const auto cfg = unit_noise(config);
  const double to_w = n.power();

  // Initialization: random phases, then P2-1 linearized at a scaled identity.
  P21Result init;
  Eigen::MatrixXcd U0;
  int attempt = 0;
  for (; attempt < options.init_attempts && !init.ok(); ++attempt) {
    auto rng = stream(options.seed, kSdrInitStream, attempt);
    std::uniform_real_distribution<double> ph(0.0, 2.0 * std::numbers::pi);
    BeamformingSolution b = BeamformingSolution::zeros(M, N, K);
    Eigen::VectorXd th(N);
    for (int i = 0; i < N; ++i) th(i) = ph(rng);
    b.set_theta(th);
    const Eigen::VectorXcd u = b.u();
    U0 = u * u.adjoint();
    for (double delta : {1.0, 10.0, 0.1, 100.0}) {
      SdrIterate e = zero_iterate(K, M, U0);
      for (auto& w : e.W) w = delta * Eigen::MatrixXcd::Identity(M, M);
      e.Q = delta * Eigen::MatrixXcd::Identity(M, M);
      init = p21(U0, e, n.lifted, cfg, options.solver);
      if (init.ok()) break;
    }
  }
  out.trace.restarts = attempt - 1;
  if (!init.ok()) {
    throw SolveError(SolveError::Kind::infeasible, "run_sdr: no feasible initialization after " +
                                                       std::to_string(options.init_attempts) + " phase draws");
  }

  SdrIterate cur = init.x;
  double P = init.objective;
  out.trace.rows.push_back({0, P * to_w, init.time_s, 0.0, "init", false});
  for (int t = 1; t <= options.max_iters; ++t) {
    const auto r2 = p22(cur, n.lifted, cfg, options.solver, options.u_step);
    if (!r2.ok()) {
      out.trace.rows.back().status = "stall";
      break;
    }
    SdrIterate next = cur;
    next.U = r2.U;
    const auto r1 = p21(r2.U, next, n.lifted, cfg, options.solver);
    if (!r1.ok()) {
      out.trace.rows.back().status = "stall";
      break;
    }
    const bool done = std::abs(P - r1.objective) < options.epsilon * P;
    cur = r1.x;
    P = r1.objective;
    out.trace.rows.push_back({t, P * to_w, r1.time_s, r2.time_s, done ? "converged" : "ok", false});
    if (done) {
      out.trace.converged = true;
      break;
    }
  }

  out.relaxed_objective_w = P * to_w;
  out.solution = detail::to_physical(randomize(cur, n.lifted, cfg, options), n);
  out.power_w = transmit_power(out.solution);
  return finish();
}

RunResult run_sdr(const Scenario& scenario, const SdrOptions& options) {
  return run_sdr(lift_channels(scenario.channels, scenario.config.beta), scenario.config, options);
}

}  // namespace irssec
