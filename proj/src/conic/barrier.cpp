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

// Path-following barrier method on the inequality form of compiled.hpp.
//
// Barriers:
//   nonneg  -log v
//   soc     -log(v0^2 - |v1|^2)
//   exp     -log(y log(z/y) - x) - log y - log z
//   psd     -log det V
//
// Constraint blocks enter the Newton system through G_j = L_j' F_j with
// H_j = L_j L_j', so the Hessian of a block is never inverted. That keeps
// the step accurate when a block sits close to its boundary late on the
// central path. PSD variable blocks are handled through H^{-1} a = Y a Y,
// which is cheap for large blocks with few coupling rows.
//
// Phase I shifts every constraint block by s times an interior direction
// and drives s below zero; equalities are met by infeasible-start Newton.

#include <chrono>
#include <cmath>
#include <iostream>
#include <limits>
#include <stdexcept>

#include "conic/compiled.hpp"

namespace irssec::conic::detail {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kInf = std::numeric_limits<double>::infinity();

double block_degree(const SlackBlock& b) {
  switch (b.kind) {
    case BlockKind::nonneg: return b.dim;
    case BlockKind::soc: return 2.0;
    case BlockKind::exp: return 3.0;
    case BlockKind::psd: return b.order;
    case BlockKind::free: break;
  }
  return 0.0;
}

double degree(const Compiled& p) {
  double nu = 0.0;
  for (const auto& b : p.slack) nu += block_degree(b);
  for (const auto& d : p.direct) nu += d.order;
  return nu;
}

VectorXd interior_direction(const SlackBlock& b) {
  VectorXd v = VectorXd::Zero(b.dim);
  switch (b.kind) {
    case BlockKind::nonneg: v.setOnes(); break;
    case BlockKind::soc: v(0) = 1.0; break;
    case BlockKind::exp: v << -1.0, 1.0, 1.0; break;
    case BlockKind::psd: v = svec::pack(MatrixXd::Identity(b.order, b.order)); break;
    case BlockKind::free: break;
  }
  return v;
}

// -log det Y, +inf when Y is not positive definite.
double logdet_barrier(const MatrixXd& y) {
  Eigen::LLT<MatrixXd> llt(y);
  if (llt.info() != Eigen::Success) return kInf;
  double v = 0.0;
  const auto& l = llt.matrixLLT();
  for (Eigen::Index i = 0; i < y.rows(); ++i) {
    if (!(l(i, i) > 0.0)) return kInf;
    v -= 2.0 * std::log(l(i, i));
  }
  return v;
}

double block_barrier(const SlackBlock& b, const Eigen::Ref<const VectorXd>& v) {
  switch (b.kind) {
    case BlockKind::nonneg: {
      double s = 0.0;
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!(v(i) > 0.0)) return kInf;
        s -= std::log(v(i));
      }
      return s;
    }
    case BlockKind::soc: {
      if (!(v(0) > 0.0)) return kInf;
      const double d = v(0) * v(0) - v.tail(v.size() - 1).squaredNorm();
      return d > 0.0 ? -std::log(d) : kInf;
    }
    case BlockKind::exp: {
      const double x = v(0), y = v(1), z = v(2);
      if (!(y > 0.0 && z > 0.0)) return kInf;
      const double psi = y * std::log(z / y) - x;
      if (!(psi > 0.0)) return kInf;
      return -std::log(psi) - std::log(y) - std::log(z);
    }
    case BlockKind::psd: return logdet_barrier(svec::unpack(v, b.order));
    case BlockKind::free: break;
  }
  return 0.0;
}

double barrier(const Compiled& p, const VectorXd& y) {
  const VectorXd v = p.F * y + p.e;
  double total = 0.0;
  for (const auto& b : p.slack) {
    const double f = block_barrier(b, v.segment(b.row, b.dim));
    if (f == kInf) return kInf;
    total += f;
  }
  for (const auto& d : p.direct) {
    const double f = logdet_barrier(svec::unpack(y.segment(d.offset, svec::length(d.order)), d.order));
    if (f == kInf) return kInf;
    total += f;
  }
  return std::isfinite(total) ? total : kInf;
}

// Smallest s with v + s * dir in the interior of the block's cone (up to a bisection tolerance).
double required_shift(const SlackBlock& b, const VectorXd& v) {
  switch (b.kind) {
    case BlockKind::nonneg: return -v.minCoeff();
    case BlockKind::soc: return v.tail(v.size() - 1).norm() - v(0);
    case BlockKind::psd: {
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(svec::unpack(v, b.order), Eigen::EigenvaluesOnly);
      return -es.eigenvalues()(0);
    }
    case BlockKind::exp: {
      const VectorXd dir = interior_direction(b);
      auto inside = [&](double s) { return block_barrier(b, v + s * dir) < kInf; };
      double lo = std::max(-v(1), -v(2));
      double hi = std::max(lo, 0.0) + 1.0;
      while (!inside(hi)) hi = 2.0 * hi + 1.0;
      for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (inside(mid) ? hi : lo) = mid;
      }
      return hi;
    }
    case BlockKind::free: break;
  }
  return 0.0;
}

// Y a Y on svec coordinates; `a` is sparse in practice for equality rows.
void psd_hinv_apply(const MatrixXd& y, const Eigen::Ref<const VectorXd>& a, Eigen::Ref<VectorXd> out) {
  const int s = static_cast<int>(y.rows());
  const int len = svec::length(s);
  int nnz = 0;
  for (int i = 0; i < len; ++i) nnz += a(i) != 0.0;
  if (nnz == 0) {
    out.setZero();
    return;
  }
  if (nnz > 8) {
    out = svec::pack(y * svec::unpack(a, s) * y);
    return;
  }
  MatrixXd r = MatrixXd::Zero(s, s);
  int idx = 0;
  for (int j = 0; j < s; ++j) {
    for (int i = j; i < s; ++i, ++idx) {
      const double v = a(idx);
      if (v == 0.0) continue;
      if (i == j) {
        r.noalias() += v * y.col(i) * y.row(i);
      } else {
        const double w = v / std::sqrt(2.0);
        r.noalias() += w * (y.col(i) * y.row(j) + y.col(j) * y.row(i));
      }
    }
  }
  out = svec::pack(r);
}

struct Step {
  VectorXd dy;
  double lambda_sq = 0.0;
  bool ok = false;
};

// Rows of the reduced systems differ by many orders of magnitude late in
// the path (equality rows stay O(1), slack rows grow like t^2). Symmetric
// Ruiz scaling before the factorization keeps the equalities accurate.
VectorXd refine_solve(const MatrixXd& s, const VectorXd& rhs) {
  const Eigen::Index n = s.rows();
  VectorXd d = VectorXd::Ones(n);
  MatrixXd a = s;
  for (int pass = 0; pass < 8; ++pass) {
    VectorXd r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double m = a.row(i).cwiseAbs().maxCoeff();
      r(i) = m > 0.0 ? 1.0 / std::sqrt(m) : 1.0;
    }
    if ((r.array() - 1.0).abs().maxCoeff() < 1e-3) break;
    a = r.asDiagonal() * a * r.asDiagonal();
    d.array() *= r.array();
  }
  Eigen::FullPivLU<MatrixXd> lu(a);
  const VectorXd b = d.asDiagonal() * rhs;
  VectorXd x = lu.solve(b);
  x += lu.solve(b - a * x);
  return d.asDiagonal() * x;
}

Step newton_step(const Compiled& p, const VectorXd& y, double t) {
  const int ny = p.n_y, nf = p.n_free, nd = ny - nf;
  const int r = static_cast<int>(p.F.rows());
  const int mc = static_cast<int>(p.C.rows());
  Step out;

  const VectorXd v = p.F * y + p.e;
  VectorXd gv(r);
  MatrixXd g_mat(r, ny);
  for (const auto& b : p.slack) {
    const auto seg = v.segment(b.row, b.dim);
    const auto fb = p.F.middleRows(b.row, b.dim);
    switch (b.kind) {
      case BlockKind::nonneg: {
        for (int i = 0; i < b.dim; ++i) {
          gv(b.row + i) = -1.0 / seg(i);
          g_mat.row(b.row + i) = fb.row(i) / seg(i);
        }
        break;
      }
      case BlockKind::soc: {
        const double d = seg(0) * seg(0) - seg.tail(b.dim - 1).squaredNorm();
        VectorXd jv = -seg;
        jv(0) = seg(0);
        gv.segment(b.row, b.dim) = -2.0 * jv / d;
        MatrixXd h = 4.0 * jv * jv.transpose() / (d * d);
        h(0, 0) -= 2.0 / d;
        h.diagonal().tail(b.dim - 1).array() += 2.0 / d;
        Eigen::LLT<MatrixXd> llt(h);
        g_mat.middleRows(b.row, b.dim) = llt.matrixU() * fb;
        break;
      }
      case BlockKind::exp: {
        const double ex = seg(0), ey = seg(1), ez = seg(2);
        const double lzy = std::log(ez / ey);
        const double psi = ey * lzy - ex;
        const Eigen::Vector3d dpsi(-1.0, lzy - 1.0, ey / ez);
        Eigen::Matrix3d d2psi = Eigen::Matrix3d::Zero();
        d2psi(1, 1) = -1.0 / ey;
        d2psi(1, 2) = d2psi(2, 1) = 1.0 / ez;
        d2psi(2, 2) = -ey / (ez * ez);
        Eigen::Matrix3d h = dpsi * dpsi.transpose() / (psi * psi) - d2psi / psi;
        h(1, 1) += 1.0 / (ey * ey);
        h(2, 2) += 1.0 / (ez * ez);
        Eigen::Vector3d g = -dpsi / psi;
        g(1) -= 1.0 / ey;
        g(2) -= 1.0 / ez;
        gv.segment<3>(b.row) = g;
        Eigen::LLT<Eigen::Matrix3d> llt(h);
        g_mat.middleRows(b.row, 3) = llt.matrixU() * fb;
        break;
      }
      case BlockKind::psd: {
        const MatrixXd ym = svec::unpack(seg, b.order);
        Eigen::LLT<MatrixXd> llt(ym);
        const MatrixXd yinv = llt.solve(MatrixXd::Identity(b.order, b.order));
        gv.segment(b.row, b.dim) = -svec::pack(yinv);
        const MatrixXd lmat = llt.matrixL();
        for (int k = 0; k < ny; ++k) {
          const VectorXd col = fb.col(k);
          if (col.isZero(0.0)) {
            g_mat.block(b.row, k, b.dim, 1).setZero();
            continue;
          }
          MatrixXd a = svec::unpack(col, b.order);
          lmat.triangularView<Eigen::Lower>().solveInPlace(a);
          MatrixXd at = a.transpose();
          lmat.triangularView<Eigen::Lower>().solveInPlace(at);
          g_mat.block(b.row, k, b.dim, 1) = svec::pack(at);
        }
        break;
      }
      case BlockKind::free: break;
    }
  }

  VectorXd grad = t * p.c;
  if (r > 0) grad.noalias() += p.F.transpose() * gv;
  std::vector<MatrixXd> ys;
  for (const auto& d : p.direct) {
    const int len = svec::length(d.order);
    MatrixXd ym = svec::unpack(y.segment(d.offset, len), d.order);
    Eigen::LLT<MatrixXd> llt(ym);
    grad.segment(d.offset, len) -= svec::pack(llt.solve(MatrixXd::Identity(d.order, d.order)));
    ys.push_back(std::move(ym));
  }
  const VectorXd rc = p.d - p.C * y;

  out.dy = VectorXd::Zero(ny);
  if (nd == 0) {
    MatrixXd kkt = MatrixXd::Zero(ny + mc, ny + mc);
    kkt.topLeftCorner(ny, ny).noalias() = g_mat.transpose() * g_mat;
    kkt.topRightCorner(ny, mc) = p.C.transpose();
    kkt.bottomLeftCorner(mc, ny) = p.C;
    VectorXd rhs(ny + mc);
    rhs.head(ny) = -grad;
    rhs.tail(mc) = rc;
    VectorXd sol;
    if (mc == 0) {
      Eigen::LLT<MatrixXd> llt(kkt);
      if (llt.info() == Eigen::Success) {
        sol = llt.solve(rhs);
        sol += llt.solve(rhs - kkt * sol);
      } else {
        sol = refine_solve(kkt, rhs);
      }
    } else {
      sol = refine_solve(kkt, rhs);
    }
    out.dy = sol.head(ny);
  } else {
    const int nb = r + mc;
    MatrixXd b_mat(nb, nd);
    b_mat.topRows(r) = g_mat.rightCols(nd);
    b_mat.bottomRows(mc) = p.C.rightCols(nd);
    MatrixXd k_f(nb, nf);
    k_f.topRows(r) = g_mat.leftCols(nf);
    k_f.bottomRows(mc) = p.C.leftCols(nf);

    // Z = H_D^{-1} B', zg = H_D^{-1} g_D
    MatrixXd z(nd, nb);
    VectorXd zg(nd);
    for (size_t i = 0; i < p.direct.size(); ++i) {
      const int off = p.direct[i].offset - nf;
      const int len = svec::length(p.direct[i].order);
      for (int k = 0; k < nb; ++k) {
        psd_hinv_apply(ys[i], b_mat.row(k).segment(off, len).transpose(), z.col(k).segment(off, len));
      }
      psd_hinv_apply(ys[i], grad.segment(nf + off, len), zg.segment(off, len));
    }
    MatrixXd s = MatrixXd::Zero(nb + nf, nb + nf);
    s.topLeftCorner(nb, nb).noalias() = b_mat * z;
    s.topLeftCorner(nb, nb) = (0.5 * (s.topLeftCorner(nb, nb) + s.topLeftCorner(nb, nb).transpose())).eval();
    s.topLeftCorner(nb, nb).diagonal().head(r).array() += 1.0;
    s.topRightCorner(nb, nf) = -k_f;
    s.bottomLeftCorner(nf, nb) = -k_f.transpose();
    VectorXd rhs(nb + nf);
    rhs.head(nb) = -(b_mat * zg);
    rhs.segment(r, mc) -= rc;
    rhs.tail(nf) = grad.head(nf);
    const VectorXd sol = refine_solve(s, rhs);
    const VectorXd mu = sol.head(nb);
    out.dy.head(nf) = sol.tail(nf);
    out.dy.tail(nd) = -(zg + z * mu);
  }
  if (!out.dy.allFinite()) return out;

  // lambda^2 = dy' H dy
  double lam2 = r > 0 ? (g_mat * out.dy).squaredNorm() : 0.0;
  for (size_t i = 0; i < p.direct.size(); ++i) {
    const int len = svec::length(p.direct[i].order);
    const MatrixXd a = svec::unpack(out.dy.segment(p.direct[i].offset, len), p.direct[i].order);
    const MatrixXd sa = Eigen::LLT<MatrixXd>(ys[i]).solve(a);
    lam2 += (sa * sa).trace();
  }
  out.lambda_sq = lam2;
  out.ok = true;
  return out;
}

enum class CenterResult { converged, stopped_early, stalled, failed, diverged };

struct Tracker {
  int newton_steps = 0;
  int max_newton = 0;
  bool verbose = false;
};

double eq_scale(const Compiled& p) { return 1.0 + (p.d.size() ? p.d.lpNorm<Eigen::Infinity>() : 0.0); }

double eq_residual(const Compiled& p, const VectorXd& y) {
  return p.C.rows() ? (p.d - p.C * y).lpNorm<Eigen::Infinity>() : 0.0;
}

// Minimizes t c'y + phi(y) on Cy = d from interior y. With stop_col >= 0
// returns once y(stop_col) < 0 with equalities met.
CenterResult center(const Compiled& p, VectorXd& y, double t, Tracker& tr, int stop_col = -1) {
  const double eq_tol = 1e-9 * eq_scale(p);
  // Round-off puts a floor under lambda^2 late in the path; a centre that
  // is good to this level is still accepted when progress stops.
  int flat = 0;
  for (int iter = 0; iter < 80; ++iter) {
    if (tr.newton_steps >= tr.max_newton) return CenterResult::stalled;
    ++tr.newton_steps;
    const Step step = newton_step(p, y, t);
    if (!step.ok) return CenterResult::failed;
    const double lam2 = std::max(step.lambda_sq, 0.0);
    const double res = eq_residual(p, y);
    if (tr.verbose) std::cerr << "    newton t=" << t << " lam2=" << lam2 << " res=" << res << "\n";
    if (lam2 < 1e-8 && res < eq_tol) return CenterResult::converged;
    flat = (lam2 < 1e-5 && res < 10.0 * eq_tol) ? flat + 1 : 0;
    if (flat >= 4) return CenterResult::converged;

    double alpha = 1.0;
    double f_new = barrier(p, y + step.dy);
    while (f_new == kInf) {
      alpha *= 0.5;
      if (alpha < 1e-14) return CenterResult::stalled;
      f_new = barrier(p, y + alpha * step.dy);
    }
    if (res < eq_tol && lam2 > 0.25) {
      const double f0 = t * p.c.dot(y) + barrier(p, y);
      while (t * p.c.dot(y + alpha * step.dy) + f_new > f0 - 0.2 * alpha * lam2) {
        alpha *= 0.5;
        if (alpha < 1e-12) return CenterResult::stalled;
        f_new = barrier(p, y + alpha * step.dy);
      }
    }
    y += alpha * step.dy;
    if (y.lpNorm<Eigen::Infinity>() > 1e13) return CenterResult::diverged;
    if (stop_col >= 0 && y(stop_col) < 0.0 && eq_residual(p, y) < eq_tol) return CenterResult::stopped_early;
    if (lam2 < 1e-10 && alpha == 1.0 && eq_residual(p, y) < eq_tol) return CenterResult::converged;
  }
  return CenterResult::stalled;
}

// Phase I problem: extra free coordinate s at index n_free, every block
// shifted by s along its interior direction, plus s >= -1, a ball
// |y_free| <= radius and tr(Y) <= radius on each PSD variable block, so
// that the barrier stays bounded below along recession directions. The
// trace rows keep the Newton system sparse in the PSD coordinates.
Compiled phase_one(const Compiled& p, double radius) {
  Compiled q;
  q.n_y = p.n_y + 1;
  q.n_free = p.n_free + 1;
  const int sc = p.n_free;
  for (const auto& d : p.direct) q.direct.push_back({d.offset + 1, d.order});
  const int r = static_cast<int>(p.F.rows());
  const int n_dir = static_cast<int>(p.direct.size());
  const int ball = sc > 0 ? sc + 1 : 0;
  q.slack = p.slack;
  q.slack.push_back({BlockKind::nonneg, r, 1 + n_dir, 0, -1});
  if (ball > 0) q.slack.push_back({BlockKind::soc, r + 1 + n_dir, ball, 0, -1});
  const int extra = 1 + n_dir + ball;
  auto widen = [&](const MatrixXd& m, int extra_rows) {
    MatrixXd w = MatrixXd::Zero(m.rows() + extra_rows, q.n_y);
    w.topLeftCorner(m.rows(), sc) = m.leftCols(sc);
    w.topRightCorner(m.rows(), p.n_y - sc) = m.rightCols(p.n_y - sc);
    return w;
  };
  q.F = widen(p.F, extra);
  q.e = VectorXd::Zero(r + extra);
  q.e.head(r) = p.e;
  for (const auto& b : p.slack) q.F.block(b.row, sc, b.dim, 1) = interior_direction(b);
  q.F(r, sc) = 1.0;
  q.e(r) = 1.0;
  for (int i = 0; i < n_dir; ++i) {
    const auto& d = p.direct[i];
    q.e(r + 1 + i) = radius;
    for (int k = 0; k < d.order; ++k) q.F(r + 1 + i, d.offset + 1 + svec::index(d.order, k, k)) = -1.0;
  }
  if (ball > 0) {
    const int row = r + 1 + n_dir;
    q.e(row) = radius;
    for (int i = 0; i < sc; ++i) q.F(row + 1 + i, i) = 1.0;
  }
  q.C = widen(p.C, 0);
  q.d = p.d;
  q.c = VectorXd::Zero(q.n_y);
  q.c(sc) = 1.0;
  return q;
}

VectorXd drop_coordinate(const VectorXd& y, int k) {
  VectorXd out(y.size() - 1);
  out.head(k) = y.head(k);
  out.tail(y.size() - 1 - k) = y.tail(y.size() - 1 - k);
  return out;
}

}  // namespace

RawResult solve_compiled(const Compiled& p, const SolverOptions& opt) {
  RawResult out;
  Tracker tr{0, opt.max_newton, opt.verbose};
  auto finish = [&](SolveStatus status, VectorXd y, std::string msg) {
    out.status = status;
    out.y = std::move(y);
    out.message = std::move(msg);
    out.newton_steps = tr.newton_steps;
    return out;
  };

  if (p.C.rows() > 0) {
    Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(p.C);
    const VectorXd yl = cod.solve(p.d);
    if ((p.C * yl - p.d).lpNorm<Eigen::Infinity>() > 1e-9 * eq_scale(p)) {
      return finish(SolveStatus::infeasible, {}, "inconsistent equality constraints");
    }
  }

  // ------------------------------------------------------------ phase I
  VectorXd y = VectorXd::Zero(p.n_y);
  for (const auto& d : p.direct) {
    y.segment(d.offset, svec::length(d.order)) = svec::pack(MatrixXd::Identity(d.order, d.order));
  }
  const bool interior_start = barrier(p, y) < kInf && eq_residual(p, y) < 1e-12 * eq_scale(p);
  if (!interior_start) {
    const int sc = p.n_free;
    const VectorXd v = p.F * y + p.e;
    double need = 0.0;
    for (const auto& b : p.slack) need = std::max(need, required_shift(b, v.segment(b.row, b.dim)));
    const double scale = 1.0 + y.norm() + (v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0) + eq_scale(p) + need;

    // A small ball keeps phase I iterates near the data; a failure there is
    // retried once with a much larger ball before reporting infeasibility.
    enum class PhaseOne { found, infeasible, weak, failed };
    std::string fail_msg;
    auto run = [&](double radius) {
      const Compiled q = phase_one(p, radius);
      VectorXd y1(q.n_y);
      y1.head(sc) = y.head(sc);
      y1(sc) = 1.1 * need + 1.0;
      y1.tail(p.n_y - sc) = y.tail(p.n_y - sc);
      if (barrier(q, y1) == kInf) {
        fail_msg = "phase I: bad starting point";
        return PhaseOne::failed;
      }
      const double nu1 = degree(q);
      double t = nu1 / std::max(1.0, y1(sc));
      while (true) {
        const CenterResult cr = center(q, y1, t, tr, sc);
        if (cr == CenterResult::stopped_early) {
          y = drop_coordinate(y1, sc);
          return PhaseOne::found;
        }
        if (cr == CenterResult::failed || cr == CenterResult::diverged) {
          fail_msg = "phase I: singular Newton system";
          return PhaseOne::failed;
        }
        if (cr == CenterResult::stalled) {
          if (tr.newton_steps >= tr.max_newton) {
            fail_msg = "phase I: iteration limit";
            return PhaseOne::failed;
          }
          break;
        }
        if (nu1 / t < 1e-3 * opt.feas_tol) break;
        t *= opt.mu;
      }
      return y1(sc) > opt.feas_tol ? PhaseOne::infeasible : PhaseOne::weak;
    };
    PhaseOne res = run(1e2 * scale);
    if (res != PhaseOne::found && res != PhaseOne::failed) res = run(1e7 * scale);
    switch (res) {
      case PhaseOne::found: break;
      case PhaseOne::infeasible: return finish(SolveStatus::infeasible, {}, "phase I: no feasible point");
      case PhaseOne::weak: return finish(SolveStatus::numerical_failure, {}, "phase I: no strictly feasible point");
      case PhaseOne::failed: return finish(SolveStatus::numerical_failure, {}, fail_msg);
    }
    if (barrier(p, y) == kInf) return finish(SolveStatus::numerical_failure, {}, "phase I: point left the cone");
  }

  // ------------------------------------------------------------ phase II
  if (p.c.lpNorm<Eigen::Infinity>() == 0.0) {
    // Any feasible point is optimal; center for a well-interior answer.
    VectorXd yc = y;
    const CenterResult cr = center(p, yc, 0.0, tr);
    if (cr == CenterResult::converged || cr == CenterResult::stalled) {
      if (barrier(p, yc) < kInf && eq_residual(p, yc) < 1e-8 * eq_scale(p)) y = yc;
    }
    return finish(SolveStatus::optimal, y, "feasible point");
  }

  const double nu = degree(p);
  double t = nu / std::max(1.0, std::abs(p.c.dot(y)));
  VectorXd last_good = y;
  double last_gap = kInf;
  while (true) {
    const CenterResult cr = center(p, y, t, tr);
    const double obj = p.c.dot(y) + p.c0;
    if (cr == CenterResult::diverged) return finish(SolveStatus::unbounded, y, "objective unbounded");
    if (cr == CenterResult::converged) {
      last_good = y;
      last_gap = nu / t;
      if (last_gap <= opt.tol * std::max(1.0, std::abs(obj))) return finish(SolveStatus::optimal, y, "converged");
      t *= opt.mu;
      continue;
    }
    if (cr == CenterResult::failed && last_gap == kInf) {
      return finish(SolveStatus::numerical_failure, {}, "phase II: singular Newton system");
    }
    // Not centered at this t: accept the best point if the bound is still tight.
    const bool y_ok = barrier(p, y) < kInf && eq_residual(p, y) < 1e-8 * eq_scale(p);
    const double obj_good = p.c.dot(last_good) + p.c0;
    const VectorXd& best = (y_ok && obj <= obj_good) ? y : last_good;
    const double best_obj = p.c.dot(best) + p.c0;
    if (last_gap <= std::sqrt(opt.tol) * std::max(1.0, std::abs(best_obj))) {
      return finish(SolveStatus::optimal, best, "converged to reduced accuracy");
    }
    return finish(SolveStatus::numerical_failure, best, "phase II: centering stalled");
  }
}

}  // namespace irssec::conic::detail
