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

#include "irssec/conic.hpp"

#include "conic/compiled.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace irssec::conic {

namespace {
const double kSqrt2 = std::sqrt(2.0);
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

// Y(a, b) of a real PSD block stored at `first` as svec.
LinExpr sym_entry(int first, int order, int a, int b) {
  return LinExpr::slot(first + svec::index(order, a, b), a == b ? 1.0 : kInvSqrt2);
}

int lower_index(int n, int i, int j) { return j * n - j * (j - 1) / 2 + (i - j); }
}  // namespace

// ---------------------------------------------------------------- svec

namespace svec {

int length(int order) { return order * (order + 1) / 2; }

int index(int order, int i, int j) {
  if (i < j) std::swap(i, j);
  return j * order - j * (j - 1) / 2 + (i - j);
}

Eigen::VectorXd pack(const Eigen::MatrixXd& m) {
  const int s = static_cast<int>(m.rows());
  Eigen::VectorXd v(length(s));
  int k = 0;
  for (int j = 0; j < s; ++j) {
    v(k++) = m(j, j);
    for (int i = j + 1; i < s; ++i) v(k++) = kSqrt2 * m(i, j);
  }
  return v;
}

Eigen::MatrixXd unpack(const Eigen::Ref<const Eigen::VectorXd>& v, int order) {
  Eigen::MatrixXd m(order, order);
  int k = 0;
  for (int j = 0; j < order; ++j) {
    m(j, j) = v(k++);
    for (int i = j + 1; i < order; ++i) {
      m(i, j) = m(j, i) = kInvSqrt2 * v(k++);
    }
  }
  return m;
}

}  // namespace svec

// ---------------------------------------------------------------- expressions

LinExpr LinExpr::slot(int index, double coeff) {
  LinExpr e;
  e.terms_.emplace_back(index, coeff);
  return e;
}

void LinExpr::add_term(int index, double coeff) {
  if (coeff != 0.0) terms_.emplace_back(index, coeff);
}

LinExpr& LinExpr::operator+=(const LinExpr& other) {
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  constant_ += other.constant_;
  return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& other) {
  terms_.reserve(terms_.size() + other.terms_.size());
  for (const auto& [i, c] : other.terms_) terms_.emplace_back(i, -c);
  constant_ -= other.constant_;
  return *this;
}

LinExpr& LinExpr::operator*=(double scale) {
  for (auto& t : terms_) t.second *= scale;
  constant_ *= scale;
  return *this;
}

ComplexExpr& ComplexExpr::operator+=(const ComplexExpr& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ComplexExpr& ComplexExpr::operator-=(const ComplexExpr& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ComplexExpr operator*(cplx s, const ComplexExpr& a) {
  ComplexExpr out;
  out.re = s.real() * a.re - s.imag() * a.im;
  out.im = s.real() * a.im + s.imag() * a.re;
  return out;
}

ComplexExpr conj(const ComplexExpr& a) { return {a.re, -a.im}; }

ComplexExpr dot(const Eigen::RowVectorXcd& row, const ComplexVarVec& x) {
  if (row.size() != x.size()) throw std::invalid_argument("dot: dimension mismatch");
  ComplexExpr out;
  for (int i = 0; i < x.size(); ++i) {
    const cplx a = row(i);
    if (a == cplx(0.0, 0.0)) continue;
    // (ar + i ai)(xr + i xi)
    out.re.add_term(x.re.first + i, a.real());
    out.re.add_term(x.im.first + i, -a.imag());
    out.im.add_term(x.re.first + i, a.imag());
    out.im.add_term(x.im.first + i, a.real());
  }
  return out;
}

// ---------------------------------------------------------------- Hermitian

ComplexExpr HermitianVar::entry(int i, int j) const {
  if (i < 0 || j < 0 || i >= n_ || j >= n_) throw std::out_of_range("HermitianVar::entry");
  if (psd_) {
    const int s = 2 * n_;
    ComplexExpr e;
    e.re = 0.5 * (sym_entry(first_, s, i, j) + sym_entry(first_, s, n_ + i, n_ + j));
    e.im = 0.5 * (sym_entry(first_, s, n_ + i, j) - sym_entry(first_, s, n_ + j, i));
    return e;
  }
  if (i == j) return {LinExpr::slot(first_ + i), LinExpr()};
  const bool swapped = i < j;
  if (swapped) std::swap(i, j);
  const int pair = lower_index(n_, i, j) - (j + 1);  // strictly-lower ordinal
  ComplexExpr e{LinExpr::slot(first_ + n_ + 2 * pair), LinExpr::slot(first_ + n_ + 2 * pair + 1)};
  return swapped ? conj(e) : e;
}

LinExpr HermitianVar::trace_inner(const Eigen::MatrixXcd& c) const {
  if (c.rows() != n_ || c.cols() != n_) throw std::invalid_argument("trace_inner: dimension mismatch");
  LinExpr out;
  if (psd_) {
    const Eigen::MatrixXd e = complex_to_real_embed(c, 1e-9 * (1.0 + c.cwiseAbs().maxCoeff()));
    const int s = 2 * n_;
    int k = 0;
    for (int b = 0; b < s; ++b) {
      for (int a = b; a < s; ++a, ++k) {
        const double coeff = 0.5 * e(a, b) * (a == b ? 1.0 : kSqrt2);
        out.add_term(first_ + k, coeff);
      }
    }
    return out;
  }
  for (int j = 0; j < n_; ++j) {
    out.add_term(first_ + j, c(j, j).real());
    for (int i = j + 1; i < n_; ++i) {
      const int pair = lower_index(n_, i, j) - (j + 1);
      out.add_term(first_ + n_ + 2 * pair, 2.0 * c(i, j).real());
      out.add_term(first_ + n_ + 2 * pair + 1, 2.0 * c(i, j).imag());
    }
  }
  return out;
}

LinExpr HermitianVar::trace() const {
  LinExpr out;
  for (int i = 0; i < n_; ++i) out += entry(i, i).re;
  return out;
}

HermitianAffine::HermitianAffine(int order) : n(order), lower(static_cast<size_t>(order * (order + 1) / 2)) {}

ComplexExpr& HermitianAffine::at(int i, int j) {
  if (i < j) throw std::invalid_argument("HermitianAffine::at expects i >= j");
  return lower[lower_index(n, i, j)];
}

const ComplexExpr& HermitianAffine::at(int i, int j) const {
  if (i < j) throw std::invalid_argument("HermitianAffine::at expects i >= j");
  return lower[lower_index(n, i, j)];
}

// ---------------------------------------------------------------- program

int ConeProgram::add_block(BlockKind kind, int dim, int order) {
  if (dim < 0) throw std::invalid_argument("negative block dimension");
  const int first = slot_count_;
  blocks_.push_back({kind, first, dim, order, false, {}});
  slot_count_ += dim;
  return first;
}

void ConeProgram::check_expr(const LinExpr& e) const {
  for (const auto& [i, c] : e.terms()) {
    if (i < 0 || i >= slot_count_) throw std::invalid_argument("expression references an undeclared variable");
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient");
  }
  if (!std::isfinite(e.constant())) throw std::invalid_argument("non-finite constant");
}

VarVec ConeProgram::add_variables(int n) { return {add_block(BlockKind::free, n), n}; }

ComplexVarVec ConeProgram::add_complex_variables(int n) {
  VarVec re = add_variables(n);
  VarVec im = add_variables(n);
  return {re, im};
}

HermitianVar ConeProgram::add_hermitian_psd(int n) {
  if (n <= 0) throw std::invalid_argument("Hermitian block must have positive order");
  const int first = add_block(BlockKind::psd, svec::length(2 * n), 2 * n);
  return HermitianVar(first, n, true);
}

HermitianVar ConeProgram::add_hermitian(int n) {
  if (n <= 0) throw std::invalid_argument("Hermitian block must have positive order");
  const int first = add_block(BlockKind::free, n * n);
  return HermitianVar(first, n, false);
}

void ConeProgram::add_equality(const LinExpr& e) {
  check_expr(e);
  equalities_.push_back(e);
}

void ConeProgram::add_constraint_block(BlockKind kind, std::vector<LinExpr> def, int order) {
  for (const auto& e : def) check_expr(e);
  const int dim = static_cast<int>(def.size());
  add_block(kind, dim, order);
  blocks_.back().constraint = true;
  blocks_.back().def = std::move(def);
}

void ConeProgram::add_nonneg(const LinExpr& e) { add_constraint_block(BlockKind::nonneg, {e}); }

void ConeProgram::add_soc(const LinExpr& t, const std::vector<LinExpr>& x) {
  std::vector<LinExpr> def;
  def.reserve(x.size() + 1);
  def.push_back(t);
  def.insert(def.end(), x.begin(), x.end());
  add_constraint_block(BlockKind::soc, std::move(def));
}

void ConeProgram::add_rotated_soc(const LinExpr& a, const LinExpr& b, const std::vector<LinExpr>& x) {
  // 2ab >= ||x||^2  <=>  ||(x, (a - b)/sqrt2)|| <= (a + b)/sqrt2
  std::vector<LinExpr> v = x;
  v.push_back(kInvSqrt2 * (a - b));
  add_soc(kInvSqrt2 * (a + b), v);
}

void ConeProgram::add_exp(const LinExpr& x, const LinExpr& y, const LinExpr& z) {
  add_constraint_block(BlockKind::exp, {x, y, z});
}

void ConeProgram::add_psd(const HermitianAffine& h) {
  const int n = h.n;
  if (n <= 0) throw std::invalid_argument("add_psd: empty matrix");
  const int s = 2 * n;
  auto re_at = [&](int i, int j) { return i >= j ? h.at(i, j).re : h.at(j, i).re; };
  auto im_at = [&](int i, int j) { return i >= j ? h.at(i, j).im : -h.at(j, i).im; };
  std::vector<LinExpr> def;
  def.reserve(static_cast<size_t>(svec::length(s)));
  for (int b = 0; b < s; ++b) {
    for (int a = b; a < s; ++a) {
      LinExpr target;
      if (a < n) {
        target = re_at(a, b);
      } else if (b >= n) {
        target = re_at(a - n, b - n);
      } else {
        target = im_at(a - n, b);
      }
      def.push_back(a == b ? target : kSqrt2 * target);
    }
  }
  add_constraint_block(BlockKind::psd, std::move(def), s);
}

void ConeProgram::minimize(const LinExpr& objective) {
  check_expr(objective);
  objective_ = objective;
  maximize_ = false;
}

void ConeProgram::maximize(const LinExpr& objective) {
  check_expr(objective);
  objective_ = objective;
  maximize_ = true;
}

StandardForm ConeProgram::to_standard_form() const {
  StandardForm sf;
  sf.slot_to_col.assign(static_cast<size_t>(slot_count_), -1);
  int col = 0;
  auto place = [&](BlockKind kind) {
    for (const auto& blk : blocks_) {
      if (blk.kind != kind) continue;
      for (int i = 0; i < blk.dim; ++i) sf.slot_to_col[blk.first + i] = col++;
      switch (kind) {
        case BlockKind::free: sf.n_free += blk.dim; break;
        case BlockKind::nonneg: sf.n_nonneg += blk.dim; break;
        case BlockKind::soc: sf.soc.push_back(blk.dim); break;
        case BlockKind::exp: sf.n_exp += 1; break;
        case BlockKind::psd: sf.psd.push_back(blk.order); break;
      }
    }
  };
  place(BlockKind::free);
  place(BlockKind::nonneg);
  place(BlockKind::soc);
  place(BlockKind::exp);
  place(BlockKind::psd);

  std::vector<LinExpr> rows = equalities_;
  for (const auto& blk : blocks_) {
    if (!blk.constraint) continue;
    for (int i = 0; i < blk.dim; ++i) rows.push_back(LinExpr::slot(blk.first + i) - blk.def[i]);
  }
  const int n = col;
  const int m = static_cast<int>(rows.size());
  sf.A = Eigen::MatrixXd::Zero(m, n);
  sf.b = Eigen::VectorXd::Zero(m);
  for (int r = 0; r < m; ++r) {
    for (const auto& [i, c] : rows[r].terms()) sf.A(r, sf.slot_to_col[i]) += c;
    sf.b(r) = -rows[r].constant();
  }
  const double sign = maximize_ ? -1.0 : 1.0;
  sf.c = Eigen::VectorXd::Zero(n);
  for (const auto& [i, c] : objective_.terms()) sf.c(sf.slot_to_col[i]) += sign * c;
  sf.c0 = sign * objective_.constant();
  sf.maximize = maximize_;
  return sf;
}

void ConeProgram::write_standard_form(std::ostream& os) const {
  const StandardForm sf = to_standard_form();
  os << "# minimize c'x + c0 subject to A x = b, x in K\n";
  os << std::setprecision(17);
  os << "dims " << sf.A.cols() << ' ' << sf.A.rows() << '\n';
  os << "free " << sf.n_free << '\n';
  os << "nonneg " << sf.n_nonneg << '\n';
  os << "soc";
  for (int d : sf.soc) os << ' ' << d;
  os << "\nexp " << sf.n_exp << '\n';
  os << "psd";
  for (int d : sf.psd) os << ' ' << d;
  os << "\nc0 " << sf.c0 << '\n';
  for (int j = 0; j < sf.c.size(); ++j) {
    if (sf.c(j) != 0.0) os << "c " << j << ' ' << sf.c(j) << '\n';
  }
  for (int i = 0; i < sf.A.rows(); ++i) {
    for (int j = 0; j < sf.A.cols(); ++j) {
      if (sf.A(i, j) != 0.0) os << "A " << i << ' ' << j << ' ' << sf.A(i, j) << '\n';
    }
  }
  for (int i = 0; i < sf.b.size(); ++i) {
    if (sf.b(i) != 0.0) os << "b " << i << ' ' << sf.b(i) << '\n';
  }
}

// ---------------------------------------------------------------- solution

double ConicSolution::value(const LinExpr& e) const {
  double v = e.constant();
  for (const auto& [i, c] : e.terms()) v += c * slots.at(static_cast<size_t>(i));
  return v;
}

cplx ConicSolution::value(const ComplexExpr& e) const { return {value(e.re), value(e.im)}; }

Eigen::VectorXcd ConicSolution::value(const ComplexVarVec& v) const {
  Eigen::VectorXcd out(v.size());
  for (int i = 0; i < v.size(); ++i) out(i) = value(v[i]);
  return out;
}

Eigen::MatrixXcd ConicSolution::value(const HermitianVar& h) const {
  const int n = h.order();
  Eigen::MatrixXcd out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = j; i < n; ++i) {
      out(i, j) = value(h.entry(i, j));
      out(j, i) = std::conj(out(i, j));
    }
    out(j, j) = out(j, j).real();
  }
  return out;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::unbounded: return "unbounded";
    case SolveStatus::numerical_failure: return "numerical-failure";
  }
  return "unknown";
}

// ---------------------------------------------------------------- solve

namespace detail {

Compiled ProgramAccess::compile(const ConeProgram& p) {
  Compiled out;
  out.slot_count = p.slot_count_;
  out.slot_to_y.assign(static_cast<size_t>(p.slot_count_), -1);
  int y = 0;
  for (const auto& blk : p.blocks_) {
    if (blk.constraint || blk.kind != BlockKind::free) continue;
    for (int i = 0; i < blk.dim; ++i) out.slot_to_y[blk.first + i] = y++;
  }
  out.n_free = y;
  for (const auto& blk : p.blocks_) {
    if (blk.constraint || blk.kind == BlockKind::free) continue;
    out.direct.push_back({y, blk.order});
    for (int i = 0; i < blk.dim; ++i) out.slot_to_y[blk.first + i] = y++;
  }
  out.n_y = y;

  int rows = 0;
  for (const auto& blk : p.blocks_) {
    if (!blk.constraint) continue;
    out.slack.push_back({blk.kind, rows, blk.dim, blk.order, blk.first});
    rows += blk.dim;
  }
  auto fill = [&](Eigen::MatrixXd& m, Eigen::VectorXd& v, int r, const LinExpr& e, double sign) {
    for (const auto& [i, c] : e.terms()) {
      const int col = out.slot_to_y[i];
      if (col < 0) throw std::logic_error("constraint refers to a constraint slot");
      m(r, col) += sign * c;
    }
    v(r) += sign * e.constant();
  };
  out.F = Eigen::MatrixXd::Zero(rows, out.n_y);
  out.e = Eigen::VectorXd::Zero(rows);
  for (size_t b = 0, k = 0; b < p.blocks_.size(); ++b) {
    const auto& blk = p.blocks_[b];
    if (!blk.constraint) continue;
    const int r0 = out.slack[k++].row;
    for (int i = 0; i < blk.dim; ++i) fill(out.F, out.e, r0 + i, blk.def[i], 1.0);
  }
  const int m = static_cast<int>(p.equalities_.size());
  out.C = Eigen::MatrixXd::Zero(m, out.n_y);
  out.d = Eigen::VectorXd::Zero(m);
  // row: expr == 0  ->  C y = -constant
  for (int r = 0; r < m; ++r) fill(out.C, out.d, r, p.equalities_[r], 1.0);
  out.d = -out.d;

  const double sign = p.maximize_ ? -1.0 : 1.0;
  Eigen::VectorXd dummy = Eigen::VectorXd::Zero(1);
  Eigen::MatrixXd crow = Eigen::MatrixXd::Zero(1, out.n_y);
  fill(crow, dummy, 0, p.objective_, sign);
  out.c = crow.row(0).transpose();
  out.c0 = dummy(0);
  out.maximize = p.maximize_;
  return out;
}

}  // namespace detail

ConicSolution solve(const ConeProgram& program, const SolverOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const detail::Compiled cp = detail::ProgramAccess::compile(program);
  detail::RawResult raw = detail::solve_compiled(cp, options);
  ConicSolution sol;
  sol.status = raw.status;
  sol.message = std::move(raw.message);
  sol.newton_steps = raw.newton_steps;
  if (raw.y.size() == cp.n_y) {
    sol.slots.assign(static_cast<size_t>(cp.slot_count), 0.0);
    for (int s = 0; s < cp.slot_count; ++s) {
      if (cp.slot_to_y[s] >= 0) sol.slots[s] = raw.y(cp.slot_to_y[s]);
    }
    const Eigen::VectorXd v = cp.F * raw.y + cp.e;
    for (const auto& blk : cp.slack) {
      for (int i = 0; i < blk.dim; ++i) sol.slots[blk.first_slot + i] = v(blk.row + i);
    }
    const double obj = cp.c.dot(raw.y) + cp.c0;
    sol.objective_value = cp.maximize ? -obj : obj;
  }
  sol.solve_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return sol;
}

}  // namespace irssec::conic
