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

/**
 * \file irssec/conic.hpp
 *
 * \brief Declarative conic programs and an interior-point solver for them.
 *
 * A ConeProgram owns a set of real scalar slots. Slots are grouped into
 * blocks: free blocks, or blocks that are themselves members of a cone
 * (nonnegative orthant, second-order cone, exponential cone, Hermitian PSD).
 * Constraints are stated over affine expressions of the slots; each one is
 * compiled into a fresh cone block tied to its expression by equalities.
 *
 * Hermitian PSD variables are stored through the real embedding
 * [Re -Im; Im Re], so a block of complex order n is a real PSD block of
 * order 2n. All linear functionals exposed on such a block are invariant
 * under the embedding symmetry, which keeps the iterates structured.
 */

#ifndef IRSSEC_CONIC_HPP
#define IRSSEC_CONIC_HPP

#include <complex>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace irssec::conic {

using cplx = std::complex<double>;

/// Affine expression over scalar slots: sum of coeff * slot plus a constant.
class LinExpr {
 public:
  using Term = std::pair<int, double>;

  LinExpr() = default;
  LinExpr(double constant) : constant_(constant) {}  // NOLINT(implicit)

  static LinExpr slot(int index, double coeff = 1.0);

  void add_term(int index, double coeff);
  void add_constant(double value) { constant_ += value; }

  const std::vector<Term>& terms() const { return terms_; }
  double constant() const { return constant_; }

  LinExpr& operator+=(const LinExpr& other);
  LinExpr& operator-=(const LinExpr& other);
  LinExpr& operator*=(double scale);

  friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
  friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
  friend LinExpr operator*(LinExpr a, double s) { return a *= s; }
  friend LinExpr operator*(double s, LinExpr a) { return a *= s; }
  friend LinExpr operator-(LinExpr a) { return a *= -1.0; }

 private:
  std::vector<Term> terms_;
  double constant_ = 0.0;
};

/// Complex-valued affine expression, kept as a pair of real expressions.
struct ComplexExpr {
  LinExpr re;
  LinExpr im;

  ComplexExpr() = default;
  ComplexExpr(LinExpr r, LinExpr i) : re(std::move(r)), im(std::move(i)) {}
  ComplexExpr(cplx c) : re(c.real()), im(c.imag()) {}  // NOLINT(implicit)

  ComplexExpr& operator+=(const ComplexExpr& o);
  ComplexExpr& operator-=(const ComplexExpr& o);
  friend ComplexExpr operator+(ComplexExpr a, const ComplexExpr& b) { return a += b; }
  friend ComplexExpr operator-(ComplexExpr a, const ComplexExpr& b) { return a -= b; }
  friend ComplexExpr operator*(cplx s, const ComplexExpr& a);
  friend ComplexExpr operator*(const ComplexExpr& a, cplx s) { return s * a; }
};

ComplexExpr conj(const ComplexExpr& a);

/// Contiguous run of free real slots.
struct VarVec {
  int first = 0;
  int size = 0;
  LinExpr operator[](int i) const { return LinExpr::slot(first + i); }
};

/// Complex vector variable built from two free real runs.
struct ComplexVarVec {
  VarVec re;
  VarVec im;
  int size() const { return re.size; }
  ComplexExpr operator[](int i) const { return {re[i], im[i]}; }
};

/// sum_i row[i] * x[i]
ComplexExpr dot(const Eigen::RowVectorXcd& row, const ComplexVarVec& x);

/// Hermitian matrix variable (PSD-constrained or free).
class HermitianVar {
 public:
  HermitianVar() = default;

  int order() const { return n_; }
  bool is_psd() const { return psd_; }

  /// Entry (i, j) as a complex affine expression.
  ComplexExpr entry(int i, int j) const;

  /// Re tr(C X) for Hermitian C.
  LinExpr trace_inner(const Eigen::MatrixXcd& c) const;

  LinExpr trace() const;

 private:
  friend class ConeProgram;
  HermitianVar(int first, int n, bool psd) : first_(first), n_(n), psd_(psd) {}

  int first_ = 0;
  int n_ = 0;
  bool psd_ = false;
};

/// Hermitian affine expression: entries (i, j) for i >= j; upper part implied.
struct HermitianAffine {
  int n = 0;
  std::vector<ComplexExpr> lower;  // column-major lower triangle

  explicit HermitianAffine(int order = 0);
  ComplexExpr& at(int i, int j);
  const ComplexExpr& at(int i, int j) const;
};

enum class BlockKind { free, nonneg, soc, exp, psd };

/// Plain standard form: minimize c'x + c0 s.t. A x = b, x in (free x cones).
/// Columns are ordered free | nonneg | soc... | exp... | psd... (svec).
/// Only used for dumps; the solver works on the inequality form directly.
struct StandardForm {
  Eigen::VectorXd c;
  double c0 = 0.0;
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  int n_free = 0;
  int n_nonneg = 0;
  std::vector<int> soc;  // block dimensions
  int n_exp = 0;         // number of 3-dim blocks
  std::vector<int> psd;  // real orders
  std::vector<int> slot_to_col;
  bool maximize = false;
};

enum class SolveStatus { optimal, infeasible, unbounded, numerical_failure };

std::string to_string(SolveStatus s);

struct SolverOptions {
  double tol = 1e-8;
  double feas_tol = 1e-7;
  double mu = 15.0;
  int max_newton = 800;
  bool verbose = false;
};

struct ConicSolution {
  SolveStatus status = SolveStatus::numerical_failure;
  double objective_value = 0.0;
  std::vector<double> slots;
  double solve_time_s = 0.0;
  int newton_steps = 0;
  std::string message;

  bool ok() const { return status == SolveStatus::optimal; }
  double value(const LinExpr& e) const;
  cplx value(const ComplexExpr& e) const;
  Eigen::VectorXcd value(const ComplexVarVec& v) const;
  Eigen::MatrixXcd value(const HermitianVar& h) const;
};

namespace detail {
struct ProgramAccess;
}

class ConeProgram {
 public:
  VarVec add_variables(int n);
  ComplexVarVec add_complex_variables(int n);
  HermitianVar add_hermitian_psd(int n);
  HermitianVar add_hermitian(int n);

  void add_equality(const LinExpr& e);  // e == 0
  void add_nonneg(const LinExpr& e);    // e >= 0
  /// ||x|| <= t
  void add_soc(const LinExpr& t, const std::vector<LinExpr>& x);
  /// 2 a b >= ||x||^2, a >= 0, b >= 0
  void add_rotated_soc(const LinExpr& a, const LinExpr& b, const std::vector<LinExpr>& x);
  /// y exp(x / y) <= z, y > 0
  void add_exp(const LinExpr& x, const LinExpr& y, const LinExpr& z);
  /// Hermitian affine expression is PSD.
  void add_psd(const HermitianAffine& h);

  void minimize(const LinExpr& objective);
  void maximize(const LinExpr& objective);

  int slot_count() const { return slot_count_; }
  int equality_count() const { return static_cast<int>(equalities_.size()); }

  StandardForm to_standard_form() const;

  /// Plain-text dump of the compiled standard form (for external cross-checks).
  void write_standard_form(std::ostream& os) const;

 private:
  friend struct detail::ProgramAccess;

  struct Block {
    BlockKind kind;
    int first;
    int dim;    // number of slots
    int order;  // psd real order (2n), else 0
    bool constraint = false;
    std::vector<LinExpr> def;  // constraint blocks: slot i == def[i]
  };

  int add_block(BlockKind kind, int dim, int order = 0);
  void add_constraint_block(BlockKind kind, std::vector<LinExpr> def, int order = 0);
  void check_expr(const LinExpr& e) const;

  std::vector<Block> blocks_;
  std::vector<LinExpr> equalities_;
  LinExpr objective_;
  bool maximize_ = false;
  int slot_count_ = 0;
};

ConicSolution solve(const ConeProgram& program, const SolverOptions& options = {});

/// [Re -Im; Im Re] embedding of a Hermitian matrix. Throws on non-Hermitian input.
Eigen::MatrixXd complex_to_real_embed(const Eigen::MatrixXcd& h, double herm_tol = 1e-12);

/// [Re; Im] stacking of a complex vector.
Eigen::VectorXd complex_to_real_embed(const Eigen::VectorXcd& v);

namespace svec {
int length(int order);
int index(int order, int i, int j);  // any i, j
Eigen::VectorXd pack(const Eigen::MatrixXd& m);
Eigen::MatrixXd unpack(const Eigen::Ref<const Eigen::VectorXd>& v, int order);
}  // namespace svec

}  // namespace irssec::conic

#endif  // IRSSEC_CONIC_HPP
