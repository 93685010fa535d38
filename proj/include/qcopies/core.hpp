#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace qcopies {

using cplx = std::complex<double>;

inline constexpr int kMaxQubits = 12;
inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = -1e-9;
inline constexpr double kNormTol = 1e-12;

// Throws SizeError unless 1 <= n <= kMaxQubits.
void check_qubit_count(int n);

// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  // max_ij |a_ij - conj(a_ji)|
  double hermitian_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  // Matrix product.
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  double max_abs_diff(const ComplexMatrix& o) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

// (a ⊗ b)[i*p + k, j*q + l] = a[i,j] * b[k,l]
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

class PureState {
 public:
  // Throws DomainError unless the squared norm is within kNormTol of 1
  // and the length is a power of two.
  explicit PureState(std::vector<cplx> amplitudes);

  std::size_t dim() const { return amps_.size(); }
  int qubits() const;
  std::span<const cplx> amplitudes() const { return amps_; }
  const cplx& operator[](std::size_t i) const { return amps_[i]; }

 private:
  std::vector<cplx> amps_;
};

// Hermitian, unit-trace, positive semidefinite matrix on n qubits.
// Immutable once built.
class DensityMatrix {
 public:
  // Validates all invariants (Hermitian, trace, PSD); throws DomainError.
  static DensityMatrix from_matrix(ComplexMatrix m);

  // Skips the eigenvalue check. Only for inputs that are PSD by construction.
  static DensityMatrix trusted(ComplexMatrix m);

  std::size_t dim() const { return m_.rows(); }
  int qubits() const { return qubits_; }
  const ComplexMatrix& matrix() const { return m_; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  double purity() const;

 private:
  DensityMatrix(ComplexMatrix m, int qubits) : m_(std::move(m)), qubits_(qubits) {}
  ComplexMatrix m_;
  int qubits_ = 0;
};

// Returns an empty string when m satisfies every DensityMatrix invariant,
// otherwise a description of the first violation.
std::string density_invariant_violation(const ComplexMatrix& m);

// Eigenvalues of a Hermitian matrix in ascending order.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

// (|0...0> + |1...1>)/sqrt(2)
PureState sc_state(int n);
PureState basis_state(int n, std::size_t index);

DensityMatrix pure_density(const PureState& psi);
DensityMatrix maximally_mixed(int n);

// p * target + (1 - p) * I/d
DensityMatrix white_noise_mix(const DensityMatrix& target, double p);

// Mixing weight p for which white_noise_mix(|SC><SC|, p) has the given
// fidelity with the pure SC state: (F - 1/d) / (1 - 1/d).
double depolarizing_weight_for_fidelity(int n, double fidelity);
DensityMatrix depolarized_sc(int n, double fidelity);

// <psi|rho|psi>, clamped to [0, 1]
double fidelity_pure(const DensityMatrix& rho, const PureState& psi);

// sqrt(Tr((a - b)(a - b)^†))
double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b);

// Nearest unit-trace PSD matrix in Frobenius norm. The input is symmetrized
// as (m + m^†)/2 first; its eigenvalues are projected onto the probability
// simplex.
DensityMatrix psd_project(const ComplexMatrix& m);

// Euclidean projection of v onto {x >= 0, sum x = 1}.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace qcopies
