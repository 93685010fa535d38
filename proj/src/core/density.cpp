#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "qcopies/core.hpp"
#include "qcopies/errors.hpp"

namespace qcopies {
namespace {

int log2_exact(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim)) {
    throw SizeError("dimension " + std::to_string(dim) + " is not a power of two");
  }
  return std::countr_zero(dim);
}

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
  return out;
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
  ComplexMatrix h(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

}  // namespace

PureState::PureState(std::vector<cplx> amplitudes) : amps_(std::move(amplitudes)) {
  log2_exact(amps_.size());
  double norm2 = 0.0;
  for (const auto& a : amps_) norm2 += std::norm(a);
  if (std::abs(norm2 - 1.0) > kNormTol) {
    throw DomainError("state is not normalized: |psi|^2 = " + std::to_string(norm2));
  }
}

int PureState::qubits() const { return std::countr_zero(amps_.size()); }

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) {
  if (!m.square()) throw SizeError("eigenvalues: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(m), Eigen::EigenvaluesOnly);
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

std::string density_invariant_violation(const ComplexMatrix& m) {
  if (!m.square()) return "matrix is not square";
  if (m.rows() == 0 || !std::has_single_bit(m.rows())) return "dimension is not a power of two";
  const double herm = m.hermitian_defect();
  if (herm > kHermitianTol) return "not Hermitian: defect " + std::to_string(herm);
  const cplx tr = m.trace();
  if (std::abs(tr - 1.0) > kTraceTol) return "trace " + std::to_string(tr.real()) + " != 1";
  const auto ev = hermitian_eigenvalues(m);
  if (!ev.empty() && ev.front() < kPsdTol) return "negative eigenvalue " + std::to_string(ev.front());
  return {};
}

DensityMatrix DensityMatrix::from_matrix(ComplexMatrix m) {
  if (auto why = density_invariant_violation(m); !why.empty()) {
    throw DomainError("invalid density matrix: " + why);
  }
  const int n = log2_exact(m.rows());
  return DensityMatrix(std::move(m), n);
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix m) {
  if (!m.square()) throw SizeError("density matrix must be square");
  const int n = log2_exact(m.rows());
  return DensityMatrix(std::move(m), n);
}

double DensityMatrix::purity() const {
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho
  double s = 0.0;
  for (const auto& z : m_.entries()) s += std::norm(z);
  return s;
}

PureState sc_state(int n) {
  check_qubit_count(n);
  std::vector<cplx> amps(std::size_t{1} << n);
  amps.front() = M_SQRT1_2;
  amps.back() = M_SQRT1_2;
  return PureState(std::move(amps));
}

PureState basis_state(int n, std::size_t index) {
  check_qubit_count(n);
  const std::size_t dim = std::size_t{1} << n;
  if (index >= dim) throw SizeError("basis index out of range");
  std::vector<cplx> amps(dim);
  amps[index] = 1.0;
  return PureState(std::move(amps));
}

DensityMatrix pure_density(const PureState& psi) {
  const std::size_t d = psi.dim();
  ComplexMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    if (psi[i] == cplx(0.0)) continue;
    for (std::size_t j = 0; j < d; ++j) m(i, j) = psi[i] * std::conj(psi[j]);
  }
  return DensityMatrix::trusted(std::move(m));
}

DensityMatrix maximally_mixed(int n) {
  check_qubit_count(n);
  const std::size_t d = std::size_t{1} << n;
  return DensityMatrix::trusted(ComplexMatrix::identity(d) * cplx(1.0 / static_cast<double>(d)));
}

DensityMatrix white_noise_mix(const DensityMatrix& target, double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("mixing weight must lie in [0, 1]");
  const std::size_t d = target.dim();
  ComplexMatrix m = target.matrix() * cplx(p);
  const double diag = (1.0 - p) / static_cast<double>(d);
  for (std::size_t i = 0; i < d; ++i) m(i, i) += diag;
  return DensityMatrix::trusted(std::move(m));
}

double depolarizing_weight_for_fidelity(int n, double fidelity) {
  check_qubit_count(n);
  const double inv_d = std::ldexp(1.0, -n);
  if (!(fidelity >= inv_d && fidelity <= 1.0)) {
    throw DomainError("a depolarized SC state has fidelity in [1/d, 1]");
  }
  return (fidelity - inv_d) / (1.0 - inv_d);
}

DensityMatrix depolarized_sc(int n, double fidelity) {
  return white_noise_mix(pure_density(sc_state(n)), depolarizing_weight_for_fidelity(n, fidelity));
}

double fidelity_pure(const DensityMatrix& rho, const PureState& psi) {
  if (rho.dim() != psi.dim()) throw SizeError("fidelity: dimension mismatch");
  const std::size_t d = rho.dim();
  cplx acc = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    if (psi[i] == cplx(0.0)) continue;
    cplx row = 0.0;
    for (std::size_t j = 0; j < d; ++j) row += rho(i, j) * psi[j];
    acc += std::conj(psi[i]) * row;
  }
  return std::clamp(acc.real(), 0.0, 1.0);
}

double frobenius_distance(const DensityMatrix& a, const DensityMatrix& b) {
  if (a.dim() != b.dim()) throw SizeError("frobenius_distance: dimension mismatch");
  return (a.matrix() - b.matrix()).frobenius_norm();
}

std::vector<double> project_to_simplex(std::span<const double> v) {
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    cumulative += sorted[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (sorted[i] - t > 0.0) theta = t;
  }
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::max(v[i] - theta, 0.0);
  return out;
}

DensityMatrix psd_project(const ComplexMatrix& m) {
  if (!m.square()) throw SizeError("psd_project: matrix is not square");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(to_eigen(hermitian_part(m)));
  const Eigen::VectorXd& ev = solver.eigenvalues();
  const auto lambda = project_to_simplex(std::span<const double>(ev.data(), ev.size()));
  const Eigen::MatrixXcd& vecs = solver.eigenvectors();

  const std::size_t d = m.rows();
  ComplexMatrix out(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (lambda[k] == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const cplx vi = vecs(i, k) * lambda[k];
      for (std::size_t j = 0; j < d; ++j) out(i, j) += vi * std::conj(vecs(j, k));
    }
  }
  // Remove rounding asymmetry so the Hermitian invariant holds exactly.
  for (std::size_t i = 0; i < d; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < d; ++j) out(j, i) = std::conj(out(i, j));
  }
  return DensityMatrix::trusted(std::move(out));
}

}  // namespace qcopies
