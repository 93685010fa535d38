#include "qcopies/witness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qcopies/errors.hpp"

namespace qcopies {

MeasurementSetting MeasurementSetting::computational(int n) {
  check_qubit_count(n);
  return MeasurementSetting(n, SettingKind::Computational, 0);
}

MeasurementSetting MeasurementSetting::rotated(int n, int k) {
  check_qubit_count(n);
  if (k < 1 || k > n) throw DomainError("rotated setting needs k in [1, n]");
  return MeasurementSetting(n, SettingKind::Rotated, k);
}

double MeasurementSetting::theta() const { return kind_ == SettingKind::Rotated ? k_ * M_PI / n_ : 0.0; }

int MeasurementSetting::parity_weight(std::size_t outcome) const {
  if (kind_ == SettingKind::Computational) return counts_toward_p(outcome) ? 1 : 0;
  return std::popcount(outcome) % 2 == 0 ? 1 : -1;
}

bool MeasurementSetting::counts_toward_p(std::size_t outcome) const {
  if (kind_ == SettingKind::Computational) return outcome == 0 || outcome == outcome_count() - 1;
  return std::popcount(outcome) % 2 == 0;
}

std::string MeasurementSetting::outcome_label(std::size_t outcome) const {
  std::string label(static_cast<std::size_t>(n_), ' ');
  for (int q = 0; q < n_; ++q) {
    const bool set = (outcome >> (n_ - 1 - q)) & 1U;
    label[q] = kind_ == SettingKind::Computational ? (set ? 'V' : 'H') : (set ? '-' : '+');
  }
  return label;
}

std::vector<kernels::Gate2> MeasurementSetting::gates() const {
  if (kind_ == SettingKind::Computational) {
    return std::vector<kernels::Gate2>(n_, kernels::Gate2{1.0, 0.0, 0.0, 1.0});
  }
  // rows: <+,theta| and <-,theta|, |±,theta> = (|H> ± e^{i theta}|V>)/sqrt2
  const cplx phase = std::polar(M_SQRT1_2, -theta());
  return std::vector<kernels::Gate2>(n_, kernels::Gate2{M_SQRT1_2, phase, M_SQRT1_2, -phase});
}

ComplexMatrix MeasurementSetting::projector(std::size_t outcome) const {
  if (outcome >= outcome_count()) throw SizeError("outcome index out of range");
  const auto g = gates();
  ComplexMatrix ket(1, 1, {1.0});
  for (int q = 0; q < n_; ++q) {
    const std::size_t r = (outcome >> (n_ - 1 - q)) & 1U;
    // column vector |phi> = conj of the bra row
    ComplexMatrix single(2, 1, {std::conj(g[q][2 * r]), std::conj(g[q][2 * r + 1])});
    ket = kron(ket, single);
  }
  return ket * ket.adjoint();
}

int WitnessDecomposition::sign_of_setting(std::size_t index) { return index % 2 == 0 ? 1 : -1; }

WitnessDecomposition build_settings(int n) {
  check_qubit_count(n);
  WitnessDecomposition wd;
  wd.n = n;
  wd.settings.reserve(n + 1);
  wd.settings.push_back(MeasurementSetting::computational(n));
  for (int k = 1; k <= n; ++k) wd.settings.push_back(MeasurementSetting::rotated(n, k));
  return wd;
}

void SettingProbabilities::validate() const {
  if (n < 1) throw SizeError("SettingProbabilities: n must be positive");
  if (P.size() != static_cast<std::size_t>(n) + 1) {
    throw SizeError("expected " + std::to_string(n + 1) + " probabilities, got " + std::to_string(P.size()));
  }
  for (double v : P)
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("probability " + std::to_string(v) + " outside [0, 1]");
}

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& s) {
  if (rho.qubits() != s.qubits()) throw SizeError("setting and state qubit counts differ");
  const auto g = s.gates();
  return kernels::product_basis_probabilities(rho.matrix(), g);
}

std::vector<double> outcome_probabilities_serial(const DensityMatrix& rho, const MeasurementSetting& s) {
  if (rho.qubits() != s.qubits()) throw SizeError("setting and state qubit counts differ");
  const auto g = s.gates();
  return kernels::product_basis_probabilities_serial(rho.matrix(), g);
}

double aggregate_p(const MeasurementSetting& s, std::span<const double> distribution) {
  if (distribution.size() != s.outcome_count()) throw SizeError("distribution length != outcome count");
  if (s.kind() == SettingKind::Computational) return distribution.front() + distribution.back();
  return kernels::even_parity_mass(distribution);
}

SettingProbabilities setting_probabilities(const DensityMatrix& rho, const WitnessDecomposition& wd) {
  if (rho.qubits() != wd.n) throw SizeError("state and witness qubit counts differ");
  SettingProbabilities p{wd.n, {}};
  p.P.reserve(wd.size());
  for (const auto& s : wd.settings) {
    if (s.kind() == SettingKind::Computational) {
      p.P.push_back(std::clamp(rho(0, 0).real() + rho(rho.dim() - 1, rho.dim() - 1).real(), 0.0, 1.0));
    } else {
      p.P.push_back(std::clamp(aggregate_p(s, outcome_probabilities(rho, s)), 0.0, 1.0));
    }
  }
  return p;
}

double fidelity_from_probabilities(const SettingProbabilities& p) {
  p.validate();
  const double n = p.n;
  double f = 0.5 * p.P[0];
  for (std::size_t i = 1; i < p.P.size(); ++i) {
    const int sign = WitnessDecomposition::sign_of_setting(i);
    f += sign * p.P[i] / n - sign / (2.0 * n);
  }
  return f;
}

std::vector<double> variance_weights(const SettingProbabilities& p) {
  p.validate();
  const double n2 = static_cast<double>(p.n) * p.n;
  std::vector<double> k(p.P.size());
  k[0] = 0.25 * p.P[0] * (1.0 - p.P[0]);
  for (std::size_t i = 1; i < p.P.size(); ++i) k[i] = p.P[i] * (1.0 - p.P[i]) / n2;
  return k;
}

double delta_f(const SettingProbabilities& p, std::span<const std::int64_t> copies) {
  const auto k = variance_weights(p);
  if (copies.size() != k.size()) throw SizeError("copy vector length != setting count");
  double var = 0.0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (copies[i] <= 0) throw DomainError("delta_f needs every t_j > 0");
    var += k[i] / static_cast<double>(copies[i]);
  }
  return std::sqrt(var);
}

double witness_expectation(const DensityMatrix& rho, int n) {
  if (rho.qubits() != n) throw SizeError("witness_expectation: qubit count mismatch");
  return 0.5 - fidelity_pure(rho, sc_state(n));
}

}  // namespace qcopies
