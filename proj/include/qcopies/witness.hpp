#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcopies/core.hpp"
#include "qcopies/kernels.hpp"

namespace qcopies {

enum class SettingKind { Computational, Rotated };

// One complete projective basis on n qubits. Outcome s is a sign pattern:
// bit (n-1-q) of s set means qubit q landed on |V> (computational) or on
// |-,theta> (rotated). Projectors are never materialized except on request.
class MeasurementSetting {
 public:
  static MeasurementSetting computational(int n);
  // theta = k*pi/n, k in [1, n]
  static MeasurementSetting rotated(int n, int k);

  int qubits() const { return n_; }
  SettingKind kind() const { return kind_; }
  int k() const { return k_; }
  double theta() const;
  std::size_t outcome_count() const { return std::size_t{1} << n_; }

  // Rotated: (-1)^{number of '-' results}. Computational: 1 for the
  // all-H and all-V outcomes, 0 otherwise.
  int parity_weight(std::size_t outcome) const;

  // Whether the outcome counts toward P_j (all-H/all-V for the
  // computational setting, even '-' parity for rotated ones).
  bool counts_toward_p(std::size_t outcome) const;

  std::string outcome_label(std::size_t outcome) const;
  std::vector<kernels::Gate2> gates() const;

  // Dense rank-1 projector of one outcome; for tests on small n.
  ComplexMatrix projector(std::size_t outcome) const;

 private:
  MeasurementSetting(int n, SettingKind kind, int k) : n_(n), kind_(kind), k_(k) {}
  int n_;
  SettingKind kind_;
  int k_;
};

// The n+1 settings needed to measure the SC witness: the computational
// basis first, then the rotated bases M_{k pi/n}, k = 1..n.
struct WitnessDecomposition {
  int n = 0;
  std::vector<MeasurementSetting> settings;

  std::size_t size() const { return settings.size(); }
  // Coefficient sign of setting index i >= 1 (0-based) in the fidelity
  // sum: (-1)^{j-1} with j = i + 1.
  static int sign_of_setting(std::size_t index);
};

WitnessDecomposition build_settings(int n);

// Aggregated per-setting probabilities P_1..P_{n+1}.
struct SettingProbabilities {
  int n = 0;
  std::vector<double> P;

  // Throws SizeError/DomainError on wrong length or entries outside [0,1].
  void validate() const;
};

std::vector<double> outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& s);
std::vector<double> outcome_probabilities_serial(const DensityMatrix& rho, const MeasurementSetting& s);

// P_j aggregated from a per-outcome distribution (probabilities or
// relative frequencies) of setting s.
double aggregate_p(const MeasurementSetting& s, std::span<const double> distribution);

SettingProbabilities setting_probabilities(const DensityMatrix& rho, const WitnessDecomposition& wd);

// F = P_1/2 + sum_{j>=2} (-1)^{j-1} P_j / n - sum_{j>=2} (-1)^{j-1} / (2n)
double fidelity_from_probabilities(const SettingProbabilities& p);

// Binomial standard deviation of the fidelity estimate:
// sqrt(P_1(1-P_1)/(4 t_1) + sum_{j>=2} P_j(1-P_j)/(n^2 t_j)).
// Throws DomainError if any t_j <= 0.
double delta_f(const SettingProbabilities& p, std::span<const std::int64_t> copies);

// Variance weights k_1 = P_1(1-P_1)/4, k_j = P_j(1-P_j)/n^2.
std::vector<double> variance_weights(const SettingProbabilities& p);

// <w> = 1/2 - Tr(rho |SC><SC|); negative values certify entanglement.
double witness_expectation(const DensityMatrix& rho, int n);
inline bool certifies_entanglement(double fidelity) { return fidelity > 0.5; }

}  // namespace qcopies
