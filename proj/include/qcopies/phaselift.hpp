#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcopies/core.hpp"
#include "qcopies/rng.hpp"

namespace qcopies {

// Rank-1 projector |phi><phi| onto a product of single-qubit X, Y or Z
// eigenstates.
struct PovmElement {
  std::string label;        // e.g. "XZY:+-+"
  std::size_t setting = 0;  // index into pauli_settings
  std::size_t outcome = 0;  // bit (n-1-q) set means the -1 eigenstate on qubit q
  std::vector<cplx> phi;

  // <phi|rho|phi>
  double expectation(const ComplexMatrix& rho) const;
};

struct PovmGroup {
  std::string label;  // per-qubit bases, e.g. "XZY"
  std::vector<PovmElement> elements;
};

// All 3^n local Pauli bases with their 2^n outcomes. Throws SizeError for n > 4.
std::vector<PovmGroup> pauli_settings(int n);

// Outcome probabilities of every group on rho.
std::vector<std::vector<double>> pauli_probabilities(const DensityMatrix& rho, const std::vector<PovmGroup>& groups);

enum class PhaseliftSolver { SmoothedFista, Subgradient };

struct ReconstructOptions {
  PhaseliftSolver solver = PhaseliftSolver::SmoothedFista;
  int max_iterations = 5000;
  double tolerance = 1e-6;   // relative objective change that ends a stage
  double mu_min = 1e-6;      // final Huber width
  double mu_shrink = 0.3;
  int stage_iterations = 400;
  double subgradient_step = 0.05;  // c in c / sqrt(k)
};

struct ReconstructionResult {
  DensityMatrix rho_hat = maximally_mixed(1);
  double objective = 0.0;  // sum_i |<phi_i|rho_hat|phi_i> - f_i|
  int iterations = 0;
  bool converged = false;
  // l1 objective after every accepted iteration; nonincreasing.
  std::vector<double> objective_history;
};

// minimize sum_i |Tr(rho M_i) - f_i| over trace-one PSD rho.
ReconstructionResult reconstruct(std::span<const PovmElement> elements, std::span<const double> freqs,
                                 const ReconstructOptions& opts = {});
// Group form: freqs[g][o] belongs to groups[g].elements[o].
ReconstructionResult reconstruct(const std::vector<PovmGroup>& groups, const std::vector<std::vector<double>>& freqs,
                                 const ReconstructOptions& opts = {});

double l1_misfit(std::span<const PovmElement> elements, std::span<const double> freqs, const ComplexMatrix& rho);

struct CurveRow {
  std::size_t elements_used = 0;
  double mean_fidelity = 0.0, std_fidelity = 0.0;
  double mean_mse = 0.0, std_mse = 0.0;
};

// Samples counts_per_setting copies of every Pauli basis, then for each
// entry of element_counts reconstructs from the first that many POVM
// elements of a seeded shuffle (prefixes are nested within a repeat).
// Fidelity is taken with the pure SC state, MSE = ||rho_hat - rho_true||_F^2.
std::vector<CurveRow> reconstruction_curve(const DensityMatrix& rho_true, std::int64_t counts_per_setting,
                                           std::span<const std::size_t> element_counts, std::int64_t repeats,
                                           const RngSeed& rng, const ReconstructOptions& opts = {});

}  // namespace qcopies
