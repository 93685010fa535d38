#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcopies/core.hpp"
#include "qcopies/witness.hpp"

namespace qcopies {

// minimize sum_j t_j  subject to  sum_j k_j / t_j <= epsilon
struct BudgetProblem {
  std::vector<double> k;  // variance weights, all >= 0
  double epsilon = 0.0;   // squared error budget, epsilon0^2

  void validate() const;
};

struct CopyAllocation {
  std::vector<std::int64_t> t;  // rounded copies per setting, each >= 1
  std::vector<double> real_t;   // continuous optimum before rounding
  double epsilon0 = 0.0;        // sqrt of the budget the allocation meets

  std::int64_t total() const;
  double real_total() const;
  std::size_t size() const { return t.size(); }

  // Every setting gets `copies`.
  static CopyAllocation uniform(std::size_t settings, std::int64_t copies);
  static CopyAllocation from_counts(std::vector<std::int64_t> counts);
};

struct AllocatorOptions {
  // copies given to a setting whose weight k_j is zero
  std::int64_t t_min = 1;
};

// Closed form t_j = sqrt(k_j) * (sum_i sqrt(k_i)) / epsilon, rounded up.
// Throws DegenerateProblemError if every k_j is zero, DomainError if
// epsilon <= 0 or any k_j < 0.
CopyAllocation solve_budget(const BudgetProblem& p, const AllocatorOptions& opts = {});

// Constraint value sum_j k_j / t_j for integer copies.
double budget_usage(std::span<const double> k, std::span<const std::int64_t> t);

// SC witness allocation: k_1 = P_1(1-P_1)/4, k_j = P_j(1-P_j)/n^2.
CopyAllocation allocate_sc(const SettingProbabilities& p, double epsilon0, const AllocatorOptions& opts = {});

// delta_f evaluated on an allocation's rounded copies.
double delta_f(const SettingProbabilities& p, const CopyAllocation& a);

// Frequencies and Tr(M M^†) norms for tomography with mutually orthogonal
// measurement operators. Row nu lists the outcomes of setting nu.
struct TomographyTable {
  std::vector<std::vector<double>> frequencies;
  std::vector<std::vector<double>> operator_norms;  // empty rows mean all 1

  void validate() const;
};

// k_nu = sum_mu f(1-f) Tr(M M^†), then the closed form.
std::vector<double> tomography_weights(const TomographyTable& table);
CopyAllocation allocate_tomography_orthogonal(const TomographyTable& table, double epsilon0,
                                              const AllocatorOptions& opts = {});

// Non-orthogonal operators: sum_{nu,nu'} k_{nu nu'} / sqrt(T_nu T_nu') <= epsilon,
// relaxed through sqrt(q q') <= (q + q')/2 to effective weights
// k_p = (sum_nu' k_{p nu'} + sum_nu k_{nu p}) / 2.
std::vector<double> relaxed_weights(const std::vector<std::vector<double>>& k_matrix);
double bilinear_usage(const std::vector<std::vector<double>>& k_matrix, std::span<const std::int64_t> t);
// Throws InfeasibleError if the rounded result violates the bilinear constraint.
CopyAllocation allocate_tomography_nonorthogonal(const std::vector<std::vector<double>>& k_matrix, double epsilon0,
                                                 const AllocatorOptions& opts = {});

// Smallest equal per-setting count meeting the same budget.
CopyAllocation best_uniform(std::span<const double> k, double epsilon);

// Copy distributions reported for the eight-photon experiment, settings
// ordered computational first.
namespace table1 {
inline constexpr std::int64_t kExperiment[9] = {352, 200, 107, 100, 110, 111, 106, 116, 103};
inline constexpr std::int64_t kUniform[9] = {145, 145, 145, 145, 145, 145, 145, 145, 145};
inline constexpr std::int64_t kOptimized[9] = {415, 106, 103, 106, 103, 108, 101, 108, 103};
inline constexpr std::int64_t kExperimentTotal = 1305;
inline constexpr std::int64_t kOptimizedTotal = 1253;
// Setting-1 counts: all-H, all-V, everything else.
inline constexpr std::int64_t kAllH = 148, kAllV = 136, kOther = 68;
// Smaller of P_j and 1-P_j for the eight rotated settings.
inline constexpr double kMinorityP[8] = {0.2, 0.1869, 0.2, 0.1909, 0.2072, 0.1792, 0.2069, 0.1942};
inline constexpr double kP1 = 0.8068;
inline constexpr double kEpsilon0 = 0.016;
}  // namespace table1

}  // namespace qcopies
