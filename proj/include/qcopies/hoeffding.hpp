#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcopies/core.hpp"
#include "qcopies/rng.hpp"
#include "qcopies/witness.hpp"

namespace qcopies {

// Per-setting deviation bounds h_j, target failure probability and copies.
struct ConfidenceSpec {
  std::vector<double> h;
  double delta = 1e-4;
  std::vector<std::int64_t> t;

  // Same h for every one of `settings` settings.
  static ConfidenceSpec uniform(std::size_t settings, double h, double delta = 1e-4);
  // Requires 0 <= h_j < 1 and 0 < delta < 1; t may be empty.
  void validate() const;
};

struct AllocationInterval {
  std::vector<double> P_minus, P_plus;
  std::vector<double> k_minus, k_plus;
  std::vector<double> real_t_minus, real_t_plus;
  std::vector<std::int64_t> t_minus, t_plus;
};

// Two-sided Hoeffding bound 2 exp(-2 t h^2), clamped to [0, 1].
// Throws DomainError unless t >= 1 and 0 < h < 1.
double failure_probability(std::int64_t t, double h);

// prod_j (1 - failure_probability(t_j, h_j)).
double joint_success(std::span<const std::int64_t> t, std::span<const double> h);

// Intervals for P_j, k_j and the optimal copies t_j when every P_j is
// only known to within h_j. Setting 1 uses p_1 +- h_1. Rotated settings
// bound the parity expectation 2p - 1 by 2(p +- h) - 1 inside [-1, 1]
// and map back to a probability. k+ is the largest variance weight over
// the interval, k- the smallest.
AllocationInterval allocation_interval(const SettingProbabilities& p_hat, const ConfidenceSpec& spec,
                                       double epsilon0);

// Smallest t with 2 exp(-2 t h^2) <= delta.
std::int64_t required_copies(double h, double delta);

// Half-width h with 2 exp(-2 t h^2) = delta.
double hoeffding_halfwidth(std::int64_t t, double delta);

struct CoverageRow {
  std::int64_t copies = 0;
  double true_value = 0.0;
  double h = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> estimates;
  double inside_fraction = 0.0;
};

// For every copy count, estimates P_1 (the all-H plus all-V mass)
// `repeats` times and checks it against the band true +- h(t, delta).
// Repeat r of count c uses stream rng.child(c).child(r).
std::vector<CoverageRow> coverage_experiment(const DensityMatrix& rho, std::span<const std::int64_t> copy_counts,
                                             double delta, std::int64_t repeats, const RngSeed& rng);
std::vector<CoverageRow> coverage_experiment_serial(const DensityMatrix& rho,
                                                    std::span<const std::int64_t> copy_counts, double delta,
                                                    std::int64_t repeats, const RngSeed& rng);

}  // namespace qcopies
