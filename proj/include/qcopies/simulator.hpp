#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qcopies/allocator.hpp"
#include "qcopies/core.hpp"
#include "qcopies/rng.hpp"
#include "qcopies/witness.hpp"

namespace qcopies {

// Event counts of one setting.
struct CountTable {
  std::size_t setting_index = 0;
  std::int64_t total_copies = 0;
  std::vector<std::int64_t> counts;  // one entry per outcome

  std::vector<double> frequencies() const;
  // Throws DomainError if counts are negative or do not sum to total_copies.
  void validate() const;
};

// Fixed-width histogram over [lo, hi). Values equal to hi land in the last bin.
struct HistogramSpec {
  int bins = 50;
  double lo = 0.0;
  double hi = 1.0;
  std::vector<std::int64_t> events;

  static HistogramSpec with_bins(int bins, double lo = 0.0, double hi = 1.0);
  void reset();
  void add(double value);
  std::int64_t total() const;
  double bin_low(int b) const { return lo + (hi - lo) * b / bins; }
  double bin_high(int b) const { return lo + (hi - lo) * (b + 1) / bins; }
  int bin_of(double value) const;
};

enum class SamplingMethod { InverseCdf, Alias };

// Multinomial draw over an explicit outcome distribution.
CountTable sample_distribution(std::span<const double> probs, std::int64_t copies, const RngSeed& rng,
                               SamplingMethod method = SamplingMethod::InverseCdf);

// Born-rule sampling of `copies` measurements of setting s on rho.
CountTable sample_setting(const DensityMatrix& rho, const MeasurementSetting& s, std::int64_t copies,
                          const RngSeed& rng, SamplingMethod method = SamplingMethod::InverseCdf);

struct FidelityEstimate {
  double fidelity = 0.0;
  double delta_f = 0.0;
  SettingProbabilities p_hat;
};

// One table per setting of wd, in order, each with a positive total.
FidelityEstimate estimate_fidelity(std::span<const CountTable> tables, const WitnessDecomposition& wd);

struct TrialSummary {
  std::int64_t trials = 0;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  std::vector<double> estimates;  // F-hat of every trial, in trial order
};

TrialSummary summarize(std::vector<double> estimates);

struct HistogramResult {
  HistogramSpec histogram;
  TrialSummary summary;
};

// Repeats the full measurement (every setting with allocation.t copies)
// `trials` times and bins F-hat. Trial i uses stream rng.child(i), so the
// result does not depend on the thread count.
HistogramResult run_histogram_experiment(const DensityMatrix& rho, const CopyAllocation& allocation,
                                         std::int64_t trials, HistogramSpec spec, const RngSeed& rng);
HistogramResult run_histogram_experiment_serial(const DensityMatrix& rho, const CopyAllocation& allocation,
                                                std::int64_t trials, HistogramSpec spec, const RngSeed& rng);

struct NamedAllocation {
  std::string name;
  CopyAllocation allocation;
};

struct ComparisonRow {
  std::string name;
  std::int64_t total = 0;
  double predicted_delta_f = 0.0;  // delta_f at the true probabilities
  double mean = 0.0;
  double stddev = 0.0;
  double savings = 0.0;  // 1 - total / baseline total
};

struct ComparisonReport {
  double true_fidelity = 0.0;
  std::vector<ComparisonRow> rows;  // rows[0] is the baseline
};

// The first allocation is the baseline for the savings column.
ComparisonReport compare_distributions(const DensityMatrix& rho, std::span<const NamedAllocation> allocations,
                                       std::int64_t trials, const RngSeed& rng);

}  // namespace qcopies
