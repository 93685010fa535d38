#include <algorithm>
#include <cmath>

#include "qcopies/errors.hpp"
#include "qcopies/simulator.hpp"
#include "sampler.hpp"

namespace qcopies {
namespace {

// Everything a trial needs, computed once per experiment.
struct TrialPlan {
  WitnessDecomposition wd;
  std::vector<detail::OutcomeSampler> samplers;
  std::vector<std::vector<char>> in_p;  // outcome counts toward P_j
  std::vector<std::int64_t> copies;
};

TrialPlan make_plan(const DensityMatrix& rho, const CopyAllocation& allocation) {
  TrialPlan plan{build_settings(rho.qubits()), {}, {}, allocation.t};
  if (allocation.size() != plan.wd.size()) {
    throw SizeError("allocation has " + std::to_string(allocation.size()) + " settings, witness needs " +
                    std::to_string(plan.wd.size()));
  }
  for (auto t : allocation.t)
    if (t < 1) throw DomainError("every setting needs at least one copy");
  for (const auto& s : plan.wd.settings) {
    const auto probs = outcome_probabilities(rho, s);
    plan.samplers.emplace_back(probs, SamplingMethod::InverseCdf);
    std::vector<char> mask(s.outcome_count());
    for (std::size_t o = 0; o < mask.size(); ++o) mask[o] = s.counts_toward_p(o) ? 1 : 0;
    plan.in_p.push_back(std::move(mask));
  }
  return plan;
}

double run_trial(const TrialPlan& plan, const RngSeed& trial_seed) {
  SettingProbabilities p{plan.wd.n, std::vector<double>(plan.wd.size())};
  for (std::size_t j = 0; j < plan.wd.size(); ++j) {
    Rng r(trial_seed.child(j));
    std::int64_t hits = 0;
    for (std::int64_t c = 0; c < plan.copies[j]; ++c) hits += plan.in_p[j][plan.samplers[j].draw(r)];
    p.P[j] = static_cast<double>(hits) / static_cast<double>(plan.copies[j]);
  }
  return fidelity_from_probabilities(p);
}

HistogramResult finish(std::vector<double> estimates, HistogramSpec spec) {
  if (spec.bins < 1) throw DomainError("histogram needs at least one bin");
  spec.reset();
  for (double e : estimates) spec.add(e);
  return {std::move(spec), summarize(std::move(estimates))};
}

}  // namespace

HistogramResult run_histogram_experiment(const DensityMatrix& rho, const CopyAllocation& allocation,
                                         std::int64_t trials, HistogramSpec spec, const RngSeed& rng) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const TrialPlan plan = make_plan(rho, allocation);
  std::vector<double> estimates(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < trials; ++i) estimates[i] = run_trial(plan, rng.child(i));
  return finish(std::move(estimates), std::move(spec));
}

HistogramResult run_histogram_experiment_serial(const DensityMatrix& rho, const CopyAllocation& allocation,
                                                std::int64_t trials, HistogramSpec spec, const RngSeed& rng) {
  if (trials < 1) throw DomainError("trials must be >= 1");
  const TrialPlan plan = make_plan(rho, allocation);
  std::vector<double> estimates(static_cast<std::size_t>(trials));
  for (std::int64_t i = 0; i < trials; ++i) estimates[i] = run_trial(plan, rng.child(i));
  return finish(std::move(estimates), std::move(spec));
}

ComparisonReport compare_distributions(const DensityMatrix& rho, std::span<const NamedAllocation> allocations,
                                       std::int64_t trials, const RngSeed& rng) {
  if (allocations.size() < 2) throw DomainError("comparison needs at least two allocations");
  const auto wd = build_settings(rho.qubits());
  const auto p = setting_probabilities(rho, wd);
  ComparisonReport report;
  report.true_fidelity = fidelity_pure(rho, sc_state(rho.qubits()));
  const double baseline = static_cast<double>(allocations.front().allocation.total());
  for (const auto& named : allocations) {
    // Common random numbers across allocations sharpen the comparison.
    const auto result = run_histogram_experiment(rho, named.allocation, trials, HistogramSpec::with_bins(50), rng);
    ComparisonRow row;
    row.name = named.name;
    row.total = named.allocation.total();
    row.predicted_delta_f = delta_f(p, named.allocation);
    row.mean = result.summary.mean;
    row.stddev = result.summary.stddev;
    row.savings = 1.0 - static_cast<double>(row.total) / baseline;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qcopies
