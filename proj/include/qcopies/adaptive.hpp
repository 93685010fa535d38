#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qcopies/core.hpp"
#include "qcopies/rng.hpp"
#include "qcopies/simulator.hpp"
#include "qcopies/witness.hpp"

namespace qcopies {

struct AdaptiveConfig {
  // Squared error budgets, one per feedback round, strictly decreasing.
  std::vector<double> epsilon_schedule;
  // Prior P_j used for the first allocation; empty means 1/2 everywhere.
  std::vector<double> initial_P;
  // Copies per setting measured before the first allocation; empty means
  // 5 everywhere, zeros skip the seed measurement.
  std::vector<std::int64_t> t_initial;
  std::int64_t t_min = 1;

  // start, start*ratio, start*ratio^2, ... up to and including the first
  // value <= final.
  static std::vector<double> geometric_schedule(double start, double ratio, double final_epsilon);
  // Throws ConfigError on an empty or non-decreasing schedule or bad lengths.
  void validate(std::size_t settings) const;
};

struct AdaptiveRound {
  int round = 0;          // 0 is the seed measurement
  double epsilon = 0.0;   // 0 for the seed round
  std::vector<double> p_used;  // probabilities fed to the allocator
  std::vector<std::int64_t> target;
  std::vector<std::int64_t> increments;
  std::vector<std::int64_t> cumulative;
  std::vector<double> p_hat;   // pooled estimate after the round
};

struct AdaptiveState {
  int round = 0;
  std::vector<std::int64_t> cumulative_t;
  std::vector<CountTable> pooled;  // all counts so far, one table per setting
  SettingProbabilities current_P;
  std::vector<AdaptiveRound> history;
  double fidelity = 0.0;
  double delta_f = 0.0;

  std::int64_t total_copies() const;
  // Feedback rounds, excluding the seed measurement.
  int feedback_rounds() const;
};

// Stream used to sample setting j in round l.
RngSeed adaptive_stream(const RngSeed& rng, int round, std::size_t setting);

// Allocate with the current estimates and the round's epsilon, measure
// only the missing copies, pool, re-estimate; repeat over the schedule.
AdaptiveState run_adaptive(const DensityMatrix& rho, const WitnessDecomposition& wd, const AdaptiveConfig& cfg,
                           const RngSeed& rng);

struct SweepConfig {
  double epsilon_start = 0.01;
  double epsilon_final = 0.0003;
  double p_lo = 0.25, p_hi = 0.75;          // random prior range
  std::int64_t t_init_lo = 4, t_init_hi = 7;  // random seed copies
  std::int64_t t_min = 1;
};

struct SweepRow {
  double ratio = 0.0;
  double mean_total = 0.0;
  double std_total = 0.0;
  double mean_rounds = 0.0;
  std::vector<std::int64_t> totals;
};

// Repeat r uses the same random prior and seed counts for every ratio.
std::vector<SweepRow> sweep_epsilon_ratio(const DensityMatrix& rho, std::span<const double> ratios,
                                          std::int64_t repeats, const SweepConfig& cfg, const RngSeed& rng);

struct TimelineRound {
  int round = 0;
  std::int64_t copies = 0;
  int switches = 0;
  double preparation_hours = 0.0;
  double switching_hours = 0.0;
};

struct TimelineReport {
  std::vector<TimelineRound> rounds;
  double adaptive_hours = 0.0;
  int adaptive_switches = 0;
  // Same copies measured setting by setting in a single pass.
  double traditional_hours = 0.0;
  int traditional_switches = 0;
};

// switch_cost in hours, copy_rate in copies per hour.
TimelineReport protocol_timeline(const AdaptiveState& state, double switch_cost_hours, double copy_rate);

// Hours needed to prepare `copies` at `copy_rate` copies per hour.
double preparation_hours(double copies, double copy_rate);

}  // namespace qcopies
