#include "qcopies/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcopies/allocator.hpp"
#include "qcopies/errors.hpp"

namespace qcopies {
namespace {

// Keeps a finite-sample 0 or 1 from freezing a setting at zero variance.
double clamp_estimate(double p, std::int64_t copies) {
  const double c = copies > 0 ? std::min(1.0 / static_cast<double>(copies), 0.5) : 1e-3;
  return std::clamp(p, c, 1.0 - c);
}

void pool_round(const DensityMatrix& rho, const WitnessDecomposition& wd, const std::vector<std::int64_t>& inc,
                const RngSeed& rng, int round, AdaptiveState& st) {
  for (std::size_t j = 0; j < wd.size(); ++j) {
    if (inc[j] == 0) continue;  // nothing to measure for this setting this round
    const auto table = sample_setting(rho, wd.settings[j], inc[j], adaptive_stream(rng, round, j));
    auto& pool = st.pooled[j];
    for (std::size_t o = 0; o < pool.counts.size(); ++o) pool.counts[o] += table.counts[o];
    pool.total_copies += inc[j];
    st.cumulative_t[j] += inc[j];
  }
  for (std::size_t j = 0; j < wd.size(); ++j) {
    if (st.cumulative_t[j] == 0) continue;
    st.current_P.P[j] = std::clamp(aggregate_p(wd.settings[j], st.pooled[j].frequencies()), 0.0, 1.0);
  }
}

}  // namespace

std::vector<double> AdaptiveConfig::geometric_schedule(double start, double ratio, double final_epsilon) {
  if (!(start > 0.0)) throw ConfigError("schedule start must be positive");
  if (!(ratio > 0.0 && ratio < 1.0)) throw ConfigError("schedule ratio must lie in (0, 1)");
  if (!(final_epsilon > 0.0)) throw ConfigError("schedule final value must be positive");
  std::vector<double> out{start};
  while (out.back() > final_epsilon * (1.0 + 1e-9)) out.push_back(out.back() * ratio);
  return out;
}

void AdaptiveConfig::validate(std::size_t settings) const {
  if (epsilon_schedule.empty()) throw ConfigError("epsilon schedule is empty");
  for (std::size_t i = 0; i < epsilon_schedule.size(); ++i) {
    if (!(epsilon_schedule[i] > 0.0)) throw ConfigError("schedule values must be positive");
    if (i > 0 && !(epsilon_schedule[i] < epsilon_schedule[i - 1])) {
      throw ConfigError("schedule must be strictly decreasing");
    }
  }
  if (!initial_P.empty()) {
    if (initial_P.size() != settings) throw ConfigError("initial_P needs one entry per setting");
    for (double p : initial_P)
      if (!(p >= 0.0 && p <= 1.0)) throw ConfigError("initial_P entries must lie in [0, 1]");
  }
  if (!t_initial.empty()) {
    if (t_initial.size() != settings) throw ConfigError("t_initial needs one entry per setting");
    for (auto t : t_initial)
      if (t < 0) throw ConfigError("t_initial entries must be >= 0");
  }
  if (t_min < 1) throw ConfigError("t_min must be >= 1");
}

std::int64_t AdaptiveState::total_copies() const {
  return std::accumulate(cumulative_t.begin(), cumulative_t.end(), std::int64_t{0});
}

int AdaptiveState::feedback_rounds() const {
  return static_cast<int>(std::count_if(history.begin(), history.end(), [](const auto& r) { return r.round > 0; }));
}

RngSeed adaptive_stream(const RngSeed& rng, int round, std::size_t setting) {
  return rng.child(static_cast<std::uint64_t>(round)).child(setting);
}

AdaptiveState run_adaptive(const DensityMatrix& rho, const WitnessDecomposition& wd, const AdaptiveConfig& cfg,
                           const RngSeed& rng) {
  if (rho.qubits() != wd.n) throw SizeError("state and witness qubit counts differ");
  const std::size_t m = wd.size();
  cfg.validate(m);

  AdaptiveState st;
  st.cumulative_t.assign(m, 0);
  st.current_P = {wd.n, cfg.initial_P.empty() ? std::vector<double>(m, 0.5) : cfg.initial_P};
  for (std::size_t j = 0; j < m; ++j) {
    CountTable t;
    t.setting_index = j;
    t.counts.assign(wd.settings[j].outcome_count(), 0);
    st.pooled.push_back(std::move(t));
  }

  const auto seed = cfg.t_initial.empty() ? std::vector<std::int64_t>(m, 5) : cfg.t_initial;
  if (std::any_of(seed.begin(), seed.end(), [](auto t) { return t > 0; })) {
    pool_round(rho, wd, seed, rng, 0, st);
    st.history.push_back({0, 0.0, {}, seed, seed, st.cumulative_t, st.current_P.P});
  }

  AllocatorOptions opts;
  opts.t_min = cfg.t_min;
  for (std::size_t l = 0; l < cfg.epsilon_schedule.size(); ++l) {
    const int round = static_cast<int>(l) + 1;
    const double eps = cfg.epsilon_schedule[l];
    // The first allocation trusts the prior; later ones the pooled counts.
    SettingProbabilities used{wd.n, {}};
    const auto& source = l == 0 ? (cfg.initial_P.empty() ? std::vector<double>(m, 0.5) : cfg.initial_P)
                                : st.current_P.P;
    for (std::size_t j = 0; j < m; ++j) {
      used.P.push_back(clamp_estimate(source[j], l == 0 ? 0 : st.cumulative_t[j]));
    }
    const auto alloc = allocate_sc(used, std::sqrt(eps), opts);
    std::vector<std::int64_t> inc(m);
    for (std::size_t j = 0; j < m; ++j) inc[j] = std::max<std::int64_t>(0, alloc.t[j] - st.cumulative_t[j]);
    pool_round(rho, wd, inc, rng, round, st);
    st.history.push_back({round, eps, used.P, alloc.t, inc, st.cumulative_t, st.current_P.P});
    st.round = round;
  }

  const auto est = estimate_fidelity(st.pooled, wd);
  st.fidelity = est.fidelity;
  st.delta_f = est.delta_f;
  return st;
}

std::vector<SweepRow> sweep_epsilon_ratio(const DensityMatrix& rho, std::span<const double> ratios,
                                          std::int64_t repeats, const SweepConfig& cfg, const RngSeed& rng) {
  if (repeats < 1) throw DomainError("repeats must be >= 1");
  if (cfg.t_init_lo < 0 || cfg.t_init_hi < cfg.t_init_lo) throw ConfigError("bad seed-copy range");
  for (double r : ratios)
    if (!(r > 0.0 && r < 1.0)) throw DomainError("ratios must lie in (0, 1)");

  const auto wd = build_settings(rho.qubits());
  const std::size_t m = wd.size();
  std::vector<SweepRow> rows(ratios.size());
  std::vector<std::vector<int>> rounds(ratios.size(), std::vector<int>(static_cast<std::size_t>(repeats)));
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    rows[i].ratio = ratios[i];
    rows[i].totals.resize(static_cast<std::size_t>(repeats));
  }

  const std::int64_t jobs = static_cast<std::int64_t>(ratios.size()) * repeats;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const std::size_t i = static_cast<std::size_t>(job / repeats);
    const std::int64_t r = job % repeats;
    Rng draw(rng.child(r).child(0));
    AdaptiveConfig ac;
    ac.t_min = cfg.t_min;
    for (std::size_t j = 0; j < m; ++j) {
      ac.initial_P.push_back(draw.uniform(cfg.p_lo, cfg.p_hi));
      ac.t_initial.push_back(cfg.t_init_lo +
                             static_cast<std::int64_t>(draw.below(static_cast<std::uint64_t>(cfg.t_init_hi - cfg.t_init_lo + 1))));
    }
    ac.epsilon_schedule = AdaptiveConfig::geometric_schedule(cfg.epsilon_start, ratios[i], cfg.epsilon_final);
    const auto st = run_adaptive(rho, wd, ac, rng.child(r).child(1));
    rows[i].totals[r] = st.total_copies();
    rounds[i][r] = st.feedback_rounds();
  }

  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::vector<double> totals(rows[i].totals.begin(), rows[i].totals.end());
    const auto s = summarize(std::move(totals));
    rows[i].mean_total = s.mean;
    rows[i].std_total = s.stddev;
    rows[i].mean_rounds = std::accumulate(rounds[i].begin(), rounds[i].end(), 0.0) / static_cast<double>(repeats);
  }
  return rows;
}

double preparation_hours(double copies, double copy_rate) {
  if (!(copy_rate > 0.0)) throw DomainError("copy rate must be positive");
  if (copies < 0.0) throw DomainError("copies must be >= 0");
  return copies / copy_rate;
}

TimelineReport protocol_timeline(const AdaptiveState& state, double switch_cost_hours, double copy_rate) {
  if (!(copy_rate > 0.0)) throw DomainError("copy rate must be positive");
  if (switch_cost_hours < 0.0) throw DomainError("switch cost must be >= 0");
  TimelineReport rep;
  for (const auto& r : state.history) {
    TimelineRound tr;
    tr.round = r.round;
    tr.copies = std::accumulate(r.increments.begin(), r.increments.end(), std::int64_t{0});
    tr.switches = static_cast<int>(std::count_if(r.increments.begin(), r.increments.end(), [](auto v) { return v > 0; }));
    tr.preparation_hours = preparation_hours(static_cast<double>(tr.copies), copy_rate);
    tr.switching_hours = tr.switches * switch_cost_hours;
    rep.adaptive_hours += tr.preparation_hours + tr.switching_hours;
    rep.adaptive_switches += tr.switches;
    rep.rounds.push_back(tr);
  }
  rep.traditional_switches = static_cast<int>(
      std::count_if(state.cumulative_t.begin(), state.cumulative_t.end(), [](auto v) { return v > 0; }));
  rep.traditional_hours = preparation_hours(static_cast<double>(state.total_copies()), copy_rate) +
                          rep.traditional_switches * switch_cost_hours;
  return rep;
}

}  // namespace qcopies
