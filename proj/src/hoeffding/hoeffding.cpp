#include "qcopies/hoeffding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcopies/errors.hpp"
#include "qcopies/simulator.hpp"

namespace qcopies {
namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("delta must lie in (0, 1)");
}

double variance_max(double lo, double hi) {
  if (lo <= 0.5 && 0.5 <= hi) return 0.25;
  return std::max(lo * (1.0 - lo), hi * (1.0 - hi));
}

double variance_min(double lo, double hi) { return std::min(lo * (1.0 - lo), hi * (1.0 - hi)); }

// Closed-form optimum that tolerates all-zero weights (then every setting
// gets a single copy and a real optimum of zero).
void closed_form(const std::vector<double>& k, double eps, std::vector<double>& real_t,
                 std::vector<std::int64_t>& t) {
  double root_sum = 0.0;
  for (double v : k) root_sum += std::sqrt(v);
  real_t.resize(k.size());
  t.resize(k.size());
  for (std::size_t j = 0; j < k.size(); ++j) {
    real_t[j] = std::sqrt(k[j]) * root_sum / eps;
    t[j] = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(real_t[j] * (1.0 - 1e-12))));
  }
}

CoverageRow make_row(double truth, std::int64_t copies, double delta) {
  CoverageRow row;
  row.copies = copies;
  row.true_value = truth;
  row.h = hoeffding_halfwidth(copies, delta);
  row.lower = truth - row.h;
  row.upper = truth + row.h;
  return row;
}

void finish_row(CoverageRow& row) {
  const auto inside = std::count_if(row.estimates.begin(), row.estimates.end(),
                                    [&](double e) { return e >= row.lower && e <= row.upper; });
  row.inside_fraction = row.estimates.empty() ? 0.0 : static_cast<double>(inside) / row.estimates.size();
}

double estimate_p1(const std::vector<double>& probs, std::int64_t copies, const RngSeed& seed) {
  const auto table = sample_distribution(probs, copies, seed);
  return static_cast<double>(table.counts.front() + table.counts.back()) / static_cast<double>(copies);
}

void check_counts(std::span<const std::int64_t> copy_counts, std::int64_t repeats) {
  if (repeats < 1) throw DomainError("repeats must be >= 1");
  for (auto c : copy_counts)
    if (c < 1) throw DomainError("copy counts must be >= 1");
}

}  // namespace

ConfidenceSpec ConfidenceSpec::uniform(std::size_t settings, double h, double delta) {
  ConfidenceSpec s;
  s.h.assign(settings, h);
  s.delta = delta;
  return s;
}

void ConfidenceSpec::validate() const {
  for (double v : h)
    if (!(v >= 0.0 && v < 1.0)) throw DomainError("each h_j must lie in [0, 1)");
  check_delta(delta);
  if (!t.empty() && t.size() != h.size()) throw SizeError("t and h lengths differ");
}

double failure_probability(std::int64_t t, double h) {
  if (t < 1) throw DomainError("t must be >= 1");
  if (!(h > 0.0 && h < 1.0)) throw DomainError("h must lie in (0, 1)");
  return std::clamp(2.0 * std::exp(-2.0 * static_cast<double>(t) * h * h), 0.0, 1.0);
}

double joint_success(std::span<const std::int64_t> t, std::span<const double> h) {
  if (t.size() != h.size()) throw SizeError("t and h lengths differ");
  double prod = 1.0;
  for (std::size_t j = 0; j < t.size(); ++j) prod *= std::max(0.0, 1.0 - failure_probability(t[j], h[j]));
  return prod;
}

AllocationInterval allocation_interval(const SettingProbabilities& p_hat, const ConfidenceSpec& spec,
                                       double epsilon0) {
  p_hat.validate();
  spec.validate();
  if (spec.h.size() != p_hat.P.size()) throw SizeError("need one h per setting");
  if (!(epsilon0 > 0.0)) throw DomainError("epsilon0 must be positive");

  const std::size_t m = p_hat.P.size();
  const double n2 = static_cast<double>(p_hat.n) * p_hat.n;
  AllocationInterval iv;
  iv.P_minus.resize(m);
  iv.P_plus.resize(m);
  iv.k_minus.resize(m);
  iv.k_plus.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double p = p_hat.P[j], h = spec.h[j];
    if (j == 0) {
      iv.P_minus[j] = std::clamp(p - h, 0.0, 1.0);
      iv.P_plus[j] = std::clamp(p + h, 0.0, 1.0);
    } else {
      const double e_lo = std::clamp(2.0 * (p - h) - 1.0, -1.0, 1.0);
      const double e_hi = std::clamp(2.0 * (p + h) - 1.0, -1.0, 1.0);
      iv.P_minus[j] = (e_lo + 1.0) / 2.0;
      iv.P_plus[j] = (e_hi + 1.0) / 2.0;
    }
    const double scale = j == 0 ? 0.25 : 1.0 / n2;
    iv.k_minus[j] = scale * variance_min(iv.P_minus[j], iv.P_plus[j]);
    iv.k_plus[j] = scale * variance_max(iv.P_minus[j], iv.P_plus[j]);
  }
  const double eps = epsilon0 * epsilon0;
  closed_form(iv.k_minus, eps, iv.real_t_minus, iv.t_minus);
  closed_form(iv.k_plus, eps, iv.real_t_plus, iv.t_plus);
  return iv;
}

std::int64_t required_copies(double h, double delta) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("h must lie in (0, 1)");
  check_delta(delta);
  auto t = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(std::log(2.0 / delta) / (2.0 * h * h))));
  // Guard the ceiling against floating error in either direction.
  while (t > 1 && failure_probability(t - 1, h) <= delta) --t;
  while (failure_probability(t, h) > delta) ++t;
  return t;
}

double hoeffding_halfwidth(std::int64_t t, double delta) {
  if (t < 1) throw DomainError("t must be >= 1");
  check_delta(delta);
  return std::sqrt(std::log(2.0 / delta) / (2.0 * static_cast<double>(t)));
}

std::vector<CoverageRow> coverage_experiment(const DensityMatrix& rho, std::span<const std::int64_t> copy_counts,
                                             double delta, std::int64_t repeats, const RngSeed& rng) {
  check_counts(copy_counts, repeats);
  const auto probs = outcome_probabilities(rho, MeasurementSetting::computational(rho.qubits()));
  const double truth = std::clamp(probs.front() + probs.back(), 0.0, 1.0);
  std::vector<CoverageRow> rows;
  for (auto c : copy_counts) {
    rows.push_back(make_row(truth, c, delta));
    rows.back().estimates.resize(static_cast<std::size_t>(repeats));
  }
  const std::int64_t jobs = static_cast<std::int64_t>(rows.size()) * repeats;
#pragma omp parallel for schedule(dynamic)
  for (std::int64_t job = 0; job < jobs; ++job) {
    const std::size_t c = static_cast<std::size_t>(job / repeats);
    const std::int64_t r = job % repeats;
    rows[c].estimates[r] = estimate_p1(probs, rows[c].copies, rng.child(c).child(r));
  }
  for (auto& row : rows) finish_row(row);
  return rows;
}

std::vector<CoverageRow> coverage_experiment_serial(const DensityMatrix& rho,
                                                    std::span<const std::int64_t> copy_counts, double delta,
                                                    std::int64_t repeats, const RngSeed& rng) {
  check_counts(copy_counts, repeats);
  const auto probs = outcome_probabilities_serial(rho, MeasurementSetting::computational(rho.qubits()));
  const double truth = std::clamp(probs.front() + probs.back(), 0.0, 1.0);
  std::vector<CoverageRow> rows;
  for (std::size_t c = 0; c < copy_counts.size(); ++c) {
    auto row = make_row(truth, copy_counts[c], delta);
    for (std::int64_t r = 0; r < repeats; ++r) row.estimates.push_back(estimate_p1(probs, row.copies, rng.child(c).child(r)));
    finish_row(row);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qcopies
