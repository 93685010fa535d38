#include <algorithm>
#include <cmath>
#include <numeric>

#include "qcopies/errors.hpp"
#include "qcopies/simulator.hpp"
#include "sampler.hpp"

namespace qcopies {
namespace detail {

OutcomeSampler::OutcomeSampler(std::span<const double> probs, SamplingMethod method) : method_(method) {
  if (probs.empty()) throw SizeError("empty outcome distribution");
  double total = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw DomainError("outcome probabilities must be finite and >= 0");
    total += p;
  }
  if (!(total > 0.0)) throw DomainError("outcome distribution has zero mass");

  cdf_.resize(probs.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i] / total;
    cdf_[i] = acc;
  }
  cdf_.back() = 1.0;

  if (method_ == SamplingMethod::Alias) {
    const std::size_t m = probs.size();
    keep_.assign(m, 1.0);
    alias_.resize(m);
    std::iota(alias_.begin(), alias_.end(), 0U);
    std::vector<double> scaled(m);
    std::vector<std::uint32_t> small, large;
    for (std::size_t i = 0; i < m; ++i) {
      scaled[i] = probs[i] / total * static_cast<double>(m);
      (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
    }
    while (!small.empty() && !large.empty()) {
      const auto s = small.back();
      small.pop_back();
      const auto l = large.back();
      keep_[s] = scaled[s];
      alias_[s] = l;
      scaled[l] -= 1.0 - scaled[s];
      if (scaled[l] < 1.0) {
        large.pop_back();
        small.push_back(l);
      }
    }
    // Leftovers are 1 up to rounding.
    for (auto i : small) keep_[i] = 1.0;
    for (auto i : large) keep_[i] = 1.0;
  }
}

std::size_t OutcomeSampler::draw(Rng& r) const {
  if (method_ == SamplingMethod::Alias) {
    const auto i = static_cast<std::size_t>(r.below(keep_.size()));
    return r.uniform() < keep_[i] ? i : alias_[i];
  }
  // The unit interval is cut into one sub-interval per outcome; the
  // outcome is the one containing the uniform draw.
  const double u = r.uniform();
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf_.begin()), cdf_.size() - 1);
}

}  // namespace detail

std::vector<double> CountTable::frequencies() const {
  std::vector<double> f(counts.size(), 0.0);
  if (total_copies <= 0) return f;
  for (std::size_t i = 0; i < counts.size(); ++i) f[i] = static_cast<double>(counts[i]) / total_copies;
  return f;
}

void CountTable::validate() const {
  std::int64_t sum = 0;
  for (auto c : counts) {
    if (c < 0) throw DomainError("negative event count");
    sum += c;
  }
  if (sum != total_copies) throw DomainError("counts do not sum to total_copies");
}

HistogramSpec HistogramSpec::with_bins(int bins, double lo, double hi) {
  if (bins < 1) throw DomainError("histogram needs at least one bin");
  if (!(hi > lo)) throw DomainError("histogram range must be nonempty");
  HistogramSpec h;
  h.bins = bins;
  h.lo = lo;
  h.hi = hi;
  h.events.assign(bins, 0);
  return h;
}

void HistogramSpec::reset() { events.assign(static_cast<std::size_t>(bins), 0); }

int HistogramSpec::bin_of(double value) const {
  const double x = (value - lo) / (hi - lo) * bins;
  if (!(x >= 0.0)) return 0;  // also catches NaN
  return std::min(static_cast<int>(x), bins - 1);
}

void HistogramSpec::add(double value) {
  if (events.size() != static_cast<std::size_t>(bins)) reset();
  ++events[static_cast<std::size_t>(bin_of(value))];
}

std::int64_t HistogramSpec::total() const { return std::accumulate(events.begin(), events.end(), std::int64_t{0}); }

CountTable sample_distribution(std::span<const double> probs, std::int64_t copies, const RngSeed& rng,
                               SamplingMethod method) {
  if (copies < 0) throw DomainError("copies must be >= 0");
  const detail::OutcomeSampler sampler(probs, method);
  CountTable table;
  table.total_copies = copies;
  table.counts.assign(probs.size(), 0);
  Rng r(rng);
  for (std::int64_t c = 0; c < copies; ++c) ++table.counts[sampler.draw(r)];
  return table;
}

CountTable sample_setting(const DensityMatrix& rho, const MeasurementSetting& s, std::int64_t copies,
                          const RngSeed& rng, SamplingMethod method) {
  if (rho.qubits() != s.qubits()) throw SizeError("setting and state qubit counts differ");
  if (copies < 0) throw DomainError("copies must be >= 0");
  if (copies == 0) {
    CountTable empty;
    empty.counts.assign(s.outcome_count(), 0);
    return empty;
  }
  const auto probs = outcome_probabilities(rho, s);
  return sample_distribution(probs, copies, rng, method);
}

FidelityEstimate estimate_fidelity(std::span<const CountTable> tables, const WitnessDecomposition& wd) {
  if (tables.size() != wd.size()) throw SizeError("need one count table per setting");
  FidelityEstimate est;
  est.p_hat.n = wd.n;
  std::vector<std::int64_t> totals;
  for (std::size_t j = 0; j < tables.size(); ++j) {
    const auto& t = tables[j];
    if (t.total_copies <= 0) throw DomainError("count table " + std::to_string(j) + " is empty");
    t.validate();
    const auto f = t.frequencies();
    est.p_hat.P.push_back(std::clamp(aggregate_p(wd.settings[j], f), 0.0, 1.0));
    totals.push_back(t.total_copies);
  }
  est.fidelity = fidelity_from_probabilities(est.p_hat);
  est.delta_f = delta_f(est.p_hat, totals);
  return est;
}

TrialSummary summarize(std::vector<double> estimates) {
  TrialSummary s;
  s.trials = static_cast<std::int64_t>(estimates.size());
  if (!estimates.empty()) {
    s.mean = std::accumulate(estimates.begin(), estimates.end(), 0.0) / estimates.size();
    if (estimates.size() > 1) {
      double ss = 0.0;
      for (double e : estimates) ss += (e - s.mean) * (e - s.mean);
      s.stddev = std::sqrt(ss / (estimates.size() - 1));
    }
  }
  s.estimates = std::move(estimates);
  return s;
}

}  // namespace qcopies
