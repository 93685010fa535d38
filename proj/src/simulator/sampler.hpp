#pragma once

// Internal: precomputed outcome samplers shared by the simulator entry points.

#include <cstdint>
#include <span>
#include <vector>

#include "qcopies/rng.hpp"
#include "qcopies/simulator.hpp"

namespace qcopies::detail {

class OutcomeSampler {
 public:
  OutcomeSampler(std::span<const double> probs, SamplingMethod method);

  std::size_t outcomes() const { return cdf_.size(); }
  std::size_t draw(Rng& r) const;

 private:
  SamplingMethod method_;
  std::vector<double> cdf_;
  // alias tables (Vose)
  std::vector<double> keep_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace qcopies::detail
