// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <vector>

namespace leosim {

/// Nearest-rank percentile: the ceil(q n)-th smallest sample (1-indexed,
/// rank at least 1). Throws std::invalid_argument on empty input or q
/// outside [0, 1].
double percentile(std::vector<double> samples, double q);
/// Same on already sorted input.
double percentile_sorted(const std::vector<double>& sorted, double q);

struct StatSummary {
  double median = 0.0;
  double p5 = 0.0;
  double p95 = 0.0;
  double mean = 0.0;
  std::size_t count = 0;
};

/// Summary of a nonempty sample; the mean is taken over the sorted sample
/// so the result does not depend on input order.
StatSummary summarize(std::vector<double> samples);

}  // namespace leosim
