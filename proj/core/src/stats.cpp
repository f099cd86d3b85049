// SPDX-License-Identifier: Apache-2.0
#include "leosim/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leosim {

double percentile_sorted(const std::vector<double>& sorted, double q) {
  if (sorted.empty()) throw std::invalid_argument("percentile: empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile: q outside [0, 1]");
  const double n = static_cast<double>(sorted.size());
  // The small guard keeps q*n that should be an integer (0.95 * 100) from
  // rounding up a rank.
  auto rank = static_cast<std::size_t>(std::ceil(q * n - 1e-9));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

double percentile(std::vector<double> samples, double q) {
  std::sort(samples.begin(), samples.end());
  return percentile_sorted(samples, q);
}

StatSummary summarize(std::vector<double> samples) {
  if (samples.empty()) throw std::invalid_argument("summarize: empty sample");
  std::sort(samples.begin(), samples.end());
  StatSummary s;
  s.count = samples.size();
  s.median = percentile_sorted(samples, 0.5);
  s.p5 = percentile_sorted(samples, 0.05);
  s.p95 = percentile_sorted(samples, 0.95);
  long double acc = 0.0L;
  for (double x : samples) acc += x;
  s.mean = static_cast<double>(acc / samples.size());
  return s;
}

}  // namespace leosim
