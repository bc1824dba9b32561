#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tspcp {

// Relative quality in percent: 100 * (score / ref - 1).
inline double gap(double score, double ref) {
  if (ref == 0.0) throw std::invalid_argument("gap reference must be nonzero");
  return 100.0 * (score / ref - 1.0);
}

// Spread relative to the reference: 100 * sigma / ref.
inline double gap_sigma(double sigma, double ref) {
  if (ref == 0.0) throw std::invalid_argument("gap reference must be nonzero");
  return 100.0 * sigma / ref;
}

inline double mean(const std::vector<double>& xs) {
  double s = 0.0;
  for (const double x : xs) s += x;
  return xs.empty() ? 0.0 : s / static_cast<double>(xs.size());
}

inline double stddev(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double s = 0.0;
  for (const double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size()));
}

}  // namespace tspcp
