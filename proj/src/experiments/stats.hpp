#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>

namespace permstab::experiments {

struct Histogram {
  std::map<int, std::uint64_t> counts;

  void add(int value, std::uint64_t c = 1) { counts[value] += c; }
  void merge(const Histogram& other);
  std::uint64_t total() const;
  std::uint64_t count_below(int value) const;
  int mode() const;
};

// Mean and unbiased variance from exact integer sums, rounded once to double.
struct Moments {
  double mean = 0;
  double variance = 0;
  double stderr_mean = 0;
};
Moments moments(const Histogram& h);

// Kolmogorov-Smirnov distance between the law of (X - center)/scale, X ~ h, and a continuous cdf.
double ks_distance(const Histogram& h, double center, double scale, const std::function<double(double)>& cdf);

std::string histogram_csv(const Histogram& h);

}  // namespace permstab::experiments
