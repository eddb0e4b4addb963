#include "experiments/stats.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cmath>

namespace permstab::experiments {

void Histogram::merge(const Histogram& other) {
  for (const auto& [v, c] : other.counts) counts[v] += c;
}

std::uint64_t Histogram::total() const {
  std::uint64_t t = 0;
  for (const auto& [v, c] : counts) t += c;
  return t;
}

std::uint64_t Histogram::count_below(int value) const {
  std::uint64_t t = 0;
  for (const auto& [v, c] : counts) {
    if (v >= value) break;
    t += c;
  }
  return t;
}

int Histogram::mode() const {
  int best = 0;
  std::uint64_t bc = 0;
  for (const auto& [v, c] : counts)
    if (c > bc) {
      bc = c;
      best = v;
    }
  return best;
}

Moments moments(const Histogram& h) {
  mpz_class n = 0, s1 = 0, s2 = 0;
  for (const auto& [v, c] : h.counts) {
    mpz_class cc(static_cast<unsigned long>(c)), vv(static_cast<long>(v));
    n += cc;
    s1 += cc * vv;
    s2 += cc * vv * vv;
  }
  Moments m;
  if (n == 0) return m;
  mpq_class mean(s1, n);
  mean.canonicalize();
  m.mean = mean.get_d();
  if (n > 1) {
    mpq_class var(s2 * n - s1 * s1, n * (n - 1));
    var.canonicalize();
    m.variance = var.get_d();
    m.stderr_mean = std::sqrt(m.variance / n.get_d());
  }
  return m;
}

double ks_distance(const Histogram& h, double center, double scale, const std::function<double(double)>& cdf) {
  const double total = static_cast<double>(h.total());
  if (total == 0) return 0;
  double below = 0, d = 0;
  std::uint64_t acc = 0;
  for (const auto& [v, c] : h.counts) {
    double z = (v - center) / scale;
    double f = cdf(z);
    d = std::max(d, std::abs(below - f));
    acc += c;
    below = acc / total;
    d = std::max(d, std::abs(below - f));
  }
  return d;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "value,count\n";
  for (const auto& [v, c] : h.counts) out += std::to_string(v) + "," + std::to_string(c) + "\n";
  return out;
}

}  // namespace permstab::experiments
