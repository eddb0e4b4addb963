#include "core/closed_forms.hpp"

#include <cmath>
#include <vector>

#include "core/error.hpp"

namespace permstab {

ExactInt fib(long m) {
  ExactInt f;
  unsigned long a = static_cast<unsigned long>(m < 0 ? -m : m);
  mpz_fib_ui(f.get_mpz_t(), a);
  if (m < 0 && a % 2 == 0) f = -f;
  return f;
}

ExactInt catalan(int m) {
  if (m < 0) fail(ErrorCode::OutOfRange, "catalan index must be >= 0");
  ExactInt c;
  mpz_bin_uiui(c.get_mpz_t(), 2 * static_cast<unsigned long>(m), static_cast<unsigned long>(m));
  return c / (m + 1);
}

ExactInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  ExactInt c;
  mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return c;
}

ExactRational harmonic(int n) {
  ExactRational h = 0;
  for (int k = 1; k <= n; ++k) h += ExactRational(1, k);
  return h;
}

ExactInt pow2(int e) {
  ExactInt p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e));
  return p;
}

static void check_nj(int n, int j) {
  if (n < 1 || j < 1 || j > n) fail(ErrorCode::OutOfRange, "need 1 <= j <= n");
}

ExactInt boolean_record_count(int n, int j) {
  check_nj(n, j);
  return fib(2L * n - 2) - fib(2L * j - 4) * fib(2L * (n - j) - 1);
}

ExactInt boolean_record_count_product(int n, int j) {
  check_nj(n, j);
  long a = 2L * j, b = 2L * n - 2L * j;
  return fib(a - 3) * fib(b + 1) + (fib(a - 1) - fib(a - 3)) * (fib(b + 1) - fib(b - 1));
}

double boolean_record_prob_phi(int n, int j) {
  check_nj(n, j);
  const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
  double num = 2 * std::pow(phi, 2 * n - 2) + 2 * std::pow(phi, 2 - 2 * n) + std::pow(phi, 2 * n - 4 * j + 3) -
               std::pow(phi, 4 * j - 2 * n - 3);
  double den = std::sqrt(5.0) * (std::pow(phi, 2 * n - 1) + std::pow(phi, 1 - 2 * n));
  return num / den;
}

ExactRational record_prob(Family family, int n, int j) {
  check_nj(n, j);
  switch (family) {
    case Family::Uniform:
      return ExactRational(1, j);
    case Family::Grassmannian: {
      ExactInt s = 0;
      for (int k = j; k <= n; ++k) s += binomial(n, k);
      ExactRational r(s + pow2(j - 1) - n, pow2(n) - n);
      r.canonicalize();
      return r;
    }
    case Family::Boolean: {
      ExactRational r(boolean_record_count(n, j), fib(2L * n - 1));
      r.canonicalize();
      return r;
    }
  }
  fail(ErrorCode::Unsupported, "unknown family");
}

ExtensionCounts extension_counts(int m) {
  if (m < 0) fail(ErrorCode::OutOfRange, "extension_counts needs m >= 0");
  return {fib(2L * m + 1), fib(2L * m + 2)};
}

ExtensionCounts extension_counts_by_matrix(int m) {
  if (m < 0) fail(ErrorCode::OutOfRange, "extension_counts needs m >= 0");
  ExactInt a = 1, b = 1;
  for (int s = 0; s < m; ++s) {
    ExactInt na = a + b, nb = a + 2 * b;
    a = na;
    b = nb;
  }
  return {a, b};
}

KernelRow kernel(int n, int t, int state) {
  if (n < 2 || t < 0 || t > n - 2) fail(ErrorCode::OutOfRange, "kernel needs 0 <= t <= n-2");
  if (state != 0 && state != 1) fail(ErrorCode::InvalidArgument, "kernel state must be 0 or 1");
  auto u = extension_counts(n - t - 2);
  ExactInt one = state == 0 ? ExactInt(u.u1) : ExactInt(2 * u.u1);
  ExactInt total = u.u0 + one;
  KernelRow row{ExactRational(u.u0, total), ExactRational(one, total)};
  row.p0.canonicalize();
  row.p1.canonicalize();
  return row;
}

ExactRational dobrushin_term(int n, int t) {
  auto a = kernel(n, t, 0), b = kernel(n, t, 1);
  ExactRational d = a.p0 - b.p0;
  return abs(d);
}

ExactRational dobrushin_delta(int n) {
  if (n < 2) fail(ErrorCode::OutOfRange, "dobrushin_delta needs n >= 2");
  ExactRational best = 0;
  for (int t = 0; t <= n - 2; ++t) {
    ExactRational d = dobrushin_term(n, t);
    if (d > best) best = d;
  }
  return best;
}

ExactInt catalan_fiber(std::span<const int> record_set, int n) {
  if (record_set.empty() || record_set[0] != 1) fail(ErrorCode::InvalidArgument, "record set must contain 1");
  ExactInt prod = 1;
  for (size_t t = 0; t < record_set.size(); ++t) {
    int next = t + 1 < record_set.size() ? record_set[t + 1] : n + 1;
    if (next <= record_set[t] || next > n + 1) fail(ErrorCode::InvalidArgument, "record set must be sorted within [n]");
    prod *= catalan(next - record_set[t] - 1);
  }
  return prod;
}

ExactRational grassmannian_tv(int n) {
  ExactInt p = pow2(n);
  ExactRational r(ExactInt(n) * (p - n - 1), p * (p - n));
  r.canonicalize();
  return r;
}

ExactRational uniform_expected_y(int n, int i) {
  if (i < 1 || i > n + 1) fail(ErrorCode::OutOfRange, "need 1 <= i <= n+1");
  return ExactRational(2 * n - i + 1) - 2 * harmonic(n) + 2 * harmonic(i - 1);
}

ExactRational grassmannian_expected_max_value(int n) {
  ExactRational r(1, pow2(n));
  return ExactRational(n - 1) + r;
}

ExactRational grassmannian_expected_max_descent(int n) {
  ExactInt total = pow2(n);
  ExactInt cdf_prev = 0, cdf = 0, acc = 0;
  for (int k = 0; k <= n; ++k) {
    cdf = cdf_prev + binomial(n, k);
    acc += ExactInt(k) * (cdf * cdf - cdf_prev * cdf_prev);
    cdf_prev = cdf;
  }
  ExactRational r(acc, total * total);
  r.canonicalize();
  return r;
}

ExactRational boolean_terminal_mean(int n) {
  if (n < 2) fail(ErrorCode::OutOfRange, "boolean_terminal_mean needs n >= 2");
  ExactRational r(fib(2L * n - 3), fib(2L * n - 1));
  r.canonicalize();
  return ExactRational(n + 1) - 2 * r;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double limit_cdf_grassmannian(double t) {
  double p = normal_cdf(-2.0 * t);
  return 1.0 - p * p;
}

MeanPrediction asymptotic_mean(Family family, int n) {
  if (n < 2) fail(ErrorCode::OutOfRange, "asymptotic_mean needs n >= 2");
  const double dn = n;
  switch (family) {
    case Family::Uniform: {
      double base = 2 * dn - 2 * std::log(dn) - 2 * kEulerGamma;
      double lo = base + 1.0, hi = base + kPi * kPi / 6.0;
      return {(lo + hi) / 2, lo, hi};
    }
    case Family::Grassmannian: {
      double v = 1.5 * dn - std::sqrt(dn) / (2 * std::sqrt(kPi)) - 2;
      return {v, v, v};
    }
    case Family::Boolean:
      return {dn + 3, dn - 1.0 / 3.0, dn + 3};
  }
  fail(ErrorCode::Unsupported, "unknown family");
}

}  // namespace permstab
