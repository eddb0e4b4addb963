#pragma once

#include <gmpxx.h>

#include <span>

namespace permstab {

using ExactInt = mpz_class;
using ExactRational = mpq_class;

enum class Family { Uniform, Grassmannian, Boolean };

// F_1 = F_2 = 1, F_{-m} = (-1)^{m+1} F_m.
ExactInt fib(long m);
ExactInt catalan(int m);
ExactInt binomial(int n, int k);
ExactRational harmonic(int n);
ExactInt pow2(int e);

ExactRational record_prob(Family family, int n, int j);

// N(n,j): number of Boolean permutations of size n with a record at j.
ExactInt boolean_record_count(int n, int j);
// The same count as F_{2j-3}F_{2n-2j+1} + (F_{2j-1}-F_{2j-3})(F_{2n-2j+1}-F_{2n-2j-1}).
ExactInt boolean_record_count_product(int n, int j);
double boolean_record_prob_phi(int n, int j);

struct ExtensionCounts {
  ExactInt u0;
  ExactInt u1;
};
ExtensionCounts extension_counts(int m);
ExtensionCounts extension_counts_by_matrix(int m);

struct KernelRow {
  ExactRational p0;
  ExactRational p1;
};
// Row K_t(state, .) of the presence chain for tag words of length n-1.
KernelRow kernel(int n, int t, int state);
ExactRational dobrushin_term(int n, int t);
ExactRational dobrushin_delta(int n);

ExactInt catalan_fiber(std::span<const int> record_set, int n);

ExactRational grassmannian_tv(int n);
ExactRational uniform_expected_y(int n, int i);
ExactRational grassmannian_expected_max_value(int n);
ExactRational grassmannian_expected_max_descent(int n);
ExactRational boolean_terminal_mean(int n);

double normal_cdf(double x);
double limit_cdf_grassmannian(double t);

struct MeanPrediction {
  double value;
  double lower;
  double upper;
};
MeanPrediction asymptotic_mean(Family family, int n);

constexpr double kEulerGamma = 0.57721566490153286061;
constexpr double kPi = 3.14159265358979323846;

}  // namespace permstab
