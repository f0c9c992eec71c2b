#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace graphsel {

inline double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

// Unbiased sample variance (n-1 denominator).
inline double sample_variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("sample_variance: need >= 2 values");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

inline double sample_std(std::span<const double> xs) {
  return std::sqrt(sample_variance(xs));
}

namespace detail {

// Continued fraction for the regularized incomplete beta (Lentz's method).
inline double incbeta_cf(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  constexpr double eps = 1e-15;
  const double qab = a + b, qap = a + 1.0, qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 300; ++m) {
    const int m2 = 2 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace detail

// Regularized incomplete beta function I_x(a, b), accurate to ~1e-14.
inline double incomplete_beta(double a, double b, double x) {
  if (a <= 0.0 || b <= 0.0)
    throw std::invalid_argument("incomplete_beta: a, b must be positive");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(ln_front);
  if (x < (a + 1.0) / (a + b + 2.0)) return front * detail::incbeta_cf(a, b, x) / a;
  return 1.0 - front * detail::incbeta_cf(b, a, 1.0 - x) / b;
}

// CDF of Student's t with dof degrees of freedom.
inline double student_t_cdf(double t, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("student_t_cdf: dof must be positive");
  if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
  const double x = dof / (dof + t * t);
  const double half = 0.5 * incomplete_beta(0.5 * dof, 0.5, x);
  return t >= 0.0 ? 1.0 - half : half;
}

struct WelchResult {
  double t = 0.0;
  double dof = 1.0;
  double p_two_sided = 1.0;
  double p_greater = 0.5;  // one-sided p for H1: mean(a) > mean(b)
};

// Two-sample Welch t-test (unequal variances, Welch-Satterthwaite dof).
// Degenerate zero-variance samples: equal means are treated as
// non-significant, unequal means as maximally significant.
inline WelchResult welch_t_test(std::span<const double> a, std::span<const double> b) {
  if (a.size() < 2 || b.size() < 2)
    throw std::invalid_argument("welch_t_test: each sample needs >= 2 values");
  const double m1 = mean(a), m2 = mean(b);
  const double va = sample_variance(a) / static_cast<double>(a.size());
  const double vb = sample_variance(b) / static_cast<double>(b.size());
  const double se2 = va + vb;

  WelchResult r;
  if (se2 == 0.0) {
    if (m1 == m2) return r;  // t=0, p=1
    r.t = m1 > m2 ? std::numeric_limits<double>::infinity()
                  : -std::numeric_limits<double>::infinity();
    r.p_two_sided = 0.0;
    r.p_greater = m1 > m2 ? 0.0 : 1.0;
    return r;
  }

  r.t = (m1 - m2) / std::sqrt(se2);
  r.dof = se2 * se2 /
          (va * va / static_cast<double>(a.size() - 1) +
           vb * vb / static_cast<double>(b.size() - 1));
  r.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::abs(r.t), r.dof));
  r.p_greater = 1.0 - student_t_cdf(r.t, r.dof);
  return r;
}

}  // namespace graphsel
