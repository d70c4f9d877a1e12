#pragma once

namespace bellrand::nist {

/// Complementary error function.
double erfc(double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Regularized upper incomplete gamma Q(a, x). Power series for x < a + 1,
/// Lentz continued fraction otherwise. Throws DomainError unless a > 0 and
/// x >= 0.
double igamc(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double igam(double a, double x);

}  // namespace bellrand::nist
