#pragma once

namespace imsel {

/// Regularized incomplete beta function I_x(a, b), evaluated by the
/// Lentz continued fraction. Accurate to ~1e-14 for the argument ranges
/// used here.
double regularized_incomplete_beta(double a, double b, double x);

/// CDF of the Student-t distribution with nu >= 1 degrees of freedom.
/// Used as the exact univariate reference when checking the Monte Carlo
/// max-norm distribution in the p = 1 case.
double univariate_t_cdf(double x, int nu);

}  // namespace imsel
