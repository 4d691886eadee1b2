#pragma once

namespace lcgc {

/// Degrees of freedom of an F distribution.
struct FParams {
    int d1;  ///< numerator dof, >= 1
    int d2;  ///< denominator dof, >= 1
};

/// Regularized incomplete beta function I_x(a, b), evaluated by the modified
/// Lentz continued fraction with the usual symmetry switch. Absolute accuracy
/// is driven well below 1e-10.
double regularized_incomplete_beta(double a, double b, double x);

/// Regularized lower incomplete gamma P(a, x) (series for x < a+1, continued
/// fraction otherwise).
double regularized_lower_gamma(double a, double x);

/// F distribution CDF. Throws DomainError for x < 0 or invalid dof.
double f_cdf(double x, FParams params);

/// F distribution density (used by the quantile's Newton polish).
double f_pdf(double x, FParams params);

/// Inverse F CDF for p in (0, 1): bracketed bisection plus Newton refinement;
/// round-trips through f_cdf to well under 1e-8.
double f_quantile(double p, FParams params);

/// Chi-square CDF with `dof` degrees of freedom. Throws DomainError on x < 0.
double chi2_cdf(double x, int dof);

}  // namespace lcgc
