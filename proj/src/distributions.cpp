#include "lcgc/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lcgc/errors.hpp"

namespace lcgc {

namespace {

double log_beta(double a, double b) {
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// Continued fraction for the incomplete beta function (modified Lentz).
/// Converges quickly for x < (a+1)/(a+b+2); callers apply the symmetry
/// relation outside that range.
double beta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr double eps = 1e-16;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h;
}

void check_f_params(FParams params) {
    if (params.d1 < 1 || params.d2 < 1) {
        throw DomainError("F distribution requires d1 >= 1 and d2 >= 1");
    }
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw DomainError("incomplete beta requires a > 0 and b > 0");
    }
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("incomplete beta requires x in [0, 1]");
    }
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_bt = a * std::log(x) + b * std::log1p(-x) - log_beta(a, b);
    const double bt = std::exp(ln_bt);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return bt * beta_cf(a, b, x) / a;
    }
    return 1.0 - bt * beta_cf(b, a, 1.0 - x) / b;
}

double regularized_lower_gamma(double a, double x) {
    if (!(a > 0.0)) {
        throw DomainError("incomplete gamma requires a > 0");
    }
    if (x < 0.0) {
        throw DomainError("incomplete gamma requires x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) {
        // series for P(a, x)
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int n = 1; n < 1000; ++n) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
        }
        return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
    // continued fraction for Q(a, x)
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    const double q = std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
    return 1.0 - q;
}

double f_cdf(double x, FParams params) {
    check_f_params(params);
    if (x < 0.0) {
        throw DomainError("f_cdf requires x >= 0");
    }
    if (x == 0.0) return 0.0;
    if (std::isinf(x)) return 1.0;
    const double d1 = params.d1;
    const double d2 = params.d2;
    // u = d1 x / (d1 x + d2), written to avoid overflow of d1 * x
    const double u = x / (x + d2 / d1);
    return regularized_incomplete_beta(0.5 * d1, 0.5 * d2, std::min(u, 1.0));
}

double f_pdf(double x, FParams params) {
    check_f_params(params);
    if (x <= 0.0) return 0.0;
    const double d1 = params.d1;
    const double d2 = params.d2;
    const double ln_pdf = 0.5 * d1 * std::log(d1 / d2) + (0.5 * d1 - 1.0) * std::log(x) -
                          0.5 * (d1 + d2) * std::log1p(d1 * x / d2) -
                          log_beta(0.5 * d1, 0.5 * d2);
    return std::exp(ln_pdf);
}

double f_quantile(double p, FParams params) {
    check_f_params(params);
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("f_quantile requires p in (0, 1)");
    }
    // bracket
    double lo = 0.0;
    double hi = 1.0;
    while (f_cdf(hi, params) < p) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) {
            throw DomainError("f_quantile failed to bracket the root");
        }
    }
    // bisect into a narrow interval
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (f_cdf(mid, params) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish; fall back to the bracket midpoint if a step escapes it
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 20; ++i) {
        const double err = f_cdf(x, params) - p;
        const double dens = f_pdf(x, params);
        if (dens <= 0.0) break;
        double step = err / dens;
        double next = x - step;
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (err > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        if (std::fabs(next - x) <= 1e-14 * std::max(1.0, std::fabs(x))) {
            x = next;
            break;
        }
        x = next;
    }
    return x;
}

double chi2_cdf(double x, int dof) {
    if (dof < 1) {
        throw DomainError("chi2_cdf requires dof >= 1");
    }
    if (x < 0.0) {
        throw DomainError("chi2_cdf requires x >= 0");
    }
    if (x == 0.0) return 0.0;
    return regularized_lower_gamma(0.5 * dof, 0.5 * x);
}

}  // namespace lcgc
