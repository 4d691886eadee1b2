#include "lcgc/regression.hpp"

#include <algorithm>
#include <string>

namespace lcgc {

Design build_design(const std::vector<double>& target, const std::vector<double>& source,
                    const ResidualSeries* xi_hat, const DesignSpec& spec) {
    const int T = static_cast<int>(target.size());
    if (source.size() != target.size()) {
        throw InvalidArgumentError("target and source series must have equal length");
    }
    if (static_cast<bool>(spec.xi_lag) != (xi_hat != nullptr)) {
        throw InvalidArgumentError("residual series must be supplied iff a residual lag is set");
    }

    for (int lag : spec.target_lags) {
        if (lag < 1) throw InvalidArgumentError("lags must be >= 1");
        if (spec.window_start <= lag) {
            throw InvalidArgumentError("window start must exceed every referenced lag");
        }
    }
    for (int lag : spec.source_lags) {
        if (lag < 1) throw InvalidArgumentError("lags must be >= 1");
        if (spec.window_start <= lag) {
            throw InvalidArgumentError("window start must exceed every referenced lag");
        }
    }
    if (spec.xi_lag) {
        if (*spec.xi_lag < 1) throw InvalidArgumentError("residual lag must be >= 1");
        if (spec.window_start - *spec.xi_lag < xi_hat->start) {
            throw AlignmentError("residual series starts after the first window row needs it");
        }
        if (T - *spec.xi_lag > xi_hat->last()) {
            throw AlignmentError("residual series ends before the last window row needs it");
        }
    }

    const int rows = T - spec.window_start + 1;
    if (rows < 1) {
        throw SampleSizeError("fit window is empty: T = " + std::to_string(T) +
                              ", window start = " + std::to_string(spec.window_start));
    }
    const int p = spec.param_count();

    Design d;
    d.window_start = spec.window_start;
    d.matrix.resize(rows, p);
    d.response.resize(rows);
    for (int r = 0; r < rows; ++r) {
        const int t = spec.window_start + r;  // 1-based
        int col = 0;
        for (int lag : spec.target_lags) {
            d.matrix(r, col++) = target[static_cast<std::size_t>(t - lag - 1)];
        }
        for (int lag : spec.source_lags) {
            d.matrix(r, col++) = source[static_cast<std::size_t>(t - lag - 1)];
        }
        if (spec.xi_lag) {
            d.matrix(r, col++) = xi_hat->at(t - *spec.xi_lag);
        }
        d.response(r) = target[static_cast<std::size_t>(t - 1)];
    }
    return d;
}

Design build_design(const TimeSeriesPair& pair, const ResidualSeries* xi_hat,
                    const DesignSpec& spec) {
    return build_design(pair.x(), pair.y(), xi_hat, spec);
}

RegressionFit fit_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& response) {
    const int n = static_cast<int>(design.rows());
    const int p = static_cast<int>(design.cols());
    if (response.size() != n) {
        throw InvalidArgumentError("design and response row counts differ");
    }
    if (p < 1) {
        throw InvalidArgumentError("design must have at least one column");
    }
    if (n < p + 1) {
        throw SampleSizeError("least squares needs at least p + 1 rows (n = " +
                              std::to_string(n) + ", p = " + std::to_string(p) + ")");
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
    const Eigen::VectorXd rdiag =
        qr.matrixR().topLeftCorner(p, p).diagonal().cwiseAbs();
    const double dmax = rdiag.maxCoeff();
    const double dmin = rdiag.minCoeff();
    const double ratio = dmax > 0.0 ? dmin / dmax : 0.0;
    const double rcond = ratio * ratio;  // Gram-matrix conditioning
    if (!(rcond >= kMulticollinearityRcond)) {
        throw MulticollinearityError(
            rcond, "design is multicollinear (Gram rcond = " + std::to_string(rcond) + ")");
    }

    RegressionFit fit;
    fit.coefficients = qr.solve(response);
    fit.residuals = response - design * fit.coefficients;
    fit.rss = fit.residuals.squaredNorm();
    fit.tss = response.squaredNorm();
    fit.n_used = n;
    fit.p = p;
    fit.rcond = rcond;
    return fit;
}

ResidualSeries residual_series(const std::vector<double>& y, int l_b) {
    if (l_b < 1) {
        throw InvalidArgumentError("l_b must be >= 1");
    }
    const int T = static_cast<int>(y.size());
    if (T <= l_b + 1) {
        throw SampleSizeError("residual series needs T > l_b + 1");
    }
    DesignSpec spec;
    spec.target_lags = DesignSpec::lags_upto(l_b);
    spec.window_start = l_b + 1;
    const Design d = build_design(y, y, nullptr, spec);
    const RegressionFit fit = fit_least_squares(d);

    ResidualSeries xi;
    xi.start = l_b + 1;
    xi.values.assign(fit.residuals.data(), fit.residuals.data() + fit.residuals.size());
    return xi;
}

}  // namespace lcgc
