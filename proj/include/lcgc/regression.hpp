#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "lcgc/errors.hpp"
#include "lcgc/timeseries.hpp"

namespace lcgc {

/// Reciprocal-condition threshold below which a design is declared
/// multicollinear (condition number of the Gram matrix above 1e10).
inline constexpr double kMulticollinearityRcond = 1e-10;

/// Estimated innovation series of the source AR model, defined for
/// t = start..start+size-1 (1-based).
struct ResidualSeries {
    std::vector<double> values;
    int start = 1;

    double at(int t) const { return values[static_cast<std::size_t>(t - start)]; }
    int last() const { return start + static_cast<int>(values.size()) - 1; }
};

/// Which columns enter a design matrix. Column order is deterministic:
/// target lags ascending, then source lags ascending, then the single
/// residual lag.
struct DesignSpec {
    std::vector<int> target_lags;
    std::vector<int> source_lags;
    std::optional<int> xi_lag;
    int window_start = 1;  ///< first 1-based response index t

    int param_count() const {
        return static_cast<int>(target_lags.size() + source_lags.size()) +
               (xi_lag ? 1 : 0);
    }

    static std::vector<int> lags_upto(int l) {
        std::vector<int> v(static_cast<std::size_t>(l));
        for (int i = 0; i < l; ++i) v[static_cast<std::size_t>(i)] = i + 1;
        return v;
    }
};

struct Design {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd response;
    int window_start = 1;
};

struct RegressionFit {
    Eigen::VectorXd coefficients;
    Eigen::VectorXd residuals;
    double rss = 0.0;
    double tss = 0.0;  ///< squared norm of the response (degeneracy scale)
    int n_used = 0;
    int p = 0;
    double rcond = 0.0;  ///< reciprocal condition estimate of X'X
};

/// Rows are t = window_start..T; the response is target_t. Throws
/// SampleSizeError when the window is empty, AlignmentError when the residual
/// series does not cover the window, InvalidArgumentError when the window
/// start does not clear every referenced lag.
Design build_design(const std::vector<double>& target, const std::vector<double>& source,
                    const ResidualSeries* xi_hat, const DesignSpec& spec);

/// Convenience overload: target = pair.x, source = pair.y.
Design build_design(const TimeSeriesPair& pair, const ResidualSeries* xi_hat,
                    const DesignSpec& spec);

/// Least squares by column-pivoted Householder QR; rcond is derived from the
/// triangular factor. Throws MulticollinearityError when rcond falls below
/// kMulticollinearityRcond and SampleSizeError when rows < columns + 1.
RegressionFit fit_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& response);

inline RegressionFit fit_least_squares(const Design& design) {
    return fit_least_squares(design.matrix, design.response);
}

/// xi_hat_t = y_t - sum_i b_i y_{t-i}, defined for t = l_b+1..T, with the
/// b coefficients fit by least squares on the full available window.
ResidualSeries residual_series(const std::vector<double>& y, int l_b);

}  // namespace lcgc
