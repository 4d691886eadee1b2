#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lcgc/causality.hpp"
#include "lcgc/regression.hpp"
#include "lcgc/timeseries.hpp"

namespace lcgc {

/// BIC of one candidate fit.
struct BicValue {
    double bic = 0.0;
    int lag = 0;     ///< the candidate lag this fit belongs to
    int p = 0;
    int n_used = 0;
};

/// n log(rss/n) + p log(n) with n = fit.n_used and the dispersion estimated
/// from the data. Throws DegenerateError when rss == 0.
BicValue bic(const RegressionFit& fit, int lag);

enum class Term { interaction, noise_corr };

std::string to_string(Term term);

/// Terms already in the model during a lag search or test.
struct BaseTerms {
    int l_a = 1;
    std::optional<int> l_c;    ///< adopted interaction block, if any
    std::optional<int> l_eta;  ///< adopted noise-correlation lag, if any
};

struct LagSearchResult {
    std::optional<int> lag;           ///< minimum-BIC candidate, if any fit succeeded
    std::optional<BicValue> best;
    bool collinearity_stop = false;   ///< search stopped early on multicollinearity
    std::vector<BicValue> candidates; ///< successfully evaluated candidates, ascending lag
};

/// BIC search over candidate lags 1..l_search_max. For `interaction` the
/// candidate is l_c (y lags enter as a block 1..l_c); for `noise_corr` it is
/// l_eta (a single xi_hat column). Each candidate is fit on the window induced
/// by its own l_max. Ties break toward the smaller lag; multicollinearity
/// stops the search and returns the best lag found so far.
LagSearchResult search_lag(const TimeSeriesPair& pair, const ResidualSeries* xi_hat, Term term,
                           const BaseTerms& base, int l_search_max = 6);

/// One hypothesis test in a stepwise run.
struct TrailRecord {
    Term term = Term::interaction;
    int lag = 0;
    double p_value = 1.0;
    double threshold = 0.0;
    bool adopted = false;
};

struct StepwiseDecision {
    bool interaction_detected = false;
    bool noise_corr_detected = false;
    std::optional<int> selected_l_c;    ///< set when the interaction is adopted
    std::optional<int> selected_l_eta;  ///< set when the noise correlation is adopted
    std::vector<TrailRecord> p_value_trail;
    bool aborted_for_collinearity = false;
};

/// Stepwise variable-increasing procedure over the two candidate terms with a
/// Holm step-down threshold schedule: search both terms' lags by BIC against
/// the x-lags-only base, test each, adopt the smaller p-value if it clears
/// fwer/2 (noise correlation first on an exact tie), then re-search and test
/// the other term under the adopted model at the full fwer.
StepwiseDecision stepwise_decide(const TimeSeriesPair& pair, int l_a, int l_b,
                                 double fwer = 0.05, int l_search_max = 6);

/// Baseline procedure: BIC-select l_c for the y-lag block, then run the
/// normal Granger test at level alpha (single test, no correction).
StepwiseDecision stepwise_decide_normal(const TimeSeriesPair& pair, int l_a,
                                        double alpha = 0.05, int l_search_max = 6);

}  // namespace lcgc
