#include "lcgc/selection.hpp"

#include <algorithm>
#include <cmath>

namespace lcgc {

BicValue bic(const RegressionFit& fit, int lag) {
    if (!(fit.rss > 1e-20 * fit.tss) || !(fit.rss > 0.0)) {
        throw DegenerateError("BIC undefined for zero residual sum of squares");
    }
    const double n = fit.n_used;
    BicValue v;
    v.bic = n * std::log(fit.rss / n) + fit.p * std::log(n);
    v.lag = lag;
    v.p = fit.p;
    v.n_used = fit.n_used;
    return v;
}

std::string to_string(Term term) {
    return term == Term::interaction ? "interaction" : "noise_corr";
}

LagSearchResult search_lag(const TimeSeriesPair& pair, const ResidualSeries* xi_hat, Term term,
                           const BaseTerms& base, int l_search_max) {
    if (l_search_max < 1) {
        throw InvalidArgumentError("l_search_max must be >= 1");
    }
    if (base.l_a < 1) {
        throw InvalidArgumentError("l_a must be >= 1");
    }
    const bool needs_xi = term == Term::noise_corr || base.l_eta.has_value();
    if (needs_xi && xi_hat == nullptr) {
        throw InvalidArgumentError("residual series required for a noise-correlation term");
    }
    const int l_b = needs_xi ? xi_hat->start - 1 : 0;

    LagSearchResult result;
    for (int cand = 1; cand <= l_search_max; ++cand) {
        DesignSpec spec;
        spec.target_lags = DesignSpec::lags_upto(base.l_a);
        int l_c = 0;
        std::optional<int> l_eta;
        if (term == Term::interaction) {
            l_c = cand;
            l_eta = base.l_eta;
        } else {
            l_c = base.l_c.value_or(0);
            l_eta = cand;
        }
        if (l_c > 0) spec.source_lags = DesignSpec::lags_upto(l_c);
        spec.xi_lag = l_eta;
        const int xi_reach = l_eta ? l_b + *l_eta : 0;
        spec.window_start = std::max({base.l_a, l_c, xi_reach}) + 1;

        try {
            const RegressionFit fit =
                fit_least_squares(build_design(pair, l_eta ? xi_hat : nullptr, spec));
            const BicValue v = bic(fit, cand);
            result.candidates.push_back(v);
            if (!result.best || v.bic < result.best->bic) {
                result.best = v;
                result.lag = cand;
            }
        } catch (const MulticollinearityError&) {
            result.collinearity_stop = true;
            break;
        }
    }
    return result;
}

namespace {

TrailRecord make_record(Term term, int lag, double p_value, double threshold) {
    TrailRecord rec;
    rec.term = term;
    rec.lag = lag;
    rec.p_value = p_value;
    rec.threshold = threshold;
    rec.adopted = false;
    return rec;
}

}  // namespace

StepwiseDecision stepwise_decide(const TimeSeriesPair& pair, int l_a, int l_b,
                                 double fwer, int l_search_max) {
    if (l_a < 1 || l_b < 1) {
        throw InvalidArgumentError("l_a and l_b must be >= 1");
    }
    if (!(fwer > 0.0 && fwer < 1.0)) {
        throw InvalidArgumentError("fwer must lie in (0, 1)");
    }
    // Holm step-down schedule: the smaller stage-1 p-value is compared to
    // fwer/2; the remaining term is then tested at the full fwer. Familywise
    // error stays below fwer in every null configuration.
    const double stage1_threshold = fwer / 2.0;
    const double stage2_threshold = fwer;
    const ResidualSeries xi = residual_series(pair.y(), l_b);

    StepwiseDecision out;
    const BaseTerms base{l_a, std::nullopt, std::nullopt};

    const LagSearchResult noise_search = search_lag(pair, &xi, Term::noise_corr, base, l_search_max);
    const LagSearchResult inter_search = search_lag(pair, &xi, Term::interaction, base, l_search_max);
    out.aborted_for_collinearity |= noise_search.collinearity_stop || inter_search.collinearity_stop;

    // Stage 1: test each searched term against the x-lags-only null.
    std::optional<std::size_t> noise_rec;
    std::optional<std::size_t> inter_rec;
    if (noise_search.lag) {
        try {
            const CausalityTestResult r = noise_corr_test(pair, l_a, l_b, *noise_search.lag);
            out.p_value_trail.push_back(
                make_record(Term::noise_corr, *noise_search.lag, r.p_value, stage1_threshold));
            noise_rec = out.p_value_trail.size() - 1;
        } catch (const MulticollinearityError&) {
            out.aborted_for_collinearity = true;
        }
    }
    if (inter_search.lag) {
        try {
            const CausalityTestResult r = normal_gc_test(pair, l_a, *inter_search.lag);
            out.p_value_trail.push_back(
                make_record(Term::interaction, *inter_search.lag, r.p_value, stage1_threshold));
            inter_rec = out.p_value_trail.size() - 1;
        } catch (const MulticollinearityError&) {
            out.aborted_for_collinearity = true;
        }
    }

    // Adopt the smaller p-value if significant; noise correlation wins ties.
    Term first = Term::noise_corr;
    std::optional<std::size_t> first_rec;
    if (noise_rec && inter_rec) {
        const double p_noise = out.p_value_trail[*noise_rec].p_value;
        const double p_inter = out.p_value_trail[*inter_rec].p_value;
        first = p_inter < p_noise ? Term::interaction : Term::noise_corr;
        first_rec = first == Term::interaction ? inter_rec : noise_rec;
    } else if (noise_rec) {
        first = Term::noise_corr;
        first_rec = noise_rec;
    } else if (inter_rec) {
        first = Term::interaction;
        first_rec = inter_rec;
    } else {
        return out;  // nothing testable
    }

    if (!(out.p_value_trail[*first_rec].p_value < stage1_threshold)) {
        return out;  // no term significant at stage 1
    }
    out.p_value_trail[*first_rec].adopted = true;

    if (first == Term::noise_corr) {
        out.noise_corr_detected = true;
        out.selected_l_eta = out.p_value_trail[*first_rec].lag;

        // Stage 2: interaction under the adopted noise term.
        BaseTerms base2{l_a, std::nullopt, out.selected_l_eta};
        const LagSearchResult s2 = search_lag(pair, &xi, Term::interaction, base2, l_search_max);
        out.aborted_for_collinearity |= s2.collinearity_stop;
        if (s2.lag) {
            try {
                LagConfig lags{l_a, l_b, *s2.lag, *out.selected_l_eta};
                const CausalityTestResult r = proposed_gc_test(pair, lags);
                TrailRecord rec = make_record(Term::interaction, *s2.lag, r.p_value, stage2_threshold);
                if (r.p_value < stage2_threshold) {
                    rec.adopted = true;
                    out.interaction_detected = true;
                    out.selected_l_c = *s2.lag;
                }
                out.p_value_trail.push_back(rec);
            } catch (const MulticollinearityError&) {
                out.aborted_for_collinearity = true;
            }
        }
    } else {
        out.interaction_detected = true;
        out.selected_l_c = out.p_value_trail[*first_rec].lag;

        // Stage 2: noise correlation under the adopted interaction block.
        BaseTerms base2{l_a, out.selected_l_c, std::nullopt};
        const LagSearchResult s2 = search_lag(pair, &xi, Term::noise_corr, base2, l_search_max);
        out.aborted_for_collinearity |= s2.collinearity_stop;
        if (s2.lag) {
            try {
                const CausalityTestResult r =
                    noise_corr_test(pair, l_a, l_b, *s2.lag, out.selected_l_c);
                TrailRecord rec = make_record(Term::noise_corr, *s2.lag, r.p_value, stage2_threshold);
                if (r.p_value < stage2_threshold) {
                    rec.adopted = true;
                    out.noise_corr_detected = true;
                    out.selected_l_eta = *s2.lag;
                }
                out.p_value_trail.push_back(rec);
            } catch (const MulticollinearityError&) {
                out.aborted_for_collinearity = true;
            }
        }
    }
    return out;
}

StepwiseDecision stepwise_decide_normal(const TimeSeriesPair& pair, int l_a,
                                        double alpha, int l_search_max) {
    if (l_a < 1) {
        throw InvalidArgumentError("l_a must be >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw InvalidArgumentError("alpha must lie in (0, 1)");
    }
    StepwiseDecision out;
    const BaseTerms base{l_a, std::nullopt, std::nullopt};
    const LagSearchResult search = search_lag(pair, nullptr, Term::interaction, base, l_search_max);
    out.aborted_for_collinearity = search.collinearity_stop;
    if (!search.lag) {
        return out;
    }
    try {
        const CausalityTestResult r = normal_gc_test(pair, l_a, *search.lag);
        TrailRecord rec = make_record(Term::interaction, *search.lag, r.p_value, alpha);
        if (r.p_value < alpha) {
            rec.adopted = true;
            out.interaction_detected = true;
            out.selected_l_c = *search.lag;
        }
        out.p_value_trail.push_back(rec);
    } catch (const MulticollinearityError&) {
        out.aborted_for_collinearity = true;
    }
    return out;
}

}  // namespace lcgc
