#include "segscore/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "segscore/errors.hpp"

namespace segscore {

double DistributionTable::at(int state, long level) const {
    if (level < 0 || level >= static_cast<long>(levels.size()))
        throw std::out_of_range("level " + std::to_string(level) +
                                " outside the table (max " +
                                std::to_string(static_cast<long>(levels.size()) - 1) + ")");
    return per_state(state, level);
}

Vec DistributionTable::mixture(const Vec& pi) const {
    return per_state.transpose() * pi;
}

SplusTables exact_splus(const ScoreModel& model, const LadderSystem& ladders,
                        long level_max) {
    if (level_max < 0) throw std::out_of_range("level_max must be nonnegative");
    const int r = model.size();
    const int v = static_cast<int>(ladders.ascent.size());
    const long cols = level_max + 1;

    Mat cdf(r, cols), tail(r, cols);
    Vec ones = Vec::Ones(r);
    cdf.col(0) = ones - ladders.ascent_mass;
    tail.col(0) = ladders.ascent_mass;
    for (long ell = 1; ell <= level_max; ++ell) {
        Vec fc = ones - ladders.ascent_mass;
        Vec tc = Vec::Zero(r);
        for (int k = 1; k <= v; ++k) {
            const Mat& step = ladders.ascent[static_cast<size_t>(k - 1)];
            if (k <= ell) {
                fc += step * cdf.col(ell - k);
                tc += step * tail.col(ell - k);
            } else {
                tc += step.rowwise().sum();  // overshoot already beyond the level
            }
        }
        cdf.col(ell) = fc;
        tail.col(ell) = tc;
    }

    SplusTables out;
    std::vector<long> levels(static_cast<size_t>(cols));
    for (long ell = 0; ell <= level_max; ++ell) levels[static_cast<size_t>(ell)] = ell;
    const std::uint64_t hash = model_hash(model);
    out.cdf = {Statistic::SPlusCdf, levels, std::move(cdf), hash, level_max, {}};
    out.tail = {Statistic::SPlusTail, levels, std::move(tail), hash, level_max, {}};
    const double bound = splus_truncation_bound(ladders, level_max);
    out.cdf.params["truncation_bound"] = bound;
    out.tail.params["truncation_bound"] = bound;
    return out;
}

long default_splus_levels(const LadderSystem& ladders, long n, double x_max, int u_max) {
    const double base = std::log(static_cast<double>(std::max<long>(n, 2))) / ladders.theta_star;
    return static_cast<long>(std::ceil(base + std::max(0.0, x_max))) + u_max + 20;
}

Vec asymptotic_splus_tail(const LadderSystem& ladders, long level) {
    return ladders.c_inf * std::exp(-ladders.theta_star * static_cast<double>(level)) *
           ladders.u_star;
}

double splus_truncation_bound(const LadderSystem& ladders, long level_max) {
    return 1.5 * ladders.c_inf * ladders.u_star.maxCoeff() *
           std::exp(-ladders.theta_star * static_cast<double>(level_max));
}

DistributionTable q1_tail_table(const ScoreModel& model, const LadderSystem& ladders,
                                const SplusTables& splus, long k_max) {
    const int r = model.size();
    const int u = static_cast<int>(ladders.descent.size());
    if (k_max + u > splus.tail.truncation_level)
        throw std::out_of_range("first-excursion tail needs the maximal-sum table up to level " +
                                std::to_string(k_max + u));

    Mat values(r, k_max + 1);
    for (long k = 0; k <= k_max; ++k) {
        Vec v = splus.tail.per_state.col(k);
        for (int step = 1; step <= u; ++step)
            v -= ladders.descent[static_cast<size_t>(step - 1)] * splus.tail.per_state.col(k + step);
        values.col(k) = v.cwiseMax(0.0).cwiseMin(1.0);
    }

    DistributionTable out;
    out.statistic = Statistic::Q1Tail;
    out.levels.resize(static_cast<size_t>(k_max + 1));
    for (long k = 0; k <= k_max; ++k) out.levels[static_cast<size_t>(k)] = k;
    out.per_state = std::move(values);
    out.model_hash = model_hash(model);
    out.truncation_level = k_max;
    return out;
}

LocalScoreValue local_score_cdf(const ScoreModel& model, const LadderSystem& ladders,
                                const SplusTables& splus, long n, double x,
                                const LocalScoreOptions& opts) {
    if (n < 2) throw std::out_of_range("horizon n must be at least 2");
    const int r = model.size();
    const int u = static_cast<int>(ladders.descent.size());
    const Vec& z = ladders.descent_invariant;

    LocalScoreValue out;
    double y = std::log(static_cast<double>(n)) / ladders.theta_star + x;
    long level = static_cast<long>(std::floor(y));
    if (level < 0) {
        level = 0;
        out.floored = true;
    }
    if (level + u > splus.tail.truncation_level)
        throw std::out_of_range("maximal-sum table too short for n=" + std::to_string(n) +
                                ", x=" + std::to_string(x));

    auto tail_at = [&](long lev) -> Vec {
        if (opts.use_asymptotic_tail) return asymptotic_splus_tail(ladders, lev);
        return splus.tail.per_state.col(lev);
    };

    const double prefactor = static_cast<double>(n) / ladders.a_star;
    const double direct = z.dot(tail_at(level));
    double correction = 0.0;
    for (int step = 1; step <= u; ++step) {
        // landing-state weights z Q^{(-step)}
        Vec landing = ladders.descent[static_cast<size_t>(step - 1)].transpose() * z;
        correction += landing.dot(tail_at(level + step));
    }

    const double exponent =
        -prefactor * direct + (opts.proof_variant ? 1.0 : prefactor) * correction;
    double value = std::exp(exponent);
    if (value < 0.0 || value > 1.0) {
        out.clamped = true;
        value = std::clamp(value, 0.0, 1.0);
    }
    out.value = value;
    (void)r;
    return out;
}

double kd_gumbel_scale(const ScoreModel& model, const LadderSystem& ladders) {
    for (int s : model.scores) {
        if (s < -1 || s > 1)
            throw UnsupportedError("baseline constant is only available for the unit scoring "
                                   "scheme (lattice scores in {-1,0,1})");
    }
    const double theta = ladders.theta_star;
    const Vec& z = ladders.descent_invariant;
    const Vec& w = ladders.tilted_invariant;
    double zu = z.dot(ladders.u_star);
    double wu = 0.0;
    for (int i = 0; i < model.size(); ++i)
        if (w(i) != 0.0) wu += w(i) / ladders.u_star(i);
    const double mean_loss = -mean_score(model);
    return (std::exp(-theta) - std::exp(-2.0 * theta)) * mean_loss * zu * wu;
}

double kd_local_score_cdf(const ScoreModel& model, const LadderSystem& ladders, double x) {
    const double k_star = kd_gumbel_scale(model, ladders);
    return std::exp(-k_star * std::exp(-ladders.theta_star * x));
}

PValueResult score_pvalue(const ScoreModel& model, const LadderSystem& ladders,
                          const SplusTables& splus, long n, long observed_score) {
    if (observed_score < 0) throw std::out_of_range("observed score must be nonnegative");
    PValueResult out;
    out.n = n;
    out.observed_score = observed_score;
    const double lattice_score =
        static_cast<double>(observed_score) / static_cast<double>(model.lattice_step);
    out.x = lattice_score - std::log(static_cast<double>(n)) / ladders.theta_star;
    out.improved = 1.0 - local_score_cdf(model, ladders, splus, n, out.x).value;
    try {
        out.kd = 1.0 - kd_local_score_cdf(model, ladders, out.x);
    } catch (const UnsupportedError&) {
        out.kd.reset();
    }
    return out;
}

}  // namespace segscore
