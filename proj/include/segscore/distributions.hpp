#pragma once

#include <map>
#include <optional>
#include <string>

#include "segscore/ladder.hpp"

namespace segscore {

enum class Statistic { SPlusCdf, SPlusTail, Q1Tail, MnCdf };

struct DistributionTable {
    Statistic statistic = Statistic::SPlusCdf;
    std::vector<long> levels;  // lattice units
    Mat per_state;             // r x levels.size()
    std::uint64_t model_hash = 0;
    long truncation_level = 0;
    std::map<std::string, double> params;

    double at(int state, long level) const;
    // pi-weighted mixture across start states
    Vec mixture(const Vec& pi) const;
};

// Exact law of the maximal nonnegative partial sum, per start state.
// The cdf follows the bottom-up convolution over the ascent family; the
// tail is computed by its own recursion rather than as 1-cdf so that deep
// tail values keep full relative precision.
struct SplusTables {
    DistributionTable cdf;
    DistributionTable tail;
};

SplusTables exact_splus(const ScoreModel& model, const LadderSystem& ladders,
                        long level_max);

// Default table depth for a horizon-n local score run: everything the
// floor argument can touch plus headroom.
long default_splus_levels(const LadderSystem& ladders, long n, double x_max, int u_max);

// Per-state geometric tail approximation c_inf * u_a * exp(-theta* k).
Vec asymptotic_splus_tail(const LadderSystem& ladders, long level);

// Bound on the mass missing beyond the table's truncation level.
double splus_truncation_bound(const LadderSystem& ladders, long level_max);

// First-excursion height tail approximation, per start state, built from
// the exact maximal-sum tails. Requires the tables to reach
// k_max + u_max; throws std::out_of_range otherwise.
DistributionTable q1_tail_table(const ScoreModel& model, const LadderSystem& ladders,
                                const SplusTables& splus, long k_max);

struct LocalScoreOptions {
    bool use_asymptotic_tail = false;  // substitute the geometric tail (study aid)
    bool proof_variant = false;        // drop the n/A* prefactor on the correction factor
};

struct LocalScoreValue {
    double value = 0.0;
    bool clamped = false;  // left [0,1] before clamping
    bool floored = false;  // floor argument was negative; level 0 used
};

// Two-factor approximation of P(M_n <= log(n)/theta* + x); independent of
// the start state by construction.
LocalScoreValue local_score_cdf(const ScoreModel& model, const LadderSystem& ladders,
                                const SplusTables& splus, long n, double x,
                                const LocalScoreOptions& opts = {});

// Gumbel scale constant of the classical baseline; only defined for the
// unit scoring scheme (lattice scores within {-1,0,1}).
double kd_gumbel_scale(const ScoreModel& model, const LadderSystem& ladders);

// Classical baseline cdf exp(-K* exp(-theta* x)); note it carries no
// dependence on the sequence length.
double kd_local_score_cdf(const ScoreModel& model, const LadderSystem& ladders, double x);

struct PValueResult {
    double improved = 0.0;
    std::optional<double> kd;  // absent for non-unit scoring schemes
    double x = 0.0;            // observed score recentred by log(n)/theta*
    long n = 0;
    long observed_score = 0;   // original score units
};

PValueResult score_pvalue(const ScoreModel& model, const LadderSystem& ladders,
                          const SplusTables& splus, long n, long observed_score);

}  // namespace segscore
