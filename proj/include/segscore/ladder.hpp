#pragma once

#include <vector>

#include "segscore/model.hpp"
#include "segscore/spectral.hpp"

namespace segscore {

// One matrix per step score j in [-u_max, v_max]:
// at(j)(a,b) = p(a,b) if f(b) == j, else 0. The family sums to the
// transition matrix.
struct ScoreSplit {
    int u_max = 0, v_max = 0;
    std::vector<Mat> by_score;  // index j + u_max

    const Mat& at(int j) const { return by_score.at(static_cast<size_t>(j + u_max)); }
    Mat& at(int j) { return by_score.at(static_cast<size_t>(j + u_max)); }
};

ScoreSplit score_split(const ScoreModel& model);

struct SolveOptions {
    double tol = 1e-12;        // sup-norm change per sweep
    long max_sweeps = 1'000'000;
};

// First-passage matrix family for the walk's first strict descent:
// descent[k](a,b) = P(first minimum overshoots to -(k+1), landing in b | start a).
struct DescentFamily {
    std::vector<Mat> matrices;  // index k, overshoot -(k+1)
    Mat chain;                  // sum over k; stochastic landing-state chain
    long sweeps = 0;
    double residual = 0.0;
};

// Mirror family for the first strict ascent; defective since the walk may
// never rise above its start.
struct AscentFamily {
    std::vector<Mat> matrices;  // index k, overshoot +(k+1)
    Vec mass;                   // total first-ascent probability per state, < 1
    long sweeps = 0;
    double residual = 0.0;
};

// Both families solve branching fixed-point systems by successive
// substitution from the zero family, which converges monotonically to the
// minimal nonnegative solution.
DescentFamily solve_descent_family(const ScoreModel& model, const ScoreSplit& split,
                                   const SolveOptions& opts = {});
AscentFamily solve_ascent_family(const ScoreModel& model, const ScoreSplit& split,
                                 const SolveOptions& opts = {});

// Stationary row vector of `chain` restricted to `support`, embedded back
// into full dimension with zeros elsewhere. The restriction must be
// irreducible; throws ValidationError otherwise.
Vec restricted_invariant(const Mat& chain, const std::vector<int>& support, int r);

// Per-state expected overshoot of the first descent (negative values).
Vec mean_first_descent(const DescentFamily& descent);

// Everything the distribution formulas consume.
struct LadderSystem {
    std::vector<Mat> descent;        // first-descent family
    Mat descent_chain;
    Vec descent_invariant;           // z: stationary landing law, on negative states
    std::vector<Mat> ascent;         // first-ascent family
    Vec ascent_mass;                 // per-state mass of the defective ascent law
    std::vector<Mat> tilted_ascent;  // ascent tilted by exp(theta* k) u_b/u_a
    Mat tilted_chain;                // stochastic aggregate
    Vec tilted_invariant;            // w: stationary law of the tilted chain, on positive states

    double theta_star = 0.0;
    Vec u_star;

    double c = 0.0;        // tail normalizer from the tilted ascent overshoot
    double c_inf = 0.0;    // limit of the tilted tail of the maximal partial sum
    double c_inf_alt = 0.0;  // same constant through the summation-by-parts route
    double a_star = 0.0;   // mean spacing between descent epochs

    long descent_sweeps = 0, ascent_sweeps = 0;
    double descent_residual = 0.0, ascent_residual = 0.0;
};

// Tilted ascent family and its aggregate; the aggregate's rows must sum to
// 1 (consistency of theta*, u* and the ascent family). Deviation beyond
// 1e-6 throws NumericError.
std::pair<std::vector<Mat>, Mat> tilted_ascent_matrices(const SpectralData& spectral,
                                                        const std::vector<Mat>& ascent);

double tail_normalizer_c(const SpectralData& spectral, const Vec& w,
                         const std::vector<Mat>& ascent);

// Returns (primary, alternative) evaluations of the limiting tail constant;
// they must agree to 1e-8 relative or NumericError is thrown.
std::pair<double, double> tail_constant_c_inf(const SpectralData& spectral, const Vec& w,
                                              const std::vector<Mat>& ascent,
                                              const Vec& ascent_mass, double c);

double mean_ladder_spacing(const ScoreModel& model, const Vec& z,
                           const DescentFamily& descent);

LadderSystem solve_ladders(const ScoreModel& model, const SpectralData& spectral,
                           const SolveOptions& opts = {});

namespace ladder_detail {

// Tuple sets for the branching terms: all ways to cross the start level by
// chained one-sided first passages. Exposed for tests that drive the
// sweeps manually.
std::vector<std::vector<int>> descent_tuples(int j, int ell, int u_max);
std::vector<std::vector<int>> ascent_tuples(int k, int ell, int v_max);

// One Jacobi sweep of each fixed-point system; returns the sup-norm change.
double descent_sweep(std::vector<Mat>& family, const ScoreSplit& split);
double ascent_sweep(std::vector<Mat>& family, const ScoreSplit& split);

}  // namespace ladder_detail

}  // namespace segscore
