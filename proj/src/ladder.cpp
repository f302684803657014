#include "segscore/ladder.hpp"

#include <cmath>

#include "segscore/errors.hpp"

namespace segscore {

ScoreSplit score_split(const ScoreModel& model) {
    const int r = model.size();
    ScoreSplit split;
    split.u_max = model.u_max;
    split.v_max = model.v_max;
    split.by_score.assign(static_cast<size_t>(model.u_max + model.v_max + 1), Mat::Zero(r, r));
    for (int b = 0; b < r; ++b) {
        Mat& target = split.at(model.scores[b]);
        for (int a = 0; a < r; ++a) target(a, b) = model.transition(a, b);
    }
    return split;
}

namespace ladder_detail {

namespace {

// Chained one-sided first passages crossing the start level. Steps are
// strictly one-signed, so prefix sums are monotone and only the last
// prefix needs checking.
void dfs_tuples(int target, int prefix_bound, bool descending, int step_max,
                std::vector<int>& cur, int partial, std::vector<std::vector<int>>& out) {
    for (int mag = 1; mag <= step_max; ++mag) {
        const int t = descending ? -mag : mag;
        const int next = partial + t;
        cur.push_back(t);
        if (next == target) {
            const bool prefix_ok = descending ? (partial >= prefix_bound) : (partial <= prefix_bound);
            if (prefix_ok) out.push_back(cur);
        } else {
            const bool can_extend = descending ? (next > target && next >= prefix_bound)
                                               : (next < target && next <= prefix_bound);
            if (can_extend) dfs_tuples(target, prefix_bound, descending, step_max, cur, next, out);
        }
        cur.pop_back();
    }
}

}  // namespace

std::vector<std::vector<int>> descent_tuples(int j, int ell, int u_max) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    dfs_tuples(ell - j, -j, /*descending=*/true, u_max, cur, 0, out);
    return out;
}

std::vector<std::vector<int>> ascent_tuples(int k, int ell, int v_max) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    dfs_tuples(ell + k, k, /*descending=*/false, v_max, cur, 0, out);
    return out;
}

namespace {

using TupleSet = std::vector<std::vector<int>>;

// cache[j-1][index of target level]: tuple set for the opposite-sign first step j
std::vector<std::vector<TupleSet>> build_descent_cache(int u_max, int v_max) {
    std::vector<std::vector<TupleSet>> cache(static_cast<size_t>(v_max));
    for (int j = 1; j <= v_max; ++j) {
        cache[j - 1].resize(static_cast<size_t>(u_max));
        for (int ell = -1; ell >= -u_max; --ell)
            cache[j - 1][static_cast<size_t>(-ell - 1)] = descent_tuples(j, ell, u_max);
    }
    return cache;
}

std::vector<std::vector<TupleSet>> build_ascent_cache(int u_max, int v_max) {
    std::vector<std::vector<TupleSet>> cache(static_cast<size_t>(u_max));
    for (int k = 1; k <= u_max; ++k) {
        cache[k - 1].resize(static_cast<size_t>(v_max));
        for (int ell = 1; ell <= v_max; ++ell)
            cache[k - 1][static_cast<size_t>(ell - 1)] = ascent_tuples(k, ell, v_max);
    }
    return cache;
}

Mat tuple_sum(const TupleSet& tuples, const std::vector<Mat>& family, int r,
              bool descending) {
    Mat acc = Mat::Zero(r, r);
    for (const auto& tuple : tuples) {
        Mat prod = family[static_cast<size_t>(descending ? -tuple[0] - 1 : tuple[0] - 1)];
        for (size_t i = 1; i < tuple.size(); ++i)
            prod = prod * family[static_cast<size_t>(descending ? -tuple[i] - 1 : tuple[i] - 1)];
        acc += prod;
    }
    return acc;
}

double descent_sweep_cached(std::vector<Mat>& family, const ScoreSplit& split,
                            const std::vector<std::vector<TupleSet>>& cache) {
    const int r = static_cast<int>(family[0].rows());
    double change = 0.0;
    std::vector<Mat> next(family.size());
    for (int ell = -1; ell >= -split.u_max; --ell) {
        const size_t idx = static_cast<size_t>(-ell - 1);
        Mat m = split.at(ell) + split.at(0) * family[idx];
        for (int j = 1; j <= split.v_max; ++j) {
            const TupleSet& tuples = cache[j - 1][idx];
            if (!tuples.empty()) m += split.at(j) * tuple_sum(tuples, family, r, true);
        }
        next[idx] = std::move(m);
    }
    for (size_t i = 0; i < family.size(); ++i) {
        change = std::max(change, sup_norm(Mat(next[i] - family[i])));
        family[i] = std::move(next[i]);
    }
    return change;
}

double ascent_sweep_cached(std::vector<Mat>& family, const ScoreSplit& split,
                           const std::vector<std::vector<TupleSet>>& cache) {
    const int r = static_cast<int>(family[0].rows());
    double change = 0.0;
    std::vector<Mat> next(family.size());
    for (int ell = 1; ell <= split.v_max; ++ell) {
        const size_t idx = static_cast<size_t>(ell - 1);
        Mat m = split.at(ell) + split.at(0) * family[idx];
        for (int k = 1; k <= split.u_max; ++k) {
            const TupleSet& tuples = cache[k - 1][idx];
            if (!tuples.empty()) m += split.at(-k) * tuple_sum(tuples, family, r, false);
        }
        next[idx] = std::move(m);
    }
    for (size_t i = 0; i < family.size(); ++i) {
        change = std::max(change, sup_norm(Mat(next[i] - family[i])));
        family[i] = std::move(next[i]);
    }
    return change;
}

}  // namespace

double descent_sweep(std::vector<Mat>& family, const ScoreSplit& split) {
    return descent_sweep_cached(family, split, build_descent_cache(split.u_max, split.v_max));
}

double ascent_sweep(std::vector<Mat>& family, const ScoreSplit& split) {
    return ascent_sweep_cached(family, split, build_ascent_cache(split.u_max, split.v_max));
}

}  // namespace ladder_detail

DescentFamily solve_descent_family(const ScoreModel& model, const ScoreSplit& split,
                                   const SolveOptions& opts) {
    if (split.u_max == 0 || split.v_max == 0)
        throw ValidationError("ladder systems need both positive and negative scores");
    const int r = model.size();
    DescentFamily out;
    out.matrices.assign(static_cast<size_t>(split.u_max), Mat::Zero(r, r));
    auto cache = ladder_detail::build_descent_cache(split.u_max, split.v_max);

    double change = 0.0;
    for (long sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        change = ladder_detail::descent_sweep_cached(out.matrices, split, cache);
        out.sweeps = sweep;
        if (change <= opts.tol) break;
    }
    out.residual = change;
    if (change > opts.tol)
        throw NumericError("first-descent solver exhausted its sweep budget; residual " +
                           std::to_string(change));

    out.chain = Mat::Zero(r, r);
    for (const Mat& m : out.matrices) out.chain += m;
    for (int a = 0; a < r; ++a) {
        double rs = out.chain.row(a).sum();
        if (std::abs(rs - 1.0) > 100.0 * opts.tol)
            throw ValidationError("first-descent law is not a probability (row sum " +
                                  std::to_string(rs) + "); drift hypothesis suspect");
    }
    return out;
}

AscentFamily solve_ascent_family(const ScoreModel& model, const ScoreSplit& split,
                                 const SolveOptions& opts) {
    if (split.u_max == 0 || split.v_max == 0)
        throw ValidationError("ladder systems need both positive and negative scores");
    const int r = model.size();
    AscentFamily out;
    out.matrices.assign(static_cast<size_t>(split.v_max), Mat::Zero(r, r));
    auto cache = ladder_detail::build_ascent_cache(split.u_max, split.v_max);

    double change = 0.0;
    for (long sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
        change = ladder_detail::ascent_sweep_cached(out.matrices, split, cache);
        out.sweeps = sweep;
        if (change <= opts.tol) break;
    }
    out.residual = change;
    if (change > opts.tol)
        throw NumericError("first-ascent solver exhausted its sweep budget; residual " +
                           std::to_string(change));

    out.mass = Vec::Zero(r);
    for (const Mat& m : out.matrices) out.mass += m.rowwise().sum();
    for (int a = 0; a < r; ++a) {
        if (out.mass(a) >= 1.0 - 100.0 * opts.tol)
            throw ValidationError("first-ascent mass reaches 1 for state '" +
                                  model.alphabet[static_cast<size_t>(a)] +
                                  "'; drift is not negative enough numerically");
    }
    return out;
}

Vec restricted_invariant(const Mat& chain, const std::vector<int>& support, int r) {
    const int k = static_cast<int>(support.size());
    if (k == 0) throw ValidationError("invariant vector requested on empty support");
    Mat sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) sub(i, j) = chain(support[static_cast<size_t>(i)],
                                                      support[static_cast<size_t>(j)]);
    if (!is_irreducible(sub))
        throw ValidationError("landing-state chain is reducible on its support; "
                              "the renewal argument does not apply to this model");
    Vec sv = stationary_vector(sub);
    Vec full = Vec::Zero(r);
    for (int i = 0; i < k; ++i) full(support[static_cast<size_t>(i)]) = sv(i);
    return full;
}

Vec mean_first_descent(const DescentFamily& descent) {
    const int r = static_cast<int>(descent.chain.rows());
    Vec mean = Vec::Zero(r);
    for (size_t k = 0; k < descent.matrices.size(); ++k)
        mean -= static_cast<double>(k + 1) * descent.matrices[k].rowwise().sum();
    return mean;
}

std::pair<std::vector<Mat>, Mat> tilted_ascent_matrices(const SpectralData& spectral,
                                                        const std::vector<Mat>& ascent) {
    const int r = static_cast<int>(spectral.u_star.size());
    std::vector<Mat> tilted(ascent.size());
    Mat total = Mat::Zero(r, r);
    for (size_t k = 0; k < ascent.size(); ++k) {
        const double lift = std::exp(spectral.theta_star * static_cast<double>(k + 1));
        Mat g(r, r);
        for (int a = 0; a < r; ++a)
            for (int b = 0; b < r; ++b)
                g(a, b) = spectral.u_star(b) / spectral.u_star(a) * lift * ascent[k](a, b);
        total += g;
        tilted[k] = std::move(g);
    }
    for (int a = 0; a < r; ++a) {
        double rs = total.row(a).sum();
        if (std::abs(rs - 1.0) > 1e-6)
            throw NumericError("tilted ascent chain is not stochastic (row sum " +
                               std::to_string(rs) + "); theta* or the ascent family is off");
    }
    return {std::move(tilted), std::move(total)};
}

double tail_normalizer_c(const SpectralData& spectral, const Vec& w,
                         const std::vector<Mat>& ascent) {
    const int r = static_cast<int>(w.size());
    double c = 0.0;
    for (size_t k = 0; k < ascent.size(); ++k) {
        const double ell = static_cast<double>(k + 1);
        const double lift = ell * std::exp(spectral.theta_star * ell);
        for (int g = 0; g < r; ++g) {
            if (w(g) == 0.0) continue;
            for (int b = 0; b < r; ++b)
                c += w(g) / spectral.u_star(g) * spectral.u_star(b) * lift * ascent[k](g, b);
        }
    }
    return c;
}

std::pair<double, double> tail_constant_c_inf(const SpectralData& spectral, const Vec& w,
                                              const std::vector<Mat>& ascent,
                                              const Vec& ascent_mass, double c) {
    const int r = static_cast<int>(w.size());
    const double theta = spectral.theta_star;
    const int v = static_cast<int>(ascent.size());

    double primary = 0.0;
    for (int g = 0; g < r; ++g) {
        if (w(g) == 0.0) continue;
        double cdf = 0.0;  // ascent cdf at level ell
        double acc = 0.0;
        for (int ell = 0; ell < v; ++ell) {
            if (ell >= 1) cdf += ascent[static_cast<size_t>(ell - 1)].row(g).sum();
            acc += (ascent_mass(g) - cdf) * std::exp(theta * ell);
        }
        primary += w(g) / spectral.u_star(g) * acc;
    }
    primary /= c;

    double alt = 0.0;
    for (int g = 0; g < r; ++g) {
        if (w(g) == 0.0) continue;
        double tilted_mass = 0.0;  // E[e^{theta* overshoot}; ascent happens]
        for (int k = 0; k < v; ++k)
            tilted_mass += std::exp(theta * (k + 1)) * ascent[static_cast<size_t>(k)].row(g).sum();
        alt += w(g) / spectral.u_star(g) * (tilted_mass - ascent_mass(g));
    }
    alt /= c * (std::exp(theta) - 1.0);

    if (std::abs(primary - alt) > 1e-8 * std::max(1.0, std::abs(primary)))
        throw NumericError("the two evaluations of the limiting tail constant disagree: " +
                           std::to_string(primary) + " vs " + std::to_string(alt));
    return {primary, alt};
}

double mean_ladder_spacing(const ScoreModel& model, const Vec& z,
                           const DescentFamily& descent) {
    const double drift = mean_score(model);
    const double mean_overshoot = z.dot(mean_first_descent(descent));
    const double spacing = mean_overshoot / drift;
    if (!(spacing > 0.0))
        throw NumericError("mean ladder spacing came out non-positive");
    return spacing;
}

LadderSystem solve_ladders(const ScoreModel& model, const SpectralData& spectral,
                           const SolveOptions& opts) {
    const ScoreSplit split = score_split(model);
    const StatePartition partition = partition_states(model);
    const int r = model.size();

    DescentFamily descent = solve_descent_family(model, split, opts);
    AscentFamily ascent = solve_ascent_family(model, split, opts);

    LadderSystem sys;
    sys.descent = std::move(descent.matrices);
    sys.descent_chain = std::move(descent.chain);
    sys.descent_sweeps = descent.sweeps;
    sys.descent_residual = descent.residual;
    sys.ascent = std::move(ascent.matrices);
    sys.ascent_mass = std::move(ascent.mass);
    sys.ascent_sweeps = ascent.sweeps;
    sys.ascent_residual = ascent.residual;

    sys.descent_invariant = restricted_invariant(sys.descent_chain, partition.negative_states, r);

    auto [tilted, tilted_chain] = tilted_ascent_matrices(spectral, sys.ascent);
    sys.tilted_ascent = std::move(tilted);
    sys.tilted_chain = std::move(tilted_chain);
    sys.tilted_invariant = restricted_invariant(sys.tilted_chain, partition.positive_states, r);

    sys.theta_star = spectral.theta_star;
    sys.u_star = spectral.u_star;

    sys.c = tail_normalizer_c(spectral, sys.tilted_invariant, sys.ascent);
    auto [primary, alt] =
        tail_constant_c_inf(spectral, sys.tilted_invariant, sys.ascent, sys.ascent_mass, sys.c);
    sys.c_inf = primary;
    sys.c_inf_alt = alt;

    DescentFamily descent_view;
    descent_view.matrices = sys.descent;
    descent_view.chain = sys.descent_chain;
    sys.a_star = mean_ladder_spacing(model, sys.descent_invariant, descent_view);
    return sys;
}

}  // namespace segscore
