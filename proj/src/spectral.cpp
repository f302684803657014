#include "segscore/spectral.hpp"

#include <cmath>

#include "segscore/errors.hpp"

namespace segscore {

namespace {

int max_abs_score(const ScoreModel& model) {
    int m = 1;
    for (int s : model.scores) m = std::max(m, std::abs(s));
    return m;
}

}  // namespace

Mat tilted_transition(const ScoreModel& model, double theta) {
    if (std::abs(theta) * max_abs_score(model) > 700.0)
        throw NumericError("tilt exponent overflow: |theta|*max|score| > 700");
    const int r = model.size();
    Mat phi(r, r);
    for (int b = 0; b < r; ++b) {
        const double w = std::exp(theta * model.scores[b]);
        for (int a = 0; a < r; ++a) phi(a, b) = model.transition(a, b) * w;
    }
    return phi;
}

EigenPair dominant_eigenpair(const Mat& m, double tol, long max_iterations) {
    const int r = static_cast<int>(m.rows());
    EigenPair out;
    Vec v = Vec::Constant(r, 1.0 / r);
    double rho = 1.0;
    const double scale = std::max(1.0, sup_norm(m));
    for (long it = 1; it <= max_iterations; ++it) {
        Vec w = m * v;
        rho = w.sum();  // v sums to 1, so this converges to the eigenvalue
        if (rho <= 0.0 || !std::isfinite(rho))
            throw NumericError("power iteration degenerated (matrix reducible or invalid)");
        w /= rho;
        double res = sup_norm(Vec(m * w - rho * w));
        v = w;
        if (res <= tol * scale) {
            out.rho = rho;
            out.u = v;
            out.iterations = it;
            out.residual = res;
            return out;
        }
    }
    throw NumericError("power iteration did not converge");
}

double spectral_radius(const ScoreModel& model, double theta) {
    return dominant_eigenpair(tilted_transition(model, theta)).rho;
}

SpectralData solve_theta_star(const ScoreModel& model) {
    const double theta_cap = 700.0 / max_abs_score(model);
    auto rho = [&](double t) { return spectral_radius(model, t); };

    // lower bracket edge: rho dips below 1 just right of the origin
    double lo = std::min(0.25 / max_abs_score(model), theta_cap / 4.0);
    int shrink = 0;
    while (rho(lo) >= 1.0) {
        lo *= 0.5;
        if (++shrink > 80)
            throw NumericError("no positive root of rho(theta)=1: rho does not dip below 1 "
                               "(drift hypothesis violated?)");
    }
    double hi = lo;
    int grow = 0;
    while (rho(hi) <= 1.0) {
        hi *= 2.0;
        if (hi > theta_cap || ++grow > 80)
            throw NumericError("no root found: rho(theta) stays below 1 up to the overflow guard");
    }

    SpectralData data;
    data.bracket_lo = lo;
    data.bracket_hi = hi;

    // bisection to near machine width, then a secant polish
    long iters = 0;
    for (; iters < 200 && (hi - lo) > 1e-15 * std::max(1.0, hi); ++iters) {
        double mid = 0.5 * (lo + hi);
        if (rho(mid) < 1.0)
            lo = mid;
        else
            hi = mid;
    }
    double theta = 0.5 * (lo + hi);
    {
        double f_lo = rho(lo) - 1.0, f_hi = rho(hi) - 1.0;
        if (f_hi != f_lo) {
            double secant = lo - f_lo * (hi - lo) / (f_hi - f_lo);
            if (secant > 0.0 && secant < theta_cap &&
                std::abs(rho(secant) - 1.0) < std::abs(rho(theta) - 1.0))
                theta = secant;
        }
    }

    EigenPair pair = dominant_eigenpair(tilted_transition(model, theta));
    data.theta_star = theta;
    data.u_star = pair.u;
    data.rho_residual = std::abs(pair.rho - 1.0);
    data.root_iterations = iters;
    if (data.rho_residual > 1e-10)
        throw NumericError("theta* root refinement stalled; |rho-1| = " +
                           std::to_string(data.rho_residual));

    const ScoreModel snapshot = model;
    data.rho_evaluator = [snapshot](double t) {
        return dominant_eigenpair(tilted_transition(snapshot, t));
    };
    return data;
}

std::pair<double, double> rho_derivative_check(const ScoreModel& model, double step) {
    double fd = (spectral_radius(model, step) - spectral_radius(model, -step)) / (2.0 * step);
    return {fd, mean_score(model)};
}

}  // namespace segscore
