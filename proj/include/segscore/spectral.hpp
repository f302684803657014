#pragma once

#include <functional>

#include "segscore/model.hpp"

namespace segscore {

struct EigenPair {
    double rho = 0.0;   // dominant eigenvalue
    Vec u;              // positive right eigenvector, sum 1
    long iterations = 0;
    double residual = 0.0;
};

// Dominant eigenpair of the tilted transition matrix at the decay rate
// theta_star, where the tilt's spectral radius returns to 1.
struct SpectralData {
    double theta_star = 0.0;  // lattice inverse-score units
    Vec u_star;               // positive, sum 1
    double rho_residual = 0.0;
    double bracket_lo = 0.0, bracket_hi = 0.0;
    long root_iterations = 0;
    std::function<EigenPair(double)> rho_evaluator;
};

// Entry (a,b) = p(a,b) * exp(theta * f(b)). Throws NumericError when the
// exponent would overflow (|theta| * max|f| > 700).
Mat tilted_transition(const ScoreModel& model, double theta);

// Power iteration for the dominant eigenpair of a nonnegative primitive
// matrix. Throws NumericError if the residual target is not reached.
EigenPair dominant_eigenpair(const Mat& m, double tol = 1e-13,
                             long max_iterations = 2'000'000);

// Spectral radius of the tilted transition matrix as a function of theta.
double spectral_radius(const ScoreModel& model, double theta);

// Finds the unique positive root of rho(theta) = 1 by bracket expansion
// and bisection. Throws NumericError when no root exists below the
// overflow guard (the negative-drift hypothesis is then suspect).
SpectralData solve_theta_star(const ScoreModel& model);

// (central finite difference of rho at 0, mean score); the two agree for
// valid models and the pair is exposed as a runtime self-check.
std::pair<double, double> rho_derivative_check(const ScoreModel& model,
                                               double step = 1e-6);

}  // namespace segscore
