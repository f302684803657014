#pragma once

#include <Eigen/Dense>
#include <vector>

namespace segscore {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline double sup_norm(const Mat& m) { return m.cwiseAbs().maxCoeff(); }
inline double sup_norm(const Vec& v) { return v.cwiseAbs().maxCoeff(); }

// Strong connectivity of the directed graph {(i,j) : m(i,j) > 0}.
bool is_irreducible(const Mat& m);

// Period (gcd of cycle lengths) of an irreducible nonnegative matrix.
int matrix_period(const Mat& m);

// Stationary row vector of an irreducible row-stochastic matrix:
// solves x^T m = x^T, sum x = 1 by a dense linear solve, falling back to
// power iteration if the solve degrades. Throws NumericError on failure.
Vec stationary_vector(const Mat& m, double residual_tol = 1e-12);

}  // namespace segscore
