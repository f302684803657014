#include "segscore/linalg.hpp"

#include <numeric>
#include <queue>

#include "segscore/errors.hpp"

namespace segscore {

namespace {

std::vector<int> reachable_from(const Mat& m, int start) {
    const int r = static_cast<int>(m.rows());
    std::vector<int> seen(r, 0);
    std::queue<int> frontier;
    frontier.push(start);
    seen[start] = 1;
    while (!frontier.empty()) {
        int i = frontier.front();
        frontier.pop();
        for (int j = 0; j < r; ++j) {
            if (!seen[j] && m(i, j) > 0.0) {
                seen[j] = 1;
                frontier.push(j);
            }
        }
    }
    return seen;
}

}  // namespace

bool is_irreducible(const Mat& m) {
    const int r = static_cast<int>(m.rows());
    if (r == 0) return false;
    auto fwd = reachable_from(m, 0);
    auto bwd = reachable_from(Mat(m.transpose()), 0);
    for (int i = 0; i < r; ++i) {
        if (!fwd[i] || !bwd[i]) return false;
    }
    return true;
}

int matrix_period(const Mat& m) {
    // BFS levels from state 0; the period is gcd(level(i) + 1 - level(j))
    // over edges i->j. Valid for irreducible patterns.
    const int r = static_cast<int>(m.rows());
    std::vector<int> level(r, -1);
    std::queue<int> frontier;
    level[0] = 0;
    frontier.push(0);
    while (!frontier.empty()) {
        int i = frontier.front();
        frontier.pop();
        for (int j = 0; j < r; ++j) {
            if (m(i, j) > 0.0 && level[j] < 0) {
                level[j] = level[i] + 1;
                frontier.push(j);
            }
        }
    }
    int g = 0;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            if (m(i, j) > 0.0) g = std::gcd(g, level[i] + 1 - level[j]);
        }
    }
    return g == 0 ? 1 : std::abs(g);
}

Vec stationary_vector(const Mat& m, double residual_tol) {
    const int r = static_cast<int>(m.rows());
    // (m^T - I) x = 0 with the last equation replaced by sum(x) = 1
    Mat a = m.transpose() - Mat::Identity(r, r);
    a.row(r - 1).setOnes();
    Vec b = Vec::Zero(r);
    b(r - 1) = 1.0;
    Vec x = a.partialPivLu().solve(b);

    auto residual = [&](const Vec& v) {
        return sup_norm(Vec(m.transpose() * v - v));
    };

    if (!x.allFinite() || x.minCoeff() < -1e-9 || residual(x) > residual_tol) {
        // power iteration fallback
        Vec v = Vec::Constant(r, 1.0 / r);
        for (long it = 0; it < 1'000'000; ++it) {
            Vec next = m.transpose() * v;
            next /= next.sum();
            if (sup_norm(Vec(next - v)) < 1e-16) {
                v = next;
                break;
            }
            v = next;
        }
        x = v;
        if (residual(x) > residual_tol) {
            throw NumericError("stationary vector did not converge; residual " +
                               std::to_string(residual(x)));
        }
    }
    x = x.cwiseMax(0.0);
    x /= x.sum();
    return x;
}

}  // namespace segscore
