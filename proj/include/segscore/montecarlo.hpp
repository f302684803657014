#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "segscore/model.hpp"
#include "segscore/rng.hpp"

namespace segscore {

enum class StartMode { FixedState, Stationary };

struct SimulationConfig {
    std::string statistic;         // "splus" | "q1" | "mn" | "ladder"
    long horizon = 0;              // sequence length n where applicable
    long replicates = 1;
    std::uint64_t master_seed = 0;
    StartMode start_mode = StartMode::Stationary;
    int start_state = 0;           // used with FixedState
    int threads = 0;               // 0 = hardware default
    long safety_horizon = 10'000'000;  // per-replicate step cap for stopping-time statistics
};

struct SimulationReport {
    std::string statistic;
    std::vector<double> levels;    // lattice levels, or x offsets for "mn"
    std::vector<double> estimate;
    std::vector<double> se;        // binomial standard errors
    long replicates = 0;
    long discarded = 0;            // replicates that hit the safety horizon
    std::uint64_t master_seed = 0;
    std::uint64_t model_fingerprint = 0;
    std::string rng_name;
    std::string stream_rule;
    std::string start_description;
    long horizon = 0;
    double wall_seconds = 0.0;
};

// Inverse-cdf sampler over the transition rows; rows are cumulated once.
class PathSampler {
public:
    explicit PathSampler(const ScoreModel& model);

    int initial_state(Xoshiro256ss& rng, StartMode mode, int fixed_state) const;
    int step(int from, Xoshiro256ss& rng) const;

private:
    Mat row_cdf_;
    Vec pi_cdf_;
};

// States A_0..A_n; deterministic given the seed.
std::vector<int> simulate_path(const ScoreModel& model, long n, std::uint64_t seed,
                               StartMode mode, int start_state = 0);

// Running-maximum of the reflected walk; equals the maximal segmental sum.
long lindley_local_score(const ScoreModel& model, std::span<const int> path);

// Empirical cdf of the maximal partial sum over the horizon, levels
// 0..max_level.
SimulationReport empirical_splus(const ScoreModel& model, const SimulationConfig& config,
                                 long max_level);

// Empirical tail of the first-excursion height, levels 0..max_level.
// Replicates whose first descent does not arrive within the safety
// horizon are discarded and counted.
SimulationReport empirical_q1(const ScoreModel& model, const SimulationConfig& config,
                              long max_level);

// Empirical P(M_n <= log(n)/theta* + x) over an x grid.
SimulationReport empirical_mn(const ScoreModel& model, double theta_star,
                              const SimulationConfig& config,
                              const std::vector<double>& x_grid);

// Mean ladder-epoch spacing K_m/m, averaged over independent streams.
double empirical_ladder_spacing(const ScoreModel& model, long m_count, long streams,
                                std::uint64_t master_seed,
                                StartMode mode = StartMode::Stationary,
                                int start_state = 0);

}  // namespace segscore
