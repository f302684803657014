#include "segscore/montecarlo.hpp"

#include <chrono>
#include <cmath>
#include <thread>

#include "segscore/errors.hpp"

namespace segscore {

namespace {

int resolve_threads(int requested, long replicates) {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw <= 0) hw = 1;
    int t = requested > 0 ? requested : std::min(hw, 8);
    if (replicates < t) t = static_cast<int>(std::max<long>(replicates, 1));
    return t;
}

// Runs one integer-valued statistic per replicate and accumulates counts.
// Bin `bins` collects values beyond the tracked range, bin `bins+1` the
// discarded replicates. Counting is associative, so any thread split
// yields identical histograms.
template <typename Fn>
std::vector<std::uint64_t> replicate_histogram(long replicates, int threads, long bins, Fn&& fn) {
    std::vector<std::uint64_t> hist(static_cast<size_t>(bins) + 2, 0);
    auto run_range = [&](long begin, long end, std::vector<std::uint64_t>& local) {
        for (long i = begin; i < end; ++i) {
            long value = fn(i);
            if (value < 0)
                ++local[static_cast<size_t>(bins) + 1];
            else
                ++local[static_cast<size_t>(std::min(value, bins))];
        }
    };
    if (threads <= 1) {
        run_range(0, replicates, hist);
        return hist;
    }
    std::vector<std::vector<std::uint64_t>> locals(
        static_cast<size_t>(threads), std::vector<std::uint64_t>(static_cast<size_t>(bins) + 2, 0));
    std::vector<std::thread> pool;
    const long chunk = (replicates + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const long begin = t * chunk;
        const long end = std::min(replicates, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back(run_range, begin, end, std::ref(locals[static_cast<size_t>(t)]));
    }
    for (auto& th : pool) th.join();
    for (const auto& local : locals)
        for (size_t i = 0; i < hist.size(); ++i) hist[i] += local[i];
    return hist;
}

std::string describe_start(const ScoreModel& model, StartMode mode, int state) {
    if (mode == StartMode::Stationary) return "stationary";
    return "fixed:" + model.alphabet[static_cast<size_t>(state)];
}

}  // namespace

PathSampler::PathSampler(const ScoreModel& model) {
    const int r = model.size();
    row_cdf_.resize(r, r);
    for (int a = 0; a < r; ++a) {
        double acc = 0.0;
        for (int b = 0; b < r; ++b) {
            acc += model.transition(a, b);
            row_cdf_(a, b) = acc;
        }
        row_cdf_(a, r - 1) = 1.0;  // guard against rounding in the last bin
    }
    Vec pi = stationary_distribution(model);
    pi_cdf_.resize(r);
    double acc = 0.0;
    for (int i = 0; i < r; ++i) {
        acc += pi(i);
        pi_cdf_(i) = acc;
    }
    pi_cdf_(r - 1) = 1.0;
}

int PathSampler::initial_state(Xoshiro256ss& rng, StartMode mode, int fixed_state) const {
    if (mode == StartMode::FixedState) return fixed_state;
    const double u = rng.uniform();
    int i = 0;
    while (pi_cdf_(i) <= u) ++i;
    return i;
}

int PathSampler::step(int from, Xoshiro256ss& rng) const {
    const double u = rng.uniform();
    int b = 0;
    while (row_cdf_(from, b) <= u) ++b;
    return b;
}

std::vector<int> simulate_path(const ScoreModel& model, long n, std::uint64_t seed,
                               StartMode mode, int start_state) {
    PathSampler sampler(model);
    Xoshiro256ss rng(seed);
    std::vector<int> path(static_cast<size_t>(n) + 1);
    path[0] = sampler.initial_state(rng, mode, start_state);
    for (long i = 1; i <= n; ++i)
        path[static_cast<size_t>(i)] = sampler.step(path[static_cast<size_t>(i - 1)], rng);
    return path;
}

long lindley_local_score(const ScoreModel& model, std::span<const int> path) {
    if (path.empty()) throw std::out_of_range("empty path");
    long w = 0, m = 0;
    for (size_t i = 1; i < path.size(); ++i) {
        w = std::max<long>(w + model.scores[static_cast<size_t>(path[i])], 0);
        m = std::max(m, w);
    }
    return m;
}

SimulationReport empirical_splus(const ScoreModel& model, const SimulationConfig& config,
                                 long max_level) {
    const auto t0 = std::chrono::steady_clock::now();
    PathSampler sampler(model);
    const int threads = resolve_threads(config.threads, config.replicates);

    auto one = [&](long rep) -> long {
        Xoshiro256ss rng(replicate_seed(config.master_seed, static_cast<std::uint64_t>(rep)));
        int state = sampler.initial_state(rng, config.start_mode, config.start_state);
        long s = 0, peak = 0;
        for (long i = 0; i < config.horizon; ++i) {
            state = sampler.step(state, rng);
            s += model.scores[static_cast<size_t>(state)];
            peak = std::max(peak, s);
        }
        return peak;  // >= 0 because the empty prefix counts
    };
    auto hist = replicate_histogram(config.replicates, threads, max_level + 1, one);

    SimulationReport report;
    report.statistic = "splus";
    report.replicates = config.replicates;
    report.master_seed = config.master_seed;
    report.model_fingerprint = model_hash(model);
    report.rng_name = kRngName;
    report.stream_rule = kStreamRule;
    report.start_description = describe_start(model, config.start_mode, config.start_state);
    report.horizon = config.horizon;
    const double total = static_cast<double>(config.replicates);
    std::uint64_t below = 0;
    for (long level = 0; level <= max_level; ++level) {
        below += hist[static_cast<size_t>(level)];
        const double p = static_cast<double>(below) / total;
        report.levels.push_back(static_cast<double>(level));
        report.estimate.push_back(p);
        report.se.push_back(std::sqrt(p * (1.0 - p) / total));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

SimulationReport empirical_q1(const ScoreModel& model, const SimulationConfig& config,
                              long max_level) {
    const auto t0 = std::chrono::steady_clock::now();
    PathSampler sampler(model);
    const int threads = resolve_threads(config.threads, config.replicates);

    auto one = [&](long rep) -> long {
        Xoshiro256ss rng(replicate_seed(config.master_seed, static_cast<std::uint64_t>(rep)));
        int state = sampler.initial_state(rng, config.start_mode, config.start_state);
        long s = 0, peak = 0;
        for (long i = 0; i < config.safety_horizon; ++i) {
            state = sampler.step(state, rng);
            s += model.scores[static_cast<size_t>(state)];
            if (s < 0) return peak;  // first descent: excursion over
            peak = std::max(peak, s);
        }
        return -1;  // safety horizon hit; discard
    };
    auto hist = replicate_histogram(config.replicates, threads, max_level + 1, one);

    SimulationReport report;
    report.statistic = "q1";
    report.replicates = config.replicates;
    report.discarded = static_cast<long>(hist.back());
    report.master_seed = config.master_seed;
    report.model_fingerprint = model_hash(model);
    report.rng_name = kRngName;
    report.stream_rule = kStreamRule;
    report.start_description = describe_start(model, config.start_mode, config.start_state);
    report.horizon = config.safety_horizon;
    const double kept = static_cast<double>(config.replicates - report.discarded);
    // tail: P(height > level)
    std::uint64_t above = 0;
    for (size_t i = 0; i < hist.size() - 1; ++i) above += hist[i];
    for (long level = 0; level <= max_level; ++level) {
        above -= hist[static_cast<size_t>(level)];
        const double p = kept > 0 ? static_cast<double>(above) / kept : 0.0;
        report.levels.push_back(static_cast<double>(level));
        report.estimate.push_back(p);
        report.se.push_back(kept > 0 ? std::sqrt(p * (1.0 - p) / kept) : 0.0);
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

SimulationReport empirical_mn(const ScoreModel& model, double theta_star,
                              const SimulationConfig& config,
                              const std::vector<double>& x_grid) {
    const auto t0 = std::chrono::steady_clock::now();
    PathSampler sampler(model);
    const int threads = resolve_threads(config.threads, config.replicates);
    const long bins = config.horizon * std::max(1, model.v_max) + 1;

    auto one = [&](long rep) -> long {
        Xoshiro256ss rng(replicate_seed(config.master_seed, static_cast<std::uint64_t>(rep)));
        int state = sampler.initial_state(rng, config.start_mode, config.start_state);
        long w = 0, m = 0;
        for (long i = 0; i < config.horizon; ++i) {
            state = sampler.step(state, rng);
            w = std::max<long>(w + model.scores[static_cast<size_t>(state)], 0);
            m = std::max(m, w);
        }
        return m;
    };
    auto hist = replicate_histogram(config.replicates, threads, bins, one);

    // cumulative counts: P(M <= level)
    std::vector<std::uint64_t> cum(static_cast<size_t>(bins) + 1, 0);
    std::uint64_t acc = 0;
    for (long level = 0; level <= bins; ++level) {
        acc += hist[static_cast<size_t>(level)];
        cum[static_cast<size_t>(std::min(level, bins))] = acc;
    }

    SimulationReport report;
    report.statistic = "mn";
    report.replicates = config.replicates;
    report.master_seed = config.master_seed;
    report.model_fingerprint = model_hash(model);
    report.rng_name = kRngName;
    report.stream_rule = kStreamRule;
    report.start_description = describe_start(model, config.start_mode, config.start_state);
    report.horizon = config.horizon;
    const double total = static_cast<double>(config.replicates);
    const double anchor = std::log(static_cast<double>(config.horizon)) / theta_star;
    for (double x : x_grid) {
        const long level = static_cast<long>(std::floor(anchor + x));
        double p = 0.0;
        if (level >= 0) p = static_cast<double>(cum[static_cast<size_t>(std::min(level, bins))]) / total;
        report.levels.push_back(x);
        report.estimate.push_back(p);
        report.se.push_back(std::sqrt(p * (1.0 - p) / total));
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

double empirical_ladder_spacing(const ScoreModel& model, long m_count, long streams,
                                std::uint64_t master_seed, StartMode mode, int start_state) {
    PathSampler sampler(model);
    double total = 0.0;
    for (long stream = 0; stream < streams; ++stream) {
        Xoshiro256ss rng(replicate_seed(master_seed, static_cast<std::uint64_t>(stream)));
        int state = sampler.initial_state(rng, mode, start_state);
        long s = 0, record_min = 0, steps = 0, epochs = 0;
        while (epochs < m_count) {
            state = sampler.step(state, rng);
            s += model.scores[static_cast<size_t>(state)];
            ++steps;
            if (s < record_min) {
                record_min = s;
                ++epochs;
            }
        }
        total += static_cast<double>(steps) / static_cast<double>(m_count);
    }
    return total / static_cast<double>(streams);
}

}  // namespace segscore
