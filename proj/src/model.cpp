#include "segscore/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>

#include "segscore/errors.hpp"

namespace segscore {

int ScoreModel::state_index(const std::string& label) const {
    auto it = std::find(alphabet.begin(), alphabet.end(), label);
    return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

std::vector<int> ScoreModel::original_scores() const {
    std::vector<int> out(scores.size());
    for (size_t i = 0; i < scores.size(); ++i) out[i] = scores[i] * lattice_step;
    return out;
}

ScoreModel ScoreModel::create(std::vector<std::string> alphabet, Mat transition,
                              std::vector<int> raw_scores) {
    const auto r = alphabet.size();
    if (r == 0) throw ValidationError("empty alphabet");
    if (std::set<std::string>(alphabet.begin(), alphabet.end()).size() != r)
        throw ValidationError("duplicate state labels");
    if (transition.rows() != static_cast<long>(r) || transition.cols() != static_cast<long>(r))
        throw ValidationError("transition matrix dimensions do not match the alphabet");
    if (raw_scores.size() != r)
        throw ValidationError("score list length does not match the alphabet");
    if (!transition.allFinite())
        throw ValidationError("transition matrix has non-finite entries");
    if (transition.minCoeff() < 0.0)
        throw ValidationError("transition matrix has negative entries");

    int g = 0;
    for (int s : raw_scores) g = std::gcd(g, std::abs(s));
    if (g == 0) g = 1;

    ScoreModel model;
    model.alphabet = std::move(alphabet);
    model.transition = std::move(transition);
    model.lattice_step = g;
    model.scores.resize(r);
    for (size_t i = 0; i < r; ++i) model.scores[i] = raw_scores[i] / g;
    for (int s : model.scores) {
        if (s < 0) model.u_max = std::max(model.u_max, -s);
        if (s > 0) model.v_max = std::max(model.v_max, s);
    }
    return model;
}

ValidationReport validate_model(const ScoreModel& model) {
    ValidationReport report;
    const int r = model.size();
    auto add = [&](const std::string& name, bool ok, double measured) {
        report.checks.push_back({name, ok, measured});
    };

    double worst_row = 0.0;
    for (int i = 0; i < r; ++i)
        worst_row = std::max(worst_row, std::abs(model.transition.row(i).sum() - 1.0));
    add("rows_stochastic", worst_row <= 1e-12, worst_row);

    const bool irreducible = is_irreducible(model.transition);
    add("irreducible", irreducible, irreducible ? 1.0 : 0.0);

    int period = irreducible ? matrix_period(model.transition) : 0;
    add("aperiodic", irreducible && period == 1, static_cast<double>(period));

    double mean = 0.0;
    bool mean_ok = false;
    if (irreducible && worst_row <= 1e-9) {
        mean = mean_score(model);
        mean_ok = mean < 0.0;
    }
    add("mean_score_negative", mean_ok, mean * model.lattice_step);

    bool has_pos = model.v_max > 0, has_neg = model.u_max > 0;
    add("has_positive_and_negative_scores", has_pos && has_neg,
        (has_pos ? 1.0 : 0.0) + (has_neg ? 2.0 : 0.0));

    // one-step access to both score signs from every state
    bool access_ok = has_pos && has_neg;
    double min_access = 1.0;
    if (access_ok) {
        for (int a = 0; a < r && access_ok; ++a) {
            double to_pos = 0.0, to_neg = 0.0;
            for (int b = 0; b < r; ++b) {
                if (model.scores[b] > 0) to_pos += model.transition(a, b);
                if (model.scores[b] < 0) to_neg += model.transition(a, b);
            }
            min_access = std::min({min_access, to_pos, to_neg});
            if (to_pos <= 0.0 || to_neg <= 0.0) access_ok = false;
        }
    }
    add("one_step_score_access", access_ok, min_access);

    if (model.transition.minCoeff() <= 0.0)
        report.warnings.push_back(
            "transition matrix is not strictly positive; results rely on "
            "irreducibility and score-access conditions only");

    report.passed = std::all_of(report.checks.begin(), report.checks.end(),
                                [](const CheckResult& c) { return c.passed; });
    return report;
}

Vec stationary_distribution(const ScoreModel& model) {
    return stationary_vector(model.transition);
}

double mean_score(const ScoreModel& model) {
    Vec pi = stationary_distribution(model);
    double mean = 0.0;
    for (int i = 0; i < model.size(); ++i) mean += pi(i) * model.scores[i];
    return mean;
}

StatePartition partition_states(const ScoreModel& model) {
    StatePartition p;
    for (int i = 0; i < model.size(); ++i) {
        if (model.scores[i] < 0)
            p.negative_states.push_back(i);
        else if (model.scores[i] > 0)
            p.positive_states.push_back(i);
        else
            p.zero_states.push_back(i);
    }
    return p;
}

Mat estimate_transitions(const std::vector<std::string>& sequence,
                         const std::vector<std::string>& alphabet,
                         double pseudocount) {
    if (sequence.size() < 2) throw ParseError("sequence too short to estimate transitions");
    if (pseudocount < 0.0) throw ParseError("pseudocount must be nonnegative");
    const int r = static_cast<int>(alphabet.size());

    std::vector<int> index(sequence.size());
    for (size_t i = 0; i < sequence.size(); ++i) {
        auto it = std::find(alphabet.begin(), alphabet.end(), sequence[i]);
        if (it == alphabet.end())
            throw ParseError("symbol '" + sequence[i] + "' not in the alphabet");
        index[i] = static_cast<int>(it - alphabet.begin());
    }

    Mat counts = Mat::Zero(r, r);
    for (size_t i = 0; i + 1 < sequence.size(); ++i) counts(index[i], index[i + 1]) += 1.0;

    Mat p(r, r);
    for (int a = 0; a < r; ++a) {
        double total = counts.row(a).sum() + r * pseudocount;
        if (total <= 0.0)
            throw ValidationError("state '" + alphabet[a] +
                                  "' has no observed transitions and pseudocount is zero");
        for (int b = 0; b < r; ++b) p(a, b) = (counts(a, b) + pseudocount) / total;
    }
    return p;
}

std::uint64_t model_hash(const ScoreModel& model) {
    // FNV-1a over a canonical rendering
    std::uint64_t h = 0xCBF29CE484222325ULL;
    auto mix = [&h](const std::string& s) {
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001B3ULL;
        }
        h ^= 0x1F;
        h *= 0x100000001B3ULL;
    };
    for (const auto& label : model.alphabet) mix(label);
    for (int s : model.original_scores()) mix(std::to_string(s));
    char buf[40];
    for (int i = 0; i < model.size(); ++i) {
        for (int j = 0; j < model.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", model.transition(i, j));
            mix(buf);
        }
    }
    return h;
}

}  // namespace segscore
