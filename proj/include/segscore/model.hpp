#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "segscore/linalg.hpp"

namespace segscore {

// A finite-state Markov chain with an integer score attached to each state.
// Scores are stored on the unit lattice: if the raw scores share a common
// divisor g > 1 they are divided by g and `lattice_step` records g, so that
// outputs can be reported in the original units.
struct ScoreModel {
    std::vector<std::string> alphabet;
    Mat transition;               // row-stochastic, alphabet-ordered
    std::vector<int> scores;      // lattice units, gcd 1
    int lattice_step = 1;         // original score units per lattice unit
    int u_max = 0;                // largest magnitude among negative scores
    int v_max = 0;                // largest positive score

    int size() const { return static_cast<int>(alphabet.size()); }
    int state_index(const std::string& label) const;  // -1 when absent
    std::vector<int> original_scores() const;

    // Builds a model from raw inputs, rescaling the score lattice.
    // Throws ValidationError on structural defects (dimension mismatch,
    // non-finite or negative transition entries).
    static ScoreModel create(std::vector<std::string> alphabet, Mat transition,
                             std::vector<int> raw_scores);
};

struct StatePartition {
    std::vector<int> negative_states;
    std::vector<int> zero_states;
    std::vector<int> positive_states;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
};

struct ValidationReport {
    bool passed = false;
    std::vector<CheckResult> checks;
    std::vector<std::string> warnings;
};

// Checks the hypotheses the downstream computations rely on: row
// stochasticity, irreducibility, aperiodicity, negative mean score, and
// one-step access from every state to a positive- and a negative-score
// state. A transition matrix that is not strictly positive is only warned
// about.
ValidationReport validate_model(const ScoreModel& model);

// Stationary distribution pi of the transition matrix (pi P = pi).
Vec stationary_distribution(const ScoreModel& model);

// Mean score under pi, in lattice units.
double mean_score(const ScoreModel& model);

StatePartition partition_states(const ScoreModel& model);

// Transition matrix estimate from an observed symbol sequence:
// p(a,b) = (count(ab) + pseudocount) / (count(a.) + r * pseudocount).
Mat estimate_transitions(const std::vector<std::string>& sequence,
                         const std::vector<std::string>& alphabet,
                         double pseudocount);

// Stable fingerprint of a model (alphabet, original scores, transition
// entries); recorded in every report so outputs can be traced to inputs.
std::uint64_t model_hash(const ScoreModel& model);

}  // namespace segscore
