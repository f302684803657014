#pragma once

#include <string>

#include "segscore/model.hpp"

namespace segscore {

// Model file schema: a JSON object with exactly the fields
//   alphabet   list of distinct state labels
//   transition list of rows, one per state
//   scores     list of integers aligned with the alphabet
// Unknown fields are rejected.
ScoreModel load_model(const std::string& path);
ScoreModel parse_model(const std::string& json_text);
std::string model_to_json(const ScoreModel& model);
void save_model(const ScoreModel& model, const std::string& path);

// Symbol sequence: whitespace-separated tokens, or one symbol per
// character when the file contains no whitespace.
std::vector<std::string> load_sequence(const std::string& path);

}  // namespace segscore
