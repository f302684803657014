#include "segscore/model_io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "segscore/errors.hpp"
#include "segscore/reports.hpp"

#include <nlohmann/json.hpp>

namespace segscore {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw ParseError("cannot read '" + path + "'");
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

}  // namespace

ScoreModel parse_model(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("model file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("model file must contain a JSON object");
    for (const auto& [key, _] : doc.items()) {
        if (key != "alphabet" && key != "transition" && key != "scores")
            throw ParseError("unknown model field '" + key + "'");
    }
    if (!doc.contains("alphabet") || !doc.contains("transition") || !doc.contains("scores"))
        throw ParseError("model file needs 'alphabet', 'transition' and 'scores'");

    std::vector<std::string> alphabet;
    for (const auto& item : doc["alphabet"]) {
        if (!item.is_string()) throw ParseError("alphabet entries must be strings");
        alphabet.push_back(item.get<std::string>());
    }
    const auto r = alphabet.size();
    if (r == 0) throw ParseError("alphabet is empty");

    const auto& rows = doc["transition"];
    if (!rows.is_array() || rows.size() != r)
        throw ParseError("transition must list one row per state");
    Mat transition(static_cast<long>(r), static_cast<long>(r));
    for (size_t i = 0; i < r; ++i) {
        if (!rows[i].is_array() || rows[i].size() != r)
            throw ParseError("transition row " + std::to_string(i) + " has wrong length");
        for (size_t j = 0; j < r; ++j) {
            if (!rows[i][j].is_number())
                throw ParseError("transition entries must be numbers");
            transition(static_cast<long>(i), static_cast<long>(j)) = rows[i][j].get<double>();
        }
    }

    std::vector<int> scores;
    for (const auto& item : doc["scores"]) {
        if (!item.is_number_integer())
            throw ParseError("scores must be integers");
        scores.push_back(item.get<int>());
    }
    if (scores.size() != r) throw ParseError("scores must align with the alphabet");

    try {
        return ScoreModel::create(std::move(alphabet), std::move(transition), std::move(scores));
    } catch (const ValidationError& e) {
        throw ParseError(std::string("model file rejected: ") + e.what());
    }
}

ScoreModel load_model(const std::string& path) { return parse_model(read_file(path)); }

std::string model_to_json(const ScoreModel& model) {
    nlohmann::ordered_json j;
    j["alphabet"] = model.alphabet;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < model.size(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int k = 0; k < model.size(); ++k) row.push_back(model.transition(i, k));
        rows.push_back(row);
    }
    j["transition"] = rows;
    j["scores"] = model.original_scores();
    return j.dump(2) + "\n";
}

void save_model(const ScoreModel& model, const std::string& path) {
    std::ofstream file(path);
    if (!file) throw ParseError("cannot open '" + path + "' for writing");
    file << model_to_json(model);
}

std::vector<std::string> load_sequence(const std::string& path) {
    const std::string text = read_file(path);
    std::vector<std::string> symbols;
    std::istringstream stream(text);
    std::string token;
    while (stream >> token) symbols.push_back(token);
    // a single unbroken run is read as one symbol per character
    if (symbols.size() == 1 && symbols[0].size() > 1) {
        const std::string run = symbols[0];
        symbols.clear();
        for (char c : run) symbols.emplace_back(1, c);
    }
    return symbols;
}

}  // namespace segscore
