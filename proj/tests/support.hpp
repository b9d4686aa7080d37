#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ahp/ahp.hpp"

namespace ahp::testing {

inline std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline std::string example_path() { return std::string(AHP_DATA_DIR) + "/chatbot_comparison.yaml"; }
inline std::string example_text() { return read_text(example_path()); }
inline DecisionModel example_model() { return parse_model(example_text()); }

inline const std::vector<Ratio>& saaty_values() {
    static const std::vector<Ratio> values = [] {
        std::vector<Ratio> v;
        for (int k = 1; k <= 9; ++k) v.emplace_back(k);
        for (int k = 2; k <= 9; ++k) v.emplace_back(1, k);
        return v;
    }();
    return values;
}

inline Ratio random_saaty(std::mt19937_64& rng) {
    const auto& values = saaty_values();
    return values[std::uniform_int_distribution<std::size_t>(0, values.size() - 1)(rng)];
}

// Reciprocal matrix with Saaty-set upper triangle.
inline ComparisonMatrix random_reciprocal(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("e" + std::to_string(i));
    std::vector<PairwiseJudgment> judgments;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) judgments.push_back({names[i], names[j], random_saaty(rng)});
    }
    return build_matrix(names, judgments);
}

// Random hierarchy via the scaffolder, then random Saaty judgments everywhere.
inline void randomize_judgments(Node& node, std::mt19937_64& rng) {
    for (auto& j : node.judgments) {
        j.value = random_saaty(rng);
        j.placeholder = false;
    }
    for (auto& c : node.children) randomize_judgments(c, rng);
}

inline DecisionModel random_model(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> n_categories(1, 4), n_attributes(1, 4), n_alternatives(2, 4);
    std::vector<AttributeSelection> selection;
    const int categories = n_categories(rng);
    for (int c = 0; c < categories; ++c) {
        const int attributes = n_attributes(rng);
        for (int a = 0; a < attributes; ++a) {
            selection.push_back({kAllCategories[c], "Attr" + std::to_string(c) + "_" + std::to_string(a)});
        }
    }
    std::vector<std::string> alternatives;
    const int alts = n_alternatives(rng);
    for (int i = 0; i < alts; ++i) alternatives.push_back("Alt" + std::to_string(i));
    DecisionModel model = scaffold_model(selection, alternatives);
    randomize_judgments(model.goal, rng);
    return model;
}

// Reverses sibling order everywhere (and the alternative declaration order).
inline void reverse_siblings(Node& node) {
    std::reverse(node.children.begin(), node.children.end());
    for (auto& c : node.children) reverse_siblings(c);
}

} // namespace ahp::testing
