// JSON, CSV and SVG emitters shared by the C API and the tests.
#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ergodic.hpp"
#include "verifier.hpp"

namespace cf {

constexpr int kSchemaVersion = 1;

json expansion_json(const FieldElement& z, const Expansion& e);
// n, digit, p_n, q_n, |z - p_n/q_n|
std::string expansion_csv(const FieldElement& z, const Expansion& e);

json verify_json(const std::vector<CheckReport>& reports, const VerifyConfig& cfg, bool timing);
json ergodic_json(const ErgodicReport& r);
std::string density_csv(const std::vector<std::vector<double>>& grid);

// (file name, document) for the five region figures
std::vector<std::pair<std::string, std::string>> region_figures();

}  // namespace cf
