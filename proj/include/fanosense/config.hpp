#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "fanosense/model.hpp"
#include "fanosense/sensing.hpp"

namespace fanosense::config {

using json = nlohmann::json;

// The complete document with every key present. Only keys listed here are accepted.
json default_document();

// Overlays user on top of the defaults. Unknown keys and type mismatches throw ConfigError with the dotted path.
json merge_document(const json& user);

json load_file(const std::filesystem::path& path);

// KEY=VAL with a dotted KEY. VAL is read as JSON when it parses, otherwise as a string.
void apply_override(json& doc, std::string_view assignment);

struct CorrelationOptions {
    double lambda = 577.038;
    double tau_max = 50.0;
    double tau_step = 0.05;
    std::vector<int> orders{2, 3, 4};
};

struct RunConfig {
    ModelConfig model;
    sensing::SolverOptions solver;
    std::vector<int> convergence_dims;
    double convergence_tol = 1e-4;
    sensing::Window spectrum;
    sensing::SenseOptions sense;
    CorrelationOptions correlations;
    std::string output_dir;  // empty: not set
    bool plot = false;
    json document;
    std::string hash;
};

// Validates everything before returning.
RunConfig resolve(const json& doc);

// FNV-1a 64 over the compact dump of the document, as 16 hex digits.
std::string config_hash(const json& doc);

sensing::Window parse_window(const std::string& text, const std::string& path);

}  // namespace fanosense::config
