#pragma once

#include <filesystem>
#include <string>

#include "oscillab/verify.hpp"

namespace oscillab {

// Flat key=value run configuration. Lines starting with '#' are comments.
struct RunConfig {
    BaseKind base = BaseKind::DyadicCubes;
    int min_scale = 0;
    bool split = false;
    std::string measure = "uniform";  // uniform | path to a masses CSV
    MaximalMode maximal = MaximalMode::Dyadic;
    double norm_bound = 0.0;          // > 0 overrides the default bound
    double besicovitch = 0.0;         // 0 picks the per-dimension default
    Setting setting = Setting::EuclideanCubes;
    double tau = 4.0;
    double homogeneous_c = 2.0;
    std::uint64_t seed = 1;
    int trials = 10;
    int corpus_size = 24;
    double rdf_tol = 1e-12;
    std::string out_dir = "oscillab-out";

    std::string to_text() const;
    std::string digest() const;
};

RunConfig parse_config(std::string_view text);  // ParseError on unknown keys or bad values
RunConfig load_config(const std::filesystem::path& path);

// Builds the space for a domain according to the config.
std::shared_ptr<const GridSpace> space_from_config(const RunConfig& cfg, GridDomain domain);

}  // namespace oscillab
