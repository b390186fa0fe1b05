#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "trustkatz/pipeline_config.hpp"
#include "trustkatz/recommender.hpp"

namespace trustkatz::cli {

/// Settings shared by every subcommand. Precedence: command-line flag > config file > default.
struct RunConfig {
    std::filesystem::path trust_path;
    std::filesystem::path ratings_path;
    double alpha = 0.5;
    int l_max = 2;
    DegreeNorm degree_norm = DegreeNorm::combined;
    RowNorm row_norm = RowNorm::max;
    bool boost = true;
    int k = 40;
    int n_max = 10;
    int cold_start_threshold = 5;
    Fallback fallback = Fallback::none;
    std::filesystem::path output_dir = ".";
    std::int64_t seed = 0;  // recorded only; the pipeline is deterministic

    PipelineConfig pipeline() const { return {alpha, l_max, degree_norm, row_norm, boost, k}; }

    /// Throws Error when a pipeline rule is violated, n_max < 1, threshold < 2, or an input
    /// path does not exist.
    void validate() const;
};

/// Reads a flat JSON object with RunConfig keys into `cfg`, leaving absent keys untouched.
/// Unknown keys and mistyped values raise Error.
void merge_config_file(RunConfig& cfg, const std::filesystem::path& file);

}  // namespace trustkatz::cli
