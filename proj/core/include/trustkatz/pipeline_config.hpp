#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace trustkatz {

enum class DegreeNorm { none, in, out, combined };
enum class RowNorm { none, l1, l2, max };

std::string_view to_string(DegreeNorm d);
std::string_view to_string(RowNorm r);

/// Accepts the names produced by `to_string` ("none", "in", "out", "combined" and
/// "none", "l1", "l2", "max"), case-insensitively.
std::optional<DegreeNorm> parse_degree_norm(std::string_view s);
std::optional<RowNorm> parse_row_norm(std::string_view s);

/// One cell of the Katz experiment grid.
struct PipelineConfig {
    double alpha = 0.5;
    int l_max = 2;
    DegreeNorm degree_norm = DegreeNorm::none;
    RowNorm row_norm = RowNorm::none;
    bool boost = false;
    int k = 40;

    /// Throws Error when alpha is not a positive finite number, l_max < 0, k < 1,
    /// or boost is requested without a row normalization.
    void validate() const;

    /// Short descriptor such as "KS_PCMB": path length (N = 1, P = 2, Ln otherwise),
    /// degree norm (N/I/O/C), row norm (N/L1/L2/M), boost (B/N).
    std::string code() const;

    /// Inverse of `code()` (case-insensitive); alpha and k keep their defaults.
    static std::optional<PipelineConfig> from_code(std::string_view code);

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

}  // namespace trustkatz
