#include "trustkatz/pipeline_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

#include "trustkatz/error.hpp"

namespace trustkatz {

namespace {

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

bool consume(std::string_view& s, std::string_view prefix) {
    if (!s.starts_with(prefix)) return false;
    s.remove_prefix(prefix.size());
    return true;
}

}  // namespace

std::string_view to_string(DegreeNorm d) {
    switch (d) {
        case DegreeNorm::none: return "none";
        case DegreeNorm::in: return "in";
        case DegreeNorm::out: return "out";
        case DegreeNorm::combined: return "combined";
    }
    return "none";
}

std::string_view to_string(RowNorm r) {
    switch (r) {
        case RowNorm::none: return "none";
        case RowNorm::l1: return "l1";
        case RowNorm::l2: return "l2";
        case RowNorm::max: return "max";
    }
    return "none";
}

std::optional<DegreeNorm> parse_degree_norm(std::string_view s) {
    auto v = lower(s);
    if (v == "none") return DegreeNorm::none;
    if (v == "in") return DegreeNorm::in;
    if (v == "out") return DegreeNorm::out;
    if (v == "combined") return DegreeNorm::combined;
    return std::nullopt;
}

std::optional<RowNorm> parse_row_norm(std::string_view s) {
    auto v = lower(s);
    if (v == "none") return RowNorm::none;
    if (v == "l1") return RowNorm::l1;
    if (v == "l2") return RowNorm::l2;
    if (v == "max") return RowNorm::max;
    return std::nullopt;
}

void PipelineConfig::validate() const {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) throw Error("alpha must be a positive finite number");
    if (l_max < 0) throw Error("l_max must be >= 0");
    if (k < 1) throw Error("k must be >= 1");
    if (boost && row_norm == RowNorm::none) throw Error("boost requires a row normalization");
}

std::string PipelineConfig::code() const {
    std::string c = "KS_";
    if (l_max == 1)
        c += 'N';
    else if (l_max == 2)
        c += 'P';
    else
        c += "L" + std::to_string(l_max);
    switch (degree_norm) {
        case DegreeNorm::none: c += 'N'; break;
        case DegreeNorm::in: c += 'I'; break;
        case DegreeNorm::out: c += 'O'; break;
        case DegreeNorm::combined: c += 'C'; break;
    }
    switch (row_norm) {
        case RowNorm::none: c += 'N'; break;
        case RowNorm::l1: c += "L1"; break;
        case RowNorm::l2: c += "L2"; break;
        case RowNorm::max: c += 'M'; break;
    }
    c += boost ? 'B' : 'N';
    return c;
}

std::optional<PipelineConfig> PipelineConfig::from_code(std::string_view code) {
    std::string upper(code);
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
    std::string_view s(upper);
    PipelineConfig cfg;
    if (!consume(s, "KS_")) return std::nullopt;

    if (consume(s, "N")) {
        cfg.l_max = 1;
    } else if (consume(s, "P")) {
        cfg.l_max = 2;
    } else if (consume(s, "L")) {
        // Ln: digits followed by the degree letter.
        auto end = std::find_if(s.begin(), s.end(), [](char ch) { return !std::isdigit(ch); });
        auto digits = static_cast<std::size_t>(end - s.begin());
        if (digits == 0) return std::nullopt;
        auto [p, ec] = std::from_chars(s.data(), s.data() + digits, cfg.l_max);
        if (ec != std::errc{}) return std::nullopt;
        s.remove_prefix(digits);
    } else {
        return std::nullopt;
    }

    if (consume(s, "N"))
        cfg.degree_norm = DegreeNorm::none;
    else if (consume(s, "I"))
        cfg.degree_norm = DegreeNorm::in;
    else if (consume(s, "O"))
        cfg.degree_norm = DegreeNorm::out;
    else if (consume(s, "C"))
        cfg.degree_norm = DegreeNorm::combined;
    else
        return std::nullopt;

    if (consume(s, "L1"))
        cfg.row_norm = RowNorm::l1;
    else if (consume(s, "L2"))
        cfg.row_norm = RowNorm::l2;
    else if (consume(s, "M"))
        cfg.row_norm = RowNorm::max;
    else if (consume(s, "N"))
        cfg.row_norm = RowNorm::none;
    else
        return std::nullopt;

    if (s == "B")
        cfg.boost = true;
    else if (s == "N")
        cfg.boost = false;
    else
        return std::nullopt;
    return cfg;
}

}  // namespace trustkatz
