#include "run_config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>

#include "trustkatz/error.hpp"

namespace trustkatz::cli {

void RunConfig::validate() const {
    pipeline().validate();
    if (n_max < 1) throw Error("n_max must be >= 1");
    if (cold_start_threshold < 2) throw Error("cold_start_threshold must be >= 2");
    for (const auto& p : {trust_path, ratings_path}) {
        if (p.empty()) throw Error("trust_path and ratings_path are required");
        if (!std::filesystem::exists(p)) throw Error("file not found: " + p.string());
    }
}

void merge_config_file(RunConfig& cfg, const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("cannot open config file: " + file.string());
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("config file " + file.string() + ": " + e.what());
    }
    if (!j.is_object()) throw Error("config file must hold a JSON object");

    try {
        for (const auto& [key, value] : j.items()) {
            if (key == "trust_path")
                cfg.trust_path = value.get<std::string>();
            else if (key == "ratings_path")
                cfg.ratings_path = value.get<std::string>();
            else if (key == "alpha")
                cfg.alpha = value.get<double>();
            else if (key == "l_max")
                cfg.l_max = value.get<int>();
            else if (key == "degree_norm") {
                auto d = parse_degree_norm(value.get<std::string>());
                if (!d) throw Error("config: unknown degree_norm '" + value.get<std::string>() + "'");
                cfg.degree_norm = *d;
            } else if (key == "row_norm") {
                auto r = parse_row_norm(value.get<std::string>());
                if (!r) throw Error("config: unknown row_norm '" + value.get<std::string>() + "'");
                cfg.row_norm = *r;
            } else if (key == "boost")
                cfg.boost = value.get<bool>();
            else if (key == "k")
                cfg.k = value.get<int>();
            else if (key == "n_max")
                cfg.n_max = value.get<int>();
            else if (key == "cold_start_threshold")
                cfg.cold_start_threshold = value.get<int>();
            else if (key == "fallback") {
                auto f = parse_fallback(value.get<std::string>());
                if (!f) throw Error("config: unknown fallback '" + value.get<std::string>() + "'");
                cfg.fallback = *f;
            } else if (key == "output_dir")
                cfg.output_dir = value.get<std::string>();
            else if (key == "seed")
                cfg.seed = value.get<std::int64_t>();
            else
                throw Error("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error("config file " + file.string() + ": " + e.what());
    }
}

}  // namespace trustkatz::cli
