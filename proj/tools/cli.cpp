#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <nlohmann/json.hpp>
#include <optional>

#include "run_config.hpp"
#include "trustkatz/error.hpp"
#include "trustkatz/evaluation.hpp"
#include "trustkatz/ingest.hpp"
#include "trustkatz/report_csv.hpp"
#include "trustkatz/similarity_io.hpp"

namespace trustkatz::cli {

namespace fs = std::filesystem;

namespace {

/// Values given on the command line; unset members fall back to the config file.
struct Flags {
    std::optional<std::string> config;
    std::optional<std::string> trust;
    std::optional<std::string> ratings;
    std::optional<double> alpha;
    std::optional<int> l_max;
    std::optional<std::string> degree_norm;
    std::optional<std::string> row_norm;
    std::optional<bool> boost;
    std::optional<int> k;
    std::optional<int> n_max;
    std::optional<int> threshold;
    std::optional<std::string> fallback;
    std::optional<std::string> output_dir;
    std::optional<std::int64_t> seed;
    std::optional<unsigned> threads;
    std::optional<std::string> cache;
    bool details = false;
};

void add_common_options(CLI::App& cmd, Flags& f) {
    cmd.add_option("-c,--config", f.config, "JSON config file");
    cmd.add_option("--trust", f.trust, "Trust edge file (source target [weight])");
    cmd.add_option("--ratings", f.ratings, "Ratings file (user item rating)");
    cmd.add_option("--threads", f.threads, "Worker threads (default: $TRUSTKATZ_THREADS or all cores)");
}

void add_pipeline_options(CLI::App& cmd, Flags& f) {
    cmd.add_option("--alpha", f.alpha, "Katz attenuation factor");
    cmd.add_option("--l-max", f.l_max, "Longest path length in the Katz sum");
    cmd.add_option("--degree-norm", f.degree_norm, "none|in|out|combined");
    cmd.add_option("--row-norm", f.row_norm, "none|l1|l2|max");
    cmd.add_option("--boost", f.boost, "Boost weak ties (true|false)");
    cmd.add_option("-k,--k", f.k, "Neighborhood size");
    cmd.add_option("--fallback", f.fallback, "none|mp");
    cmd.add_option("--cache", f.cache, "Directory for cached similarity matrices");
}

void add_eval_options(CLI::App& cmd, Flags& f) {
    cmd.add_option("--n-max", f.n_max, "Largest list length n");
    cmd.add_option("--threshold", f.threshold, "Cold-start rating-count threshold");
    cmd.add_option("-o,--output-dir", f.output_dir, "Directory for CSV outputs");
    cmd.add_option("--seed", f.seed, "Recorded in run.json only");
    cmd.add_flag("--details", f.details, "Also write per-user metrics");
}

template <typename T, typename Parse>
T parse_enum(const std::string& text, Parse parse, const char* what) {
    auto v = parse(text);
    if (!v) throw Error(std::string("unknown ") + what + " '" + text + "'");
    return *v;
}

RunConfig resolve(const Flags& f) {
    RunConfig cfg;
    if (f.config) merge_config_file(cfg, *f.config);
    if (f.trust) cfg.trust_path = *f.trust;
    if (f.ratings) cfg.ratings_path = *f.ratings;
    if (f.alpha) cfg.alpha = *f.alpha;
    if (f.l_max) cfg.l_max = *f.l_max;
    if (f.degree_norm) cfg.degree_norm = parse_enum<DegreeNorm>(*f.degree_norm, parse_degree_norm, "degree norm");
    if (f.row_norm) cfg.row_norm = parse_enum<RowNorm>(*f.row_norm, parse_row_norm, "row norm");
    if (f.boost) cfg.boost = *f.boost;
    if (f.k) cfg.k = *f.k;
    if (f.n_max) cfg.n_max = *f.n_max;
    if (f.threshold) cfg.cold_start_threshold = *f.threshold;
    if (f.fallback) cfg.fallback = parse_enum<Fallback>(*f.fallback, parse_fallback, "fallback");
    if (f.output_dir) cfg.output_dir = *f.output_dir;
    if (f.seed) cfg.seed = *f.seed;
    cfg.validate();
    return cfg;
}

unsigned thread_count(const Flags& f) {
    if (f.threads) return *f.threads;
    if (const char* env = std::getenv("TRUSTKATZ_THREADS")) {
        char* end = nullptr;
        unsigned long v = std::strtoul(env, &end, 10);
        if (end == env || *end != '\0') throw Error(std::string("TRUSTKATZ_THREADS is not a number: ") + env);
        return static_cast<unsigned>(v);
    }
    return 0;
}

struct Dataset {
    TrustGraph graph;
    RatingsTable ratings;
    SparseMatrix adjacency;
};

Dataset load(const RunConfig& cfg) {
    Dataset d;
    std::ifstream trust(cfg.trust_path);
    if (!trust) throw Error("cannot open " + cfg.trust_path.string());
    try {
        d.graph = load_trust_edges(trust);
    } catch (const Error& e) {
        throw Error(cfg.trust_path.string() + ": " + e.what());
    }
    std::ifstream ratings(cfg.ratings_path);
    if (!ratings) throw Error("cannot open " + cfg.ratings_path.string());
    try {
        d.ratings = load_ratings(ratings, d.graph);
    } catch (const Error& e) {
        throw Error(cfg.ratings_path.string() + ": " + e.what());
    }
    d.adjacency = adjacency(d.graph, d.ratings.num_users());
    return d;
}

EvalOptions eval_options(const RunConfig& cfg, const Flags& f) {
    EvalOptions opts;
    opts.k = cfg.k;
    opts.n_max = cfg.n_max;
    opts.fallback = cfg.fallback;
    opts.compute.threads = thread_count(f);
    opts.keep_details = f.details;
    return opts;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

Approach resolve_approach(const std::string& name, const RunConfig& cfg) {
    if (lower(name) == "ks") return Approach::katz(cfg.pipeline());
    return Approach::parse(name, cfg.pipeline());
}

std::string file_identity(const fs::path& p) {
    return p.string() + ":" + std::to_string(fs::file_size(p));
}

/// Similarity rows for `rows`, read from or written to the cache directory when one is set.
SimilarityMatrix similarity_rows(const Approach& approach, const Dataset& data, const RunConfig& cfg,
                                 const Flags& f, std::vector<UserIndex> rows,
                                 const std::string& rows_tag) {
    ComputeOptions compute;
    compute.threads = thread_count(f);
    compute.rows = std::move(rows);
    if (!f.cache) return similarity_for(approach, data.adjacency, compute);

    char alpha[40];
    std::snprintf(alpha, sizeof alpha, "%.17g", cfg.alpha);
    std::string key = approach.name() + " alpha=" + alpha + " trust=" + file_identity(cfg.trust_path) +
                      " ratings=" + file_identity(cfg.ratings_path) + " rows=" + rows_tag;
    fs::path dir(*f.cache);
    fs::create_directories(dir);
    fs::path file = dir / (lower(approach.name()) + ".sim");
    if (std::ifstream in(file); in) {
        if (auto s = read_similarity(in, key)) return std::move(*s);
    }
    auto s = similarity_for(approach, data.adjacency, compute);
    std::ofstream out(file);
    write_similarity(out, s, key);
    if (!out) throw Error("failed to write cache file " + file.string());
    return s;
}

template <typename Writer>
void write_file(const fs::path& path, Writer&& writer) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    writer(out);
    out.flush();
    if (!out) throw Error("failed writing " + path.string());
}

void write_run_record(const fs::path& path, const RunConfig& cfg, const IngestSummary& summary,
                      const std::string& command) {
    nlohmann::ordered_json j;
    j["command"] = command;
    j["trust_path"] = cfg.trust_path.string();
    j["ratings_path"] = cfg.ratings_path.string();
    j["alpha"] = cfg.alpha;
    j["l_max"] = cfg.l_max;
    j["degree_norm"] = to_string(cfg.degree_norm);
    j["row_norm"] = to_string(cfg.row_norm);
    j["boost"] = cfg.boost;
    j["k"] = cfg.k;
    j["n_max"] = cfg.n_max;
    j["cold_start_threshold"] = cfg.cold_start_threshold;
    j["fallback"] = to_string(cfg.fallback);
    j["seed"] = cfg.seed;
    j["ingest"] = nlohmann::json::parse(to_json(summary));
    write_file(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

int cmd_ingest(const Flags& f, std::ostream& out) {
    auto cfg = resolve(f);
    auto data = load(cfg);
    out << to_json(summarize(data.graph, data.ratings)) << '\n';
    return 0;
}

int cmd_evaluate(const Flags& f, const std::string& approach_name, std::ostream& out) {
    auto cfg = resolve(f);
    auto approach = resolve_approach(approach_name, cfg);
    auto data = load(cfg);
    auto split = cold_start_split(data.ratings, cfg.cold_start_threshold);
    auto opts = eval_options(cfg, f);

    MetricsReport report;
    if (approach.uses_similarity()) {
        auto sim = similarity_rows(approach, data, cfg, f, split.targets,
                                   "cold-start<" + std::to_string(cfg.cold_start_threshold));
        report = evaluate_with_similarity(approach, split, &sim, opts);
    } else {
        report = evaluate_with_similarity(approach, split, nullptr, opts);
    }

    auto stem = lower(approach.name());
    auto metrics_path = cfg.output_dir / ("metrics_" + stem + ".csv");
    write_file(metrics_path, [&](std::ostream& o) { write_metrics_csv(o, {report}); });
    out << "wrote " << metrics_path.string() << '\n';
    if (f.details) {
        auto details_path = cfg.output_dir / ("details_" + stem + ".csv");
        write_file(details_path, [&](std::ostream& o) { write_details_csv(o, {report}, data.ratings.ids()); });
        out << "wrote " << details_path.string() << '\n';
    }
    const auto& m = report.at_n(cfg.n_max);
    char line[160];
    std::snprintf(line, sizeof line, "%s users=%zu ndcg@%d=%.4f recall@%d=%.4f precision@%d=%.4f\n",
                  approach.name().c_str(), report.users_evaluated, cfg.n_max, m.ndcg, cfg.n_max,
                  m.recall, cfg.n_max, m.precision);
    out << line;
    return 0;
}

int cmd_grid(const Flags& f, std::ostream& out) {
    auto cfg = resolve(f);
    auto data = load(cfg);
    auto split = cold_start_split(data.ratings, cfg.cold_start_threshold);
    auto opts = eval_options(cfg, f);
    auto reports = run_grid(split, data.adjacency, cfg.alpha, opts);

    auto metrics_path = cfg.output_dir / "metrics.csv";
    auto curve_path = cfg.output_dir / "pr_curve.csv";
    write_file(metrics_path, [&](std::ostream& o) { write_metrics_csv(o, reports); });
    write_file(curve_path, [&](std::ostream& o) { write_curve_csv(o, emit_pr_curve(reports, 1, cfg.n_max)); });
    if (f.details) {
        write_file(cfg.output_dir / "details.csv",
                   [&](std::ostream& o) { write_details_csv(o, reports, data.ratings.ids()); });
    }
    write_run_record(cfg.output_dir / "run.json", cfg, summarize(data.graph, data.ratings), "grid");

    const int n = std::min(10, cfg.n_max);
    std::vector<const MetricsReport*> ranked;
    for (const auto& r : reports) ranked.push_back(&r);
    std::stable_sort(ranked.begin(), ranked.end(), [n](const MetricsReport* a, const MetricsReport* b) {
        return a->at_n(n).ndcg > b->at_n(n).ndcg;
    });
    char line[160];
    std::snprintf(line, sizeof line, "%-5s %-10s %10s %10s %10s  (%zu cold-start users)\n", "rank",
                  "approach", ("ndcg@" + std::to_string(n)).c_str(), ("recall@" + std::to_string(n)).c_str(),
                  ("prec@" + std::to_string(n)).c_str(), split.targets.size());
    out << line;
    for (std::size_t p = 0; p < ranked.size(); ++p) {
        const auto& m = ranked[p]->at_n(n);
        std::snprintf(line, sizeof line, "%-5zu %-10s %10.4f %10.4f %10.4f\n", p + 1,
                      ranked[p]->approach.name().c_str(), m.ndcg, m.recall, m.precision);
        out << line;
    }
    out << "wrote " << metrics_path.string() << " and " << curve_path.string() << '\n';
    return 0;
}

int cmd_curve(const std::string& metrics_file, const std::string& out_file,
              std::vector<std::string> approaches, int n_first, std::optional<int> n_last,
              std::ostream& out) {
    std::ifstream in(metrics_file);
    if (!in) throw Error("file not found: " + metrics_file);
    auto reports = read_metrics_csv(in);
    if (approaches.empty()) {
        for (const auto& name : reported_approach_names())
            if (std::any_of(reports.begin(), reports.end(),
                            [&](const MetricsReport& r) { return r.approach.name() == name; }))
                approaches.push_back(name);
        if (approaches.empty())
            for (const auto& r : reports) approaches.push_back(r.approach.name());
    }
    std::vector<MetricsReport> chosen;
    for (const auto& name : approaches) {
        auto target = Approach::parse(name).name();
        auto it = std::find_if(reports.begin(), reports.end(),
                               [&](const MetricsReport& r) { return r.approach.name() == target; });
        if (it == reports.end()) throw Error("approach " + target + " not found in " + metrics_file);
        chosen.push_back(*it);
    }
    int last = n_last ? *n_last : std::min(10, chosen.empty() ? 10 : chosen.front().n_max);
    auto rows = emit_pr_curve(chosen, n_first, last);
    write_file(out_file, [&](std::ostream& o) { write_curve_csv(o, rows); });
    out << "wrote " << out_file << " (" << rows.size() << " rows)\n";
    return 0;
}

int cmd_recommend(const Flags& f, const std::string& approach_name, ExternalId user_id, int n,
                  std::ostream& out) {
    auto cfg = resolve(f);
    auto approach = resolve_approach(approach_name, cfg);
    auto data = load(cfg);
    auto user = data.ratings.ids().user_index(user_id);
    if (!user) throw Error("unknown user id " + std::to_string(user_id));

    RecommendOptions opts{cfg.k, cfg.fallback, {}};
    RankedItems items;
    if (approach.uses_similarity()) {
        auto sim = similarity_rows(approach, data, cfg, f, {*user}, "user<" + std::to_string(user_id));
        items = recommend(approach, *user, &sim, data.ratings, n, opts);
    } else {
        items = recommend(approach, *user, nullptr, data.ratings, n, opts);
    }
    out << "rank,item,score\n";
    char score[40];
    for (std::size_t p = 0; p < items.size(); ++p) {
        std::snprintf(score, sizeof score, "%.10f", items[p].score);
        out << p + 1 << ',' << data.ratings.ids().item_id(items[p].item) << ',' << score << '\n';
    }
    return 0;
}

void report_error(std::ostream& err, const std::string& message) {
    err << nlohmann::json{{"error", message}}.dump() << '\n';
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Trust-network Katz similarity recommender: ingestion, evaluation and grid runs"};
    app.name("trustkatz");
    app.require_subcommand(1);

    Flags f;
    auto* ingest = app.add_subcommand("ingest", "Load the input files and print an ingestion summary");
    add_common_options(*ingest, f);

    std::string approach = "ks";
    auto* evaluate = app.add_subcommand("evaluate", "Evaluate one approach on the cold-start split");
    add_common_options(*evaluate, f);
    add_pipeline_options(*evaluate, f);
    add_eval_options(*evaluate, f);
    evaluate->add_option("-a,--approach", approach,
                         "mp, trust_exp, trust_jac, a Katz code such as ks_pcmb, or ks for the configured pipeline");

    auto* grid = app.add_subcommand("grid", "Evaluate the full configuration grid and the baselines");
    add_common_options(*grid, f);
    add_pipeline_options(*grid, f);
    add_eval_options(*grid, f);

    std::string metrics_file = "metrics.csv", curve_file = "pr_curve.csv";
    std::vector<std::string> curve_approaches;
    int n_first = 1;
    std::optional<int> n_last;
    auto* curve = app.add_subcommand("curve", "Extract recall/precision points from a metrics CSV");
    curve->add_option("-m,--metrics", metrics_file, "Metrics CSV written by grid or evaluate");
    curve->add_option("-o,--out", curve_file, "Output CSV");
    curve->add_option("--approaches", curve_approaches, "Approaches to include (default: the reported set)")
        ->delimiter(',');
    curve->add_option("--n-first", n_first, "Smallest n");
    curve->add_option("--n-last", n_last, "Largest n (default: min(10, n_max))");

    ExternalId user_id = 0;
    int n = 10;
    auto* rec = app.add_subcommand("recommend", "Print the top-n items for one user");
    add_common_options(*rec, f);
    add_pipeline_options(*rec, f);
    rec->add_option("-u,--user", user_id, "External user id")->required();
    rec->add_option("-a,--approach", approach, "Approach name (see evaluate)");
    rec->add_option("-n,--n", n, "Number of items")->check(CLI::PositiveNumber);

    std::vector<const char*> argv{"trustkatz"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        report_error(err, e.what());
        return 2;
    }

    try {
        if (*ingest) return cmd_ingest(f, out);
        if (*evaluate) return cmd_evaluate(f, approach, out);
        if (*grid) return cmd_grid(f, out);
        if (*curve) return cmd_curve(metrics_file, curve_file, curve_approaches, n_first, n_last, out);
        if (*rec) return cmd_recommend(f, approach, user_id, n, out);
    } catch (const std::exception& e) {
        report_error(err, e.what());
        return 1;
    }
    return 1;
}

}  // namespace trustkatz::cli
