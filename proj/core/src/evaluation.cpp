#include "trustkatz/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

#include "trustkatz/error.hpp"
#include "trustkatz/parallel.hpp"

namespace trustkatz {

namespace {

std::size_t hits_in_top(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant,
                        int n) {
    std::size_t hits = 0;
    auto top = std::min<std::size_t>(recommended.size(), static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < top; ++r)
        if (std::binary_search(relevant.begin(), relevant.end(), recommended[r].item)) ++hits;
    return hits;
}

void require_positive_n(int n) {
    if (n < 1) throw Error("n must be >= 1");
}

}  // namespace

EvalSplit cold_start_split(const RatingsTable& ratings, int threshold,
                           std::optional<double> min_relevant_rating) {
    if (threshold < 2) throw Error("cold-start threshold must be >= 2");
    EvalSplit split;
    split.threshold = threshold;
    std::vector<Rating> train;
    train.reserve(ratings.size());
    for (UserIndex u = 0; u < ratings.num_users(); ++u) {
        auto rs = ratings.ratings_of(u);
        if (rs.empty()) continue;
        if (rs.size() >= static_cast<std::size_t>(threshold)) {
            for (const auto& r : rs) train.push_back({u, r.item, r.value});
            continue;
        }
        std::vector<ItemIndex> relevant;
        for (const auto& r : rs)
            if (!min_relevant_rating || r.value >= *min_relevant_rating) relevant.push_back(r.item);
        if (relevant.empty()) continue;
        split.targets.push_back(u);
        split.relevant.push_back(std::move(relevant));
    }
    if (split.targets.empty())
        throw Error("no cold-start users at threshold " + std::to_string(threshold));
    split.train = RatingsTable(ratings.shared_ids(), std::move(train));
    return split;
}

double precision_at_n(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant,
                      int n) {
    require_positive_n(n);
    return static_cast<double>(hits_in_top(recommended, relevant, n)) / n;
}

double recall_at_n(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant,
                   int n) {
    require_positive_n(n);
    if (relevant.empty()) return 0.0;
    return static_cast<double>(hits_in_top(recommended, relevant, n)) /
           static_cast<double>(relevant.size());
}

double ndcg_at_n(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant, int n) {
    require_positive_n(n);
    if (relevant.empty()) return 0.0;
    double dcg = 0.0;
    auto top = std::min<std::size_t>(recommended.size(), static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < top; ++r)
        if (std::binary_search(relevant.begin(), relevant.end(), recommended[r].item))
            dcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    double idcg = 0.0;
    auto ideal = std::min<std::size_t>(relevant.size(), static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < ideal; ++r) idcg += 1.0 / std::log2(static_cast<double>(r) + 2.0);
    return dcg / idcg;
}

const MetricsAtN& MetricsReport::at_n(int n) const {
    if (n < 1 || static_cast<std::size_t>(n) > at.size())
        throw Error("report for " + approach.name() + " has no metrics at n = " + std::to_string(n));
    return at[static_cast<std::size_t>(n - 1)];
}

namespace {

/// Per-user metrics for targets [begin, end) of `split`.
std::vector<UserMetrics> evaluate_users(const Approach& approach, const EvalSplit& split,
                                        const SimilarityMatrix* similarity, const EvalOptions& opts,
                                        std::size_t begin, std::size_t end) {
    const auto n_max = static_cast<std::size_t>(opts.n_max);
    RecommendOptions rec_opts{opts.k, opts.fallback, opts.knn};
    std::vector<UserMetrics> per_user(end - begin);
    parallel_for(per_user.size(), opts.compute.threads, 64, [&](std::size_t b, std::size_t e) {
        for (std::size_t p = b; p < e; ++p) {
            std::size_t t = begin + p;
            UserIndex u = split.targets[t];
            auto recs = recommend(approach, u, similarity, split.train, opts.n_max, rec_opts);
            const auto& rel = split.relevant[t];
            per_user[p].user = u;
            per_user[p].at.resize(n_max);
            for (int n = 1; n <= opts.n_max; ++n)
                per_user[p].at[static_cast<std::size_t>(n - 1)] = {
                    ndcg_at_n(recs, rel, n), recall_at_n(recs, rel, n), precision_at_n(recs, rel, n)};
        }
    });
    return per_user;
}

MetricsReport aggregate(const Approach& approach, std::vector<UserMetrics> per_user,
                        const EvalOptions& opts) {
    const auto n_max = static_cast<std::size_t>(opts.n_max);
    MetricsReport report;
    report.approach = approach;
    report.n_max = opts.n_max;
    report.users_evaluated = per_user.size();
    report.at.assign(n_max, {});
    // Fixed user order keeps the floating-point reduction independent of the thread count.
    for (const auto& um : per_user)
        for (std::size_t p = 0; p < n_max; ++p) {
            report.at[p].ndcg += um.at[p].ndcg;
            report.at[p].recall += um.at[p].recall;
            report.at[p].precision += um.at[p].precision;
        }
    if (!per_user.empty()) {
        auto count = static_cast<double>(per_user.size());
        for (auto& m : report.at) {
            m.ndcg /= count;
            m.recall /= count;
            m.precision /= count;
        }
    }
    if (opts.keep_details) report.details = std::move(per_user);
    return report;
}

void check_split(const EvalSplit& split, const EvalOptions& opts) {
    require_positive_n(opts.n_max);
    if (split.targets.size() != split.relevant.size()) throw Error("malformed split");
}

}  // namespace

MetricsReport evaluate_with_similarity(const Approach& approach, const EvalSplit& split,
                                       const SimilarityMatrix* similarity, const EvalOptions& opts) {
    check_split(split, opts);
    return aggregate(approach,
                     evaluate_users(approach, split, similarity, opts, 0, split.targets.size()), opts);
}

MetricsReport evaluate_approach(const Approach& approach, const EvalSplit& split,
                                const SparseMatrix& adjacency, const EvalOptions& opts) {
    if (!approach.uses_similarity()) return evaluate_with_similarity(approach, split, nullptr, opts);
    ComputeOptions compute = opts.compute;
    compute.rows = split.targets;
    auto sim = similarity_for(approach, adjacency, compute);
    return evaluate_with_similarity(approach, split, &sim, opts);
}

std::vector<Approach> grid_approaches(double alpha, int k) {
    std::vector<Approach> out{Approach::trust_exp(), Approach::trust_jac(), Approach::most_popular()};
    for (int l_max : {1, 2})
        for (auto d : {DegreeNorm::none, DegreeNorm::in, DegreeNorm::out, DegreeNorm::combined})
            for (auto r : {RowNorm::none, RowNorm::l1, RowNorm::l2, RowNorm::max})
                for (bool b : {false, true}) {
                    if (b && r == RowNorm::none) continue;
                    if (b && l_max == 1) continue;
                    out.push_back(Approach::katz({alpha, l_max, d, r, b, k}));
                }
    return out;
}

const std::vector<std::string>& reported_approach_names() {
    static const std::vector<std::string> names{
        "Trust_exp", "Trust_jac", "MP",      "KS_PCMB", "KS_PCMN",
        "KS_PCL1B",  "KS_PNL2B",  "KS_NCMN", "KS_NINN", "KS_PNNN"};
    return names;
}

std::vector<MetricsReport> run_grid(const EvalSplit& split, const SparseMatrix& adjacency,
                                    double alpha, const EvalOptions& opts) {
    check_split(split, opts);
    const auto approaches = grid_approaches(alpha, opts.k);
    const auto adjacency_sim = adjacency_similarity(adjacency);
    std::vector<std::vector<UserMetrics>> per_user(approaches.size());

    // Targets are processed in blocks so only one block of similarity rows is alive at a time.
    const std::size_t block = std::max<std::size_t>(opts.grid_block_users, 1);
    for (std::size_t begin = 0; begin < split.targets.size(); begin += block) {
        std::size_t end = std::min(split.targets.size(), begin + block);
        ComputeOptions compute = opts.compute;
        compute.rows = std::vector<UserIndex>(split.targets.begin() + static_cast<std::ptrdiff_t>(begin),
                                              split.targets.begin() + static_cast<std::ptrdiff_t>(end));
        std::optional<SimilarityMatrix> katz;
        int katz_l_max = -1;
        for (std::size_t a = 0; a < approaches.size(); ++a) {
            const auto& approach = approaches[a];
            std::vector<UserMetrics> block_metrics;
            switch (approach.kind()) {
                case Approach::Kind::most_popular:
                    block_metrics = evaluate_users(approach, split, nullptr, opts, begin, end);
                    break;
                case Approach::Kind::trust_exp:
                    block_metrics = evaluate_users(approach, split, &adjacency_sim, opts, begin, end);
                    break;
                case Approach::Kind::trust_jac: {
                    auto sim = jaccard_similarity(adjacency, compute);
                    block_metrics = evaluate_users(approach, split, &sim, opts, begin, end);
                    break;
                }
                case Approach::Kind::katz: {
                    const auto& cfg = approach.pipeline();
                    if (cfg.l_max != katz_l_max) {
                        katz.reset();
                        katz = katz_truncated(adjacency, alpha, cfg.l_max, compute);
                        katz_l_max = cfg.l_max;
                    }
                    auto sim = apply_pipeline(*katz, adjacency, cfg);
                    block_metrics = evaluate_users(approach, split, &sim, opts, begin, end);
                    break;
                }
            }
            auto& dst = per_user[a];
            dst.insert(dst.end(), std::make_move_iterator(block_metrics.begin()),
                       std::make_move_iterator(block_metrics.end()));
        }
    }

    std::vector<MetricsReport> reports;
    reports.reserve(approaches.size());
    for (std::size_t a = 0; a < approaches.size(); ++a)
        reports.push_back(aggregate(approaches[a], std::move(per_user[a]), opts));
    return reports;
}

std::vector<CurvePoint> emit_pr_curve(const std::vector<MetricsReport>& reports, int n_first,
                                      int n_last) {
    require_positive_n(n_first);
    std::vector<CurvePoint> rows;
    for (const auto& r : reports)
        for (int n = n_first; n <= n_last; ++n) {
            const auto& m = r.at_n(n);
            rows.push_back({r.approach.name(), n, m.recall, m.precision});
        }
    return rows;
}

}  // namespace trustkatz
