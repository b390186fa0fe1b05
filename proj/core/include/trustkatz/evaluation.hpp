#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "trustkatz/ratings.hpp"
#include "trustkatz/recommender.hpp"
#include "trustkatz/similarity.hpp"

namespace trustkatz {

/// Cold-start holdout: every rating of a target user is in `relevant`, none in `train`.
struct EvalSplit {
    RatingsTable train;
    std::vector<UserIndex> targets;                // ascending
    std::vector<std::vector<ItemIndex>> relevant;  // sorted, parallel to `targets`
    int threshold = 5;
};

/// Users with 1 <= rating count < threshold become targets and all their ratings move to the
/// test side. With `min_relevant_rating`, only held-out ratings at or above it count as
/// relevant and users left without relevant items are dropped. Throws when there are no
/// target users or threshold < 2.
EvalSplit cold_start_split(const RatingsTable& ratings, int threshold,
                           std::optional<double> min_relevant_rating = std::nullopt);

// Ranking metrics over the first n recommendations. `relevant` must be sorted.
double precision_at_n(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant,
                      int n);
double recall_at_n(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant,
                   int n);
/// Binary-relevance nDCG with a log2(rank + 1) discount.
double ndcg_at_n(std::span<const ScoredItem> recommended, std::span<const ItemIndex> relevant, int n);

struct MetricsAtN {
    double ndcg = 0.0;
    double recall = 0.0;
    double precision = 0.0;

    friend bool operator==(const MetricsAtN&, const MetricsAtN&) = default;
};

struct UserMetrics {
    UserIndex user;
    std::vector<MetricsAtN> at;  // at[n - 1]
};

struct MetricsReport {
    Approach approach = Approach::most_popular();
    int n_max = 0;
    std::size_t users_evaluated = 0;
    std::vector<MetricsAtN> at;  // macro averages, at[n - 1]
    std::vector<UserMetrics> details;

    const MetricsAtN& at_n(int n) const;
};

struct EvalOptions {
    int k = 40;
    int n_max = 10;
    Fallback fallback = Fallback::none;
    KnnOptions knn;
    /// Threads and memory budget for similarity construction and per-user evaluation.
    ComputeOptions compute;
    bool keep_details = false;
    /// Cold-start users whose similarity rows run_grid materializes at once.
    std::size_t grid_block_users = 4096;
};

/// Builds the approach's similarity rows for the target users, recommends from the training
/// ratings and macro-averages the metrics for n = 1..n_max.
MetricsReport evaluate_approach(const Approach& approach, const EvalSplit& split,
                                const SparseMatrix& adjacency, const EvalOptions& opts);

/// Same as evaluate_approach with a precomputed similarity matrix (null for MP). Only the
/// target users' rows are read.
MetricsReport evaluate_with_similarity(const Approach& approach, const EvalSplit& split,
                                       const SimilarityMatrix* similarity, const EvalOptions& opts);

/// The three baselines followed by every valid Katz cell over l_max in {1, 2}, degree
/// norm, row norm and boost. Boosted l_max = 1 cells are omitted: with only direct edges the
/// weak-tie matrix is empty and every one of them reduces to A, which KS_NNMN already yields.
std::vector<Approach> grid_approaches(double alpha, int k);

/// Approach names in the published results table, baselines first.
const std::vector<std::string>& reported_approach_names();

/// Evaluates every approach of `grid_approaches`. Target users are processed in blocks of
/// `opts.grid_block_users`; within a block the Katz sum is computed once per l_max and
/// shared between cells. Results do not depend on the block size.
std::vector<MetricsReport> run_grid(const EvalSplit& split, const SparseMatrix& adjacency,
                                    double alpha, const EvalOptions& opts);

struct CurvePoint {
    std::string approach;
    int n;
    double recall;
    double precision;

    friend bool operator==(const CurvePoint&, const CurvePoint&) = default;
};

/// Recall/precision rows for n in [n_first, n_last] per report. Throws when a report lacks
/// one of those n.
std::vector<CurvePoint> emit_pr_curve(const std::vector<MetricsReport>& reports, int n_first,
                                      int n_last);

}  // namespace trustkatz
