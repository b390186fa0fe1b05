#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustkatz/neighbors.hpp"
#include "trustkatz/pipeline_config.hpp"
#include "trustkatz/ratings.hpp"
#include "trustkatz/similarity.hpp"

namespace trustkatz {

struct ScoredItem {
    ItemIndex item;
    double score;

    friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Items ordered by score (desc), then training popularity (desc), then index (asc).
using RankedItems = std::vector<ScoredItem>;

struct KnnOptions {
    /// Neighbor ratings below this value are ignored. Unset means every rating counts.
    std::optional<double> min_rating;
};

/// Scores each item as the similarity-weighted sum of neighbor ratings and returns the top
/// `n`, skipping items `user` already rated in `train`.
RankedItems recommend_knn(UserIndex user, const NeighborList& neighbors, const RatingsTable& train,
                          int n, const KnnOptions& opts = {});

/// Items by training rating count, ties by index; items `user` rated are skipped.
RankedItems recommend_most_popular(const RatingsTable& train, UserIndex user, int n);

enum class Fallback { none, most_popular };

std::string_view to_string(Fallback f);
std::optional<Fallback> parse_fallback(std::string_view s);  // "none" or "mp"

/// Names one recommendation approach: a Katz pipeline cell or one of the baselines.
class Approach {
public:
    enum class Kind { katz, trust_exp, trust_jac, most_popular };

    static Approach katz(const PipelineConfig& cfg);
    static Approach trust_exp() { return Approach(Kind::trust_exp); }
    static Approach trust_jac() { return Approach(Kind::trust_jac); }
    static Approach most_popular() { return Approach(Kind::most_popular); }

    /// Parses "mp", "trust_exp", "trust_jac" or a Katz code such as "ks_pcmb"
    /// (case-insensitive). Katz codes take alpha from `defaults`. Throws Error on
    /// anything else.
    static Approach parse(std::string_view name, const PipelineConfig& defaults = {});

    Kind kind() const noexcept { return kind_; }
    /// Meaningful for Kind::katz only.
    const PipelineConfig& pipeline() const noexcept { return pipeline_; }
    bool uses_similarity() const noexcept { return kind_ != Kind::most_popular; }

    /// "MP", "Trust_exp", "Trust_jac" or the Katz code.
    std::string name() const;

    friend bool operator==(const Approach&, const Approach&) = default;

private:
    explicit Approach(Kind k) : kind_(k) {}

    Kind kind_;
    PipelineConfig pipeline_{};
};

/// Similarity matrix the approach selects neighbors from. Throws for MP.
SimilarityMatrix similarity_for(const Approach& approach, const SparseMatrix& adjacency,
                                const ComputeOptions& opts = {});

struct RecommendOptions {
    int k = 40;
    Fallback fallback = Fallback::none;
    KnnOptions knn;
};

/// Dispatches to k-NN over `similarity` or to the popularity ranking. `similarity` may be
/// null only for MP.
RankedItems recommend(const Approach& approach, UserIndex user, const SimilarityMatrix* similarity,
                      const RatingsTable& train, int n, const RecommendOptions& opts = {});

}  // namespace trustkatz
