#include "trustkatz/recommender.hpp"

#include <algorithm>
#include <cctype>

#include "trustkatz/error.hpp"

namespace trustkatz {

namespace {

/// Sorts by (score desc, popularity desc, index asc) and keeps the first `n`.
void rank(RankedItems& items, const std::vector<std::uint32_t>& popularity, int n) {
    auto before = [&](const ScoredItem& a, const ScoredItem& b) {
        if (a.score != b.score) return a.score > b.score;
        auto pa = popularity[a.item], pb = popularity[b.item];
        if (pa != pb) return pa > pb;
        return a.item < b.item;
    };
    auto keep = std::min<std::size_t>(static_cast<std::size_t>(n), items.size());
    std::partial_sort(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(keep), items.end(),
                      before);
    items.resize(keep);
}

std::string lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

RankedItems recommend_knn(UserIndex user, const NeighborList& neighbors, const RatingsTable& train,
                          int n, const KnnOptions& opts) {
    if (n < 1) throw Error("n must be >= 1");
    std::vector<ScoredItem> contributions;
    for (const auto& nb : neighbors)
        for (const auto& r : train.ratings_of(nb.user))
            if (!opts.min_rating || r.value >= *opts.min_rating)
                contributions.push_back({r.item, nb.similarity * r.value});

    // Stable sort keeps neighbor order within an item, so sums are order-deterministic.
    std::stable_sort(contributions.begin(), contributions.end(),
                     [](const ScoredItem& a, const ScoredItem& b) { return a.item < b.item; });
    RankedItems scored;
    auto own = train.ratings_of(user);
    auto own_it = own.begin();
    for (std::size_t p = 0; p < contributions.size();) {
        ItemIndex item = contributions[p].item;
        double sum = 0.0;
        for (; p < contributions.size() && contributions[p].item == item; ++p)
            sum += contributions[p].score;
        while (own_it != own.end() && own_it->item < item) ++own_it;
        if (own_it != own.end() && own_it->item == item) continue;
        scored.push_back({item, sum});
    }
    rank(scored, train.item_counts(), n);
    return scored;
}

RankedItems recommend_most_popular(const RatingsTable& train, UserIndex user, int n) {
    if (n < 1) throw Error("n must be >= 1");
    const auto& counts = train.item_counts();
    RankedItems items;
    for (ItemIndex i = 0; i < counts.size(); ++i)
        if (counts[i] > 0 && !train.has_rated(user, i)) items.push_back({i, double(counts[i])});
    rank(items, counts, n);
    return items;
}

std::string_view to_string(Fallback f) { return f == Fallback::none ? "none" : "mp"; }

std::optional<Fallback> parse_fallback(std::string_view s) {
    auto v = lower(s);
    if (v == "none") return Fallback::none;
    if (v == "mp") return Fallback::most_popular;
    return std::nullopt;
}

Approach Approach::katz(const PipelineConfig& cfg) {
    cfg.validate();
    Approach a(Kind::katz);
    a.pipeline_ = cfg;
    return a;
}

Approach Approach::parse(std::string_view name, const PipelineConfig& defaults) {
    auto v = lower(name);
    if (v == "mp") return most_popular();
    if (v == "trust_exp") return trust_exp();
    if (v == "trust_jac") return trust_jac();
    if (auto cfg = PipelineConfig::from_code(v)) {
        cfg->alpha = defaults.alpha;
        cfg->k = defaults.k;
        return katz(*cfg);
    }
    throw Error("unknown approach '" + std::string(name) + "'");
}

std::string Approach::name() const {
    switch (kind_) {
        case Kind::katz: return pipeline_.code();
        case Kind::trust_exp: return "Trust_exp";
        case Kind::trust_jac: return "Trust_jac";
        case Kind::most_popular: return "MP";
    }
    return {};
}

SimilarityMatrix similarity_for(const Approach& approach, const SparseMatrix& adjacency,
                                const ComputeOptions& opts) {
    switch (approach.kind()) {
        case Approach::Kind::katz: return build_similarity(adjacency, approach.pipeline(), opts);
        case Approach::Kind::trust_exp: return adjacency_similarity(adjacency);
        case Approach::Kind::trust_jac: return jaccard_similarity(adjacency, opts);
        case Approach::Kind::most_popular: break;
    }
    throw Error("approach " + approach.name() + " has no similarity matrix");
}

RankedItems recommend(const Approach& approach, UserIndex user, const SimilarityMatrix* similarity,
                      const RatingsTable& train, int n, const RecommendOptions& opts) {
    if (!approach.uses_similarity()) return recommend_most_popular(train, user, n);
    if (similarity == nullptr) throw Error("approach " + approach.name() + " needs a similarity matrix");
    auto neighbors = top_k_neighbors(*similarity, user, opts.k);
    auto items = recommend_knn(user, neighbors, train, n, opts.knn);
    if (items.empty() && opts.fallback == Fallback::most_popular)
        return recommend_most_popular(train, user, n);
    return items;
}

}  // namespace trustkatz
