#include <benchmark/benchmark.h>

#include <map>
#include <sstream>

#include "generators.hpp"
#include "trustkatz/evaluation.hpp"
#include "trustkatz/similarity.hpp"

using namespace trustkatz;

namespace {

struct Corpus {
    TrustGraph graph;
    RatingsTable ratings;
    SparseMatrix a;
};

const Corpus& corpus(std::size_t users) {
    static std::map<std::size_t, Corpus> cache;
    auto it = cache.find(users);
    if (it != cache.end()) return it->second;
    auto text = testing::synthetic_corpus(7, users, users / 2, 10.0, 8.0);
    std::istringstream t(text.trust), r(text.ratings);
    Corpus c;
    c.graph = load_trust_edges(t);
    c.ratings = load_ratings(r, c.graph);
    c.a = adjacency(c.graph, c.ratings.num_users());
    return cache.emplace(users, std::move(c)).first->second;
}

void BM_katz_l2(benchmark::State& state) {
    const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
    std::size_t nnz = 0;
    for (auto _ : state) {
        auto s = katz_truncated(c.a, 0.5, 2);
        nnz = s.values.nnz();
        benchmark::DoNotOptimize(nnz);
    }
    state.counters["nnz"] = static_cast<double>(nnz);
}
BENCHMARK(BM_katz_l2)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_pipeline_pcmb(benchmark::State& state) {
    const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
    auto katz = katz_truncated(c.a, 0.5, 2);
    auto cfg = *PipelineConfig::from_code("KS_PCMB");
    for (auto _ : state) benchmark::DoNotOptimize(apply_pipeline(katz, c.a, cfg).values.nnz());
}
BENCHMARK(BM_pipeline_pcmb)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_jaccard(benchmark::State& state) {
    const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(jaccard_similarity(c.a).values.nnz());
}
BENCHMARK(BM_jaccard)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_evaluate_pcmb(benchmark::State& state) {
    const auto& c = corpus(static_cast<std::size_t>(state.range(0)));
    auto split = cold_start_split(c.ratings, 5);
    EvalOptions opts;
    auto approach = Approach::parse("KS_PCMB");
    for (auto _ : state) benchmark::DoNotOptimize(evaluate_approach(approach, split, c.a, opts).at_n(10).ndcg);
    state.counters["targets"] = static_cast<double>(split.targets.size());
}
BENCHMARK(BM_evaluate_pcmb)->Arg(2000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
