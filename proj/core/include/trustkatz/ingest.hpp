#pragma once

#include <cstddef>
#include <string>

#include "trustkatz/ratings.hpp"
#include "trustkatz/trust_graph.hpp"

namespace trustkatz {

struct IngestSummary {
    std::size_t users = 0;  // trust-graph users plus users seen only in the ratings
    std::size_t edges = 0;
    std::size_t self_loops_dropped = 0;
    std::size_t duplicate_edges_dropped = 0;
    std::size_t ratings = 0;
    std::size_t duplicate_ratings_dropped = 0;

    friend bool operator==(const IngestSummary&, const IngestSummary&) = default;
};

IngestSummary summarize(const TrustGraph& graph, const RatingsTable& ratings);

/// Single-line JSON object with the summary fields.
std::string to_json(const IngestSummary& summary);

}  // namespace trustkatz
