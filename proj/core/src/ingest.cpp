#include "trustkatz/ingest.hpp"

#include <nlohmann/json.hpp>

namespace trustkatz {

IngestSummary summarize(const TrustGraph& graph, const RatingsTable& ratings) {
    return {ratings.num_users() > graph.num_users() ? ratings.num_users() : graph.num_users(),
            graph.edges().size(),
            graph.self_loops_dropped(),
            graph.duplicate_edges_dropped(),
            ratings.size(),
            ratings.duplicates_dropped()};
}

std::string to_json(const IngestSummary& s) {
    nlohmann::ordered_json j;
    j["users"] = s.users;
    j["edges"] = s.edges;
    j["self_loops_dropped"] = s.self_loops_dropped;
    j["duplicate_edges_dropped"] = s.duplicate_edges_dropped;
    j["ratings"] = s.ratings;
    j["duplicate_ratings_dropped"] = s.duplicate_ratings_dropped;
    return j.dump();
}

}  // namespace trustkatz
