#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <unordered_map>
#include <vector>

#include "trustkatz/sparse_matrix.hpp"
#include "trustkatz/types.hpp"

namespace trustkatz {

struct Edge {
    UserIndex source;
    UserIndex target;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Directed trust network over dense user indices.
///
/// Indices are assigned in order of first appearance in the edge file. The graph never
/// contains self-loops or duplicate edges; `self_loops_dropped()` and
/// `duplicate_edges_dropped()` report what ingestion discarded.
class TrustGraph {
public:
    TrustGraph() = default;

    /// Builds a graph from external-id edge pairs, dropping self-loops and duplicates.
    static TrustGraph from_edges(const std::vector<std::pair<ExternalId, ExternalId>>& edges);

    std::size_t num_users() const noexcept { return external_ids_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::optional<UserIndex> index_of(ExternalId id) const;
    ExternalId external_id(UserIndex index) const;
    const std::vector<ExternalId>& external_ids() const noexcept { return external_ids_; }

    std::size_t self_loops_dropped() const noexcept { return self_loops_dropped_; }
    std::size_t duplicate_edges_dropped() const noexcept { return duplicate_edges_dropped_; }

private:
    friend TrustGraph load_trust_edges(std::istream& in);

    UserIndex intern(ExternalId id);
    void add_edge(ExternalId source, ExternalId target);

    std::vector<Edge> edges_;
    std::unordered_map<ExternalId, UserIndex> index_;
    std::vector<ExternalId> external_ids_;
    std::size_t self_loops_dropped_ = 0;
    std::size_t duplicate_edges_dropped_ = 0;
};

/// Parses `source target [weight]` lines. Blank lines and lines starting with '#' are
/// skipped; the optional weight must be numeric and is otherwise ignored.
/// Throws ParseError on malformed lines and Error("no edges") when nothing survives.
TrustGraph load_trust_edges(std::istream& in);

/// Binary adjacency matrix, A[i][j] = 1 iff i trusts j. `dimension` pads the matrix with
/// empty rows and columns for users that exist only in the ratings data; 0 means
/// `graph.num_users()`.
SparseMatrix adjacency(const TrustGraph& graph, std::size_t dimension = 0);

enum class DegreeMode { in, out, combined };

struct DegreeVector {
    DegreeMode mode;
    std::vector<std::uint32_t> values;
};

DegreeVector degrees(const TrustGraph& graph, DegreeMode mode, std::size_t dimension = 0);

/// Degrees read off a square adjacency matrix: out = stored entries per row,
/// in = stored entries per column.
DegreeVector degrees(const SparseMatrix& adjacency, DegreeMode mode);

}  // namespace trustkatz
