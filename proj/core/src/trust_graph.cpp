#include "trustkatz/trust_graph.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "text_input.hpp"
#include "trustkatz/error.hpp"

namespace trustkatz {

namespace {

std::uint64_t edge_key(UserIndex s, UserIndex t) {
    return (static_cast<std::uint64_t>(s) << 32) | t;
}

}  // namespace

UserIndex TrustGraph::intern(ExternalId id) {
    auto [it, inserted] = index_.try_emplace(id, static_cast<UserIndex>(external_ids_.size()));
    if (inserted) external_ids_.push_back(id);
    return it->second;
}

std::optional<UserIndex> TrustGraph::index_of(ExternalId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

ExternalId TrustGraph::external_id(UserIndex index) const {
    if (index >= external_ids_.size())
        throw Error("user index out of range: " + std::to_string(index));
    return external_ids_[index];
}

TrustGraph TrustGraph::from_edges(const std::vector<std::pair<ExternalId, ExternalId>>& edges) {
    TrustGraph g;
    std::unordered_set<std::uint64_t> seen;
    for (auto [s, t] : edges) {
        if (s == t) {
            ++g.self_loops_dropped_;
            continue;
        }
        UserIndex si = g.intern(s), ti = g.intern(t);
        if (!seen.insert(edge_key(si, ti)).second) {
            ++g.duplicate_edges_dropped_;
            continue;
        }
        g.edges_.push_back({si, ti});
    }
    return g;
}

TrustGraph load_trust_edges(std::istream& in) {
    detail::DataLines lines(in);
    std::vector<std::string_view> tok;
    std::vector<std::pair<ExternalId, ExternalId>> raw;
    while (lines.next(tok)) {
        std::size_t ln = lines.line_number();
        if (tok.size() != 2 && tok.size() != 3)
            throw ParseError(ln, "expected 'source target [weight]', got " +
                                     std::to_string(tok.size()) + " tokens");
        auto s = detail::parse_id(tok[0]);
        auto t = detail::parse_id(tok[1]);
        if (!s || !t) throw ParseError(ln, "user ids must be integers");
        if (tok.size() == 3 && !detail::parse_real(tok[2]))
            throw ParseError(ln, "edge weight must be numeric");
        raw.emplace_back(*s, *t);
    }
    TrustGraph g = TrustGraph::from_edges(raw);
    if (g.edges().empty()) throw Error("no edges");
    return g;
}

SparseMatrix adjacency(const TrustGraph& graph, std::size_t dimension) {
    std::size_t n = std::max(dimension, graph.num_users());
    std::vector<std::vector<SparseEntry>> rows(n);
    for (const Edge& e : graph.edges()) rows[e.source].push_back({e.target, 1.0});
    for (auto& r : rows)
        std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.col < b.col; });
    auto dim = static_cast<SparseMatrix::Index>(n);
    return SparseMatrix::from_rows(dim, dim, rows);
}

DegreeVector degrees(const TrustGraph& graph, DegreeMode mode, std::size_t dimension) {
    DegreeVector d{mode, std::vector<std::uint32_t>(std::max(dimension, graph.num_users()), 0)};
    for (const Edge& e : graph.edges()) {
        if (mode != DegreeMode::in) ++d.values[e.source];
        if (mode != DegreeMode::out) ++d.values[e.target];
    }
    return d;
}

DegreeVector degrees(const SparseMatrix& adjacency, DegreeMode mode) {
    if (!adjacency.square()) throw Error("adjacency matrix must be square");
    DegreeVector d{mode, std::vector<std::uint32_t>(adjacency.rows(), 0)};
    for (SparseMatrix::Index i = 0; i < adjacency.rows(); ++i) {
        auto r = adjacency.row(i);
        if (mode != DegreeMode::in) d.values[i] += static_cast<std::uint32_t>(r.size());
        if (mode != DegreeMode::out)
            for (auto j : r.cols) ++d.values[j];
    }
    return d;
}

}  // namespace trustkatz
