#include "trustkatz/neighbors.hpp"

#include <algorithm>
#include <string>

#include "trustkatz/error.hpp"

namespace trustkatz {

NeighborList top_k_neighbors(const SimilarityMatrix& s, UserIndex user, int k) {
    if (k < 1) throw Error("k must be >= 1");
    if (user >= s.values.rows()) throw Error("user index out of range: " + std::to_string(user));
    auto r = s.values.row(user);
    NeighborList all;
    all.reserve(r.size());
    for (std::size_t p = 0; p < r.size(); ++p)
        if (r.values[p] > 0.0 && r.cols[p] != user) all.push_back({r.cols[p], r.values[p]});

    auto better = [](const Neighbor& a, const Neighbor& b) {
        return a.similarity != b.similarity ? a.similarity > b.similarity : a.user < b.user;
    };
    auto keep = std::min<std::size_t>(static_cast<std::size_t>(k), all.size());
    std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(), better);
    all.resize(keep);
    return all;
}

}  // namespace trustkatz
