#pragma once

#include <vector>

#include "trustkatz/similarity.hpp"
#include "trustkatz/types.hpp"

namespace trustkatz {

struct Neighbor {
    UserIndex user;
    double similarity;

    friend bool operator==(const Neighbor&, const Neighbor&) = default;
};

/// Neighbors in descending similarity; similarities are strictly positive and the target
/// user never appears.
using NeighborList = std::vector<Neighbor>;

/// Up to `k` users with positive similarity in row `user`, highest first, ties broken by
/// ascending index. Throws when `user` is out of range or `k < 1`.
NeighborList top_k_neighbors(const SimilarityMatrix& s, UserIndex user, int k);

}  // namespace trustkatz
