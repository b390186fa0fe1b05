#pragma once

#include <memory>
#include <numeric>
#include <vector>

#include "trustkatz/ratings.hpp"

namespace trustkatz::testing {

/// Ratings table whose external ids equal the internal indices.
inline RatingsTable make_table(std::size_t users, std::size_t items, std::vector<Rating> ratings) {
    std::vector<ExternalId> u(users), i(items);
    std::iota(u.begin(), u.end(), 0);
    std::iota(i.begin(), i.end(), 0);
    return RatingsTable(std::make_shared<const IdMaps>(std::move(u), std::move(i)), std::move(ratings));
}

}  // namespace trustkatz::testing
