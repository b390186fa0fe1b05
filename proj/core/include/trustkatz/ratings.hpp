#pragma once

#include <cstddef>
#include <istream>
#include <memory>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "trustkatz/trust_graph.hpp"
#include "trustkatz/types.hpp"

namespace trustkatz {

struct Rating {
    UserIndex user;
    ItemIndex item;
    double value;
};

struct ItemRating {
    ItemIndex item;
    double value;
};

/// External/internal id maps for users and items. User indices start with the trust graph's
/// users; users that only appear in the ratings data are appended after them.
class IdMaps {
public:
    IdMaps() = default;
    IdMaps(std::vector<ExternalId> user_ids, std::vector<ExternalId> item_ids);

    std::size_t num_users() const noexcept { return user_ids_.size(); }
    std::size_t num_items() const noexcept { return item_ids_.size(); }

    std::optional<UserIndex> user_index(ExternalId id) const;
    std::optional<ItemIndex> item_index(ExternalId id) const;
    ExternalId user_id(UserIndex u) const;
    ExternalId item_id(ItemIndex i) const;

private:
    std::vector<ExternalId> user_ids_;
    std::vector<ExternalId> item_ids_;
    std::unordered_map<ExternalId, UserIndex> user_index_;
    std::unordered_map<ExternalId, ItemIndex> item_index_;
};

/// Immutable (user, item, rating) table with at most one rating per pair.
class RatingsTable {
public:
    RatingsTable() : ids_(std::make_shared<IdMaps>()) {}

    /// `ratings` may be in any order but must not repeat a (user, item) pair.
    RatingsTable(std::shared_ptr<const IdMaps> ids, std::vector<Rating> ratings,
                 std::size_t duplicates_dropped = 0);

    std::size_t num_users() const noexcept { return ids_->num_users(); }
    std::size_t num_items() const noexcept { return ids_->num_items(); }
    std::size_t size() const noexcept { return entries_.size(); }

    /// Ratings of user `u`, sorted by item index.
    std::span<const ItemRating> ratings_of(UserIndex u) const;
    bool has_rated(UserIndex u, ItemIndex item) const;

    /// Number of users who rated each item.
    const std::vector<std::uint32_t>& item_counts() const noexcept { return item_counts_; }

    std::size_t duplicates_dropped() const noexcept { return duplicates_dropped_; }

    const IdMaps& ids() const noexcept { return *ids_; }
    const std::shared_ptr<const IdMaps>& shared_ids() const noexcept { return ids_; }

    /// All ratings ordered by user, then item.
    std::vector<Rating> triples() const;

private:
    std::shared_ptr<const IdMaps> ids_;
    std::vector<std::size_t> offsets_{0};
    std::vector<ItemRating> entries_;
    std::vector<std::uint32_t> item_counts_;
    std::size_t duplicates_dropped_ = 0;
};

/// Parses `user item rating` lines. Ratings outside [1, 5] are rejected with the line
/// number; a repeated (user, item) pair keeps the last occurrence.
RatingsTable load_ratings(std::istream& in, const TrustGraph& graph);

}  // namespace trustkatz
