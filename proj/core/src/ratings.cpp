#include "trustkatz/ratings.hpp"

#include <algorithm>
#include <string>

#include "text_input.hpp"
#include "trustkatz/error.hpp"

namespace trustkatz {

IdMaps::IdMaps(std::vector<ExternalId> user_ids, std::vector<ExternalId> item_ids)
    : user_ids_(std::move(user_ids)), item_ids_(std::move(item_ids)) {
    for (std::size_t i = 0; i < user_ids_.size(); ++i)
        if (!user_index_.emplace(user_ids_[i], static_cast<UserIndex>(i)).second)
            throw Error("duplicate external user id " + std::to_string(user_ids_[i]));
    for (std::size_t i = 0; i < item_ids_.size(); ++i)
        if (!item_index_.emplace(item_ids_[i], static_cast<ItemIndex>(i)).second)
            throw Error("duplicate external item id " + std::to_string(item_ids_[i]));
}

std::optional<UserIndex> IdMaps::user_index(ExternalId id) const {
    auto it = user_index_.find(id);
    if (it == user_index_.end()) return std::nullopt;
    return it->second;
}

std::optional<ItemIndex> IdMaps::item_index(ExternalId id) const {
    auto it = item_index_.find(id);
    if (it == item_index_.end()) return std::nullopt;
    return it->second;
}

ExternalId IdMaps::user_id(UserIndex u) const {
    if (u >= user_ids_.size()) throw Error("user index out of range: " + std::to_string(u));
    return user_ids_[u];
}

ExternalId IdMaps::item_id(ItemIndex i) const {
    if (i >= item_ids_.size()) throw Error("item index out of range: " + std::to_string(i));
    return item_ids_[i];
}

RatingsTable::RatingsTable(std::shared_ptr<const IdMaps> ids, std::vector<Rating> ratings,
                           std::size_t duplicates_dropped)
    : ids_(std::move(ids)),
      item_counts_(ids_->num_items(), 0),
      duplicates_dropped_(duplicates_dropped) {
    std::sort(ratings.begin(), ratings.end(), [](const Rating& a, const Rating& b) {
        return a.user != b.user ? a.user < b.user : a.item < b.item;
    });
    offsets_.assign(ids_->num_users() + 1, 0);
    entries_.reserve(ratings.size());
    for (std::size_t p = 0; p < ratings.size(); ++p) {
        const Rating& r = ratings[p];
        if (r.user >= ids_->num_users() || r.item >= ids_->num_items())
            throw Error("rating refers to an unknown user or item index");
        if (p > 0 && ratings[p - 1].user == r.user && ratings[p - 1].item == r.item)
            throw Error("duplicate (user, item) pair in rating list");
        ++offsets_[r.user + 1];
        ++item_counts_[r.item];
        entries_.push_back({r.item, r.value});
    }
    for (std::size_t u = 0; u < ids_->num_users(); ++u) offsets_[u + 1] += offsets_[u];
}

std::span<const ItemRating> RatingsTable::ratings_of(UserIndex u) const {
    if (u >= num_users()) throw Error("user index out of range: " + std::to_string(u));
    return std::span<const ItemRating>(entries_).subspan(offsets_[u], offsets_[u + 1] - offsets_[u]);
}

bool RatingsTable::has_rated(UserIndex u, ItemIndex item) const {
    auto r = ratings_of(u);
    auto it = std::lower_bound(r.begin(), r.end(), item,
                               [](const ItemRating& x, ItemIndex i) { return x.item < i; });
    return it != r.end() && it->item == item;
}

std::vector<Rating> RatingsTable::triples() const {
    std::vector<Rating> out;
    out.reserve(entries_.size());
    for (UserIndex u = 0; u < num_users(); ++u)
        for (const auto& r : ratings_of(u)) out.push_back({u, r.item, r.value});
    return out;
}

RatingsTable load_ratings(std::istream& in, const TrustGraph& graph) {
    std::vector<ExternalId> user_ids = graph.external_ids();
    std::unordered_map<ExternalId, UserIndex> extra_users;
    std::vector<ExternalId> item_ids;
    std::unordered_map<ExternalId, ItemIndex> items;
    // (user, item) -> position in `ratings`
    std::unordered_map<std::uint64_t, std::size_t> seen;
    std::vector<Rating> ratings;
    std::size_t duplicates = 0;

    detail::DataLines lines(in);
    std::vector<std::string_view> tok;
    while (lines.next(tok)) {
        std::size_t ln = lines.line_number();
        if (tok.size() != 3)
            throw ParseError(ln, "expected 'user item rating', got " + std::to_string(tok.size()) +
                                     " tokens");
        auto uid = detail::parse_id(tok[0]);
        auto iid = detail::parse_id(tok[1]);
        if (!uid || !iid) throw ParseError(ln, "user and item ids must be integers");
        auto value = detail::parse_real(tok[2]);
        if (!value) throw ParseError(ln, "rating must be numeric");
        if (!(*value >= 1.0 && *value <= 5.0)) throw ParseError(ln, "rating outside [1, 5]");

        UserIndex u;
        if (auto g = graph.index_of(*uid)) {
            u = *g;
        } else {
            auto [it, inserted] =
                extra_users.try_emplace(*uid, static_cast<UserIndex>(user_ids.size()));
            if (inserted) user_ids.push_back(*uid);
            u = it->second;
        }
        auto [iit, new_item] = items.try_emplace(*iid, static_cast<ItemIndex>(item_ids.size()));
        if (new_item) item_ids.push_back(*iid);
        ItemIndex i = iit->second;

        std::uint64_t key = (static_cast<std::uint64_t>(u) << 32) | i;
        auto [pos, fresh] = seen.try_emplace(key, ratings.size());
        if (fresh) {
            ratings.push_back({u, i, *value});
        } else {
            ratings[pos->second].value = *value;
            ++duplicates;
        }
    }
    auto ids = std::make_shared<const IdMaps>(std::move(user_ids), std::move(item_ids));
    return RatingsTable(std::move(ids), std::move(ratings), duplicates);
}

}  // namespace trustkatz
