#pragma once

#include <charconv>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trustkatz/types.hpp"

namespace trustkatz::detail {

/// Iterates the data lines of a stream, skipping blank lines and '#' comments.
class DataLines {
public:
    explicit DataLines(std::istream& in) : in_(in) {}

    /// Advances to the next data line and splits it on whitespace.
    bool next(std::vector<std::string_view>& tokens) {
        while (std::getline(in_, line_)) {
            ++line_no_;
            if (!line_.empty() && line_.back() == '\r') line_.pop_back();
            tokens.clear();
            std::string_view rest(line_);
            while (true) {
                auto b = rest.find_first_not_of(" \t");
                if (b == std::string_view::npos) break;
                rest.remove_prefix(b);
                auto e = rest.find_first_of(" \t");
                tokens.push_back(rest.substr(0, e));
                if (e == std::string_view::npos) break;
                rest.remove_prefix(e);
            }
            if (tokens.empty() || tokens.front().front() == '#') continue;
            return true;
        }
        return false;
    }

    std::size_t line_number() const noexcept { return line_no_; }

private:
    std::istream& in_;
    std::string line_;
    std::size_t line_no_ = 0;
};

inline std::optional<ExternalId> parse_id(std::string_view token) {
    ExternalId v{};
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size()) return std::nullopt;
    return v;
}

inline std::optional<double> parse_real(std::string_view token) {
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double v{};
    auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || p != token.data() + token.size()) return std::nullopt;
    return v;
}

}  // namespace trustkatz::detail
