#pragma once

#include <charconv>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

namespace gromov::detail {

inline std::optional<std::int64_t> parse_integer(std::string_view text) {
    if (text.empty())
        return std::nullopt;
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        return std::nullopt;
    // reject non-canonical spellings such as "007" or "-0"
    if (std::to_string(value) != text)
        return std::nullopt;
    return value;
}

/// "<prefix><z>" -> z
inline std::optional<std::int64_t> parse_prefixed(std::string_view key, std::string_view prefix) {
    if (!key.starts_with(prefix))
        return std::nullopt;
    return parse_integer(key.substr(prefix.size()));
}

/// "<prefix><z>.<i>" -> (z, i)
inline std::optional<std::pair<std::int64_t, std::size_t>> parse_copy_key(std::string_view key,
                                                                          std::string_view prefix) {
    if (!key.starts_with(prefix))
        return std::nullopt;
    key.remove_prefix(prefix.size());
    const auto dot = key.find('.');
    if (dot == std::string_view::npos)
        return std::nullopt;
    auto z = parse_integer(key.substr(0, dot));
    auto i = parse_integer(key.substr(dot + 1));
    if (!z || !i || *i < 0)
        return std::nullopt;
    return std::pair{*z, static_cast<std::size_t>(*i)};
}

inline std::string copy_key(std::string_view prefix, std::int64_t z, std::size_t i) {
    return std::string(prefix) + std::to_string(z) + "." + std::to_string(i);
}

inline std::string prefixed(std::string_view prefix, std::int64_t z) { return std::string(prefix) + std::to_string(z); }

}  // namespace gromov::detail
