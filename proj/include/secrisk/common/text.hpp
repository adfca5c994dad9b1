#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace secrisk::text {

std::string_view trim(std::string_view s);
std::string to_upper_ascii(std::string_view s);
std::string to_lower_ascii(std::string_view s);
bool iequals(std::string_view a, std::string_view b);
bool starts_with_icase(std::string_view s, std::string_view prefix);
bool ends_with_icase(std::string_view s, std::string_view suffix);
bool is_ascii(std::string_view s);

std::vector<std::string> split(std::string_view s, char sep, bool keep_empty = false);
std::vector<std::string> split_lines(std::string_view s);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Strips one layer of matching quotes: '', "", ``, or [].
std::string strip_quotes(std::string_view s);

/// Decodes UTF-8 into code points; invalid bytes map to U+FFFD.
std::u32string utf8_decode(std::string_view s);
std::string utf8_encode(std::u32string_view s);

/// Folds common Latin diacritics (pinyin tone marks, accents) to ASCII and
/// lower-cases. Code points without a mapping are kept unchanged.
std::string fold_diacritics_lower(std::string_view s);

std::uint64_t fnv1a64(std::string_view s, std::uint64_t seed = 0xcbf29ce484222325ULL);
std::uint32_t fnv1a32(std::string_view s);
std::string hex64(std::uint64_t v);

/// Shannon entropy in bits per byte.
double shannon_entropy(std::string_view s);

/// Longest common prefix length, ASCII case-insensitive.
std::size_t common_prefix_icase(std::string_view a, std::string_view b);

}  // namespace secrisk::text
