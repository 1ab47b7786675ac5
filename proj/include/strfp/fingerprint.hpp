#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace strfp {

inline constexpr int kMaxWidth = 64; // one machine word

// n-bit mask over letter bins. Bit j is set iff the source string contains at
// least one byte assigned to bin j. Only the low `width` bits may be set.
struct fingerprint {
    std::uint64_t bits = 0;
    int width = 0;

    bool operator==(const fingerprint&) const = default;
};

// Subset test: does every bin of `query` also appear in `word`? Passing is
// necessary but not sufficient for substring containment.
inline bool is_candidate(const fingerprint& query, const fingerprint& word) {
    if (query.width != word.width) {
        throw std::invalid_argument("is_candidate: fingerprint widths differ (" +
                                    std::to_string(query.width) + " vs " +
                                    std::to_string(word.width) + ")");
    }
    return (query.bits & word.bits) == query.bits;
}

// Textual form, bin 0 leftmost: bits {0,2} at width 4 renders as "1010".
std::string render(const fingerprint& fp);

// Inverse of render. `text` must be exactly `width` characters of '0'/'1'.
fingerprint parse_fingerprint(std::string_view text, int width);

} // namespace strfp
