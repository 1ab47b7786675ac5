#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace strfp {

// Ordered set of byte values eligible for bin assignment. Iteration order is
// ascending byte value; size is between 1 and 256.
class alphabet {
public:
    static alphabet printable_ascii(); // 0x20..0x7E, 95 bytes
    static alphabet all_bytes();       // every byte value
    static alphabet from_bytes(std::span<const std::uint8_t> bytes);
    static alphabet from_chars(std::string_view chars);

    std::size_t size() const { return members_.size(); }
    const std::vector<std::uint8_t>& members() const { return members_; }
    bool contains(std::uint8_t b) const { return rank_[b] >= 0; }
    // Rank of b among members (0-based); -1 if not a member.
    int rank_of(std::uint8_t b) const { return rank_[b]; }

    bool operator==(const alphabet& other) const { return members_ == other.members_; }

private:
    explicit alphabet(std::vector<std::uint8_t> members);

    std::vector<std::uint8_t> members_;
    std::array<int, 256> rank_{};
};

} // namespace strfp
