#include "strfp/alphabet.hpp"

#include <algorithm>
#include <stdexcept>

namespace strfp {

alphabet::alphabet(std::vector<std::uint8_t> members) : members_(std::move(members)) {
    if (members_.empty()) {
        throw std::invalid_argument("alphabet: at least one member required");
    }
    rank_.fill(-1);
    for (std::size_t i = 0; i < members_.size(); ++i) {
        rank_[members_[i]] = static_cast<int>(i);
    }
}

alphabet alphabet::printable_ascii() {
    std::vector<std::uint8_t> members;
    members.reserve(95);
    for (int b = 0x20; b <= 0x7E; ++b) {
        members.push_back(static_cast<std::uint8_t>(b));
    }
    return alphabet(std::move(members));
}

alphabet alphabet::all_bytes() {
    std::vector<std::uint8_t> members(256);
    for (int b = 0; b < 256; ++b) {
        members[b] = static_cast<std::uint8_t>(b);
    }
    return alphabet(std::move(members));
}

alphabet alphabet::from_bytes(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> members(bytes.begin(), bytes.end());
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    return alphabet(std::move(members));
}

alphabet alphabet::from_chars(std::string_view chars) {
    std::vector<std::uint8_t> members;
    members.reserve(chars.size());
    for (unsigned char c : chars) {
        members.push_back(c);
    }
    return from_bytes(members);
}

} // namespace strfp
