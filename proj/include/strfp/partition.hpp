#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "strfp/alphabet.hpp"
#include "strfp/fingerprint.hpp"

namespace strfp {

enum class provenance_tag : std::uint8_t { round_robin, local_search, exact, imported };

std::string_view to_string(provenance_tag tag);
std::optional<provenance_tag> provenance_tag_from(std::string_view text);

// How a partition came to be, carried through output files for reproducibility.
struct provenance {
    provenance_tag tag = provenance_tag::round_robin;
    std::optional<std::uint64_t> seed;
    std::optional<double> time_limit_s;
    std::optional<std::uint64_t> iteration_cap;

    bool operator==(const provenance&) const = default;
};

// Total map from byte values to bin indices in [0, width). Every byte maps to
// a bin, including bytes outside the alphabet (those use byte mod width), so
// fingerprints are defined for arbitrary input and the candidate test can
// never produce a false negative. Immutable after construction.
class partition {
public:
    partition(int width, const std::array<std::uint8_t, 256>& bins, alphabet alpha,
              provenance origin);

    int width() const { return width_; }
    std::uint8_t bin_of(std::uint8_t byte) const { return bins_[byte]; }
    const std::array<std::uint8_t, 256>& bins() const { return bins_; }
    const alphabet& alpha() const { return alpha_; }
    const provenance& origin() const { return origin_; }

    fingerprint fingerprint_of(std::string_view s) const {
        std::uint64_t bits = 0;
        for (unsigned char c : s) {
            bits |= std::uint64_t{1} << bins_[c];
        }
        return fingerprint{bits, width_};
    }

    bool operator==(const partition& other) const {
        return width_ == other.width_ && bins_ == other.bins_;
    }

private:
    int width_;
    std::array<std::uint8_t, 256> bins_;
    alphabet alpha_;
    provenance origin_;
};

// Workload-agnostic baseline: the i-th alphabet member (ascending byte order)
// goes to bin i mod width; non-members fall back to byte mod width.
partition round_robin_partition(const alphabet& alpha, int width);

// Text format, stable across runs:
//   width <n>
//   provenance <tag> [seed=<u64>] [time_limit=<secs>] [iters=<u64>]
//   map <byte-decimal> <bin>      (one line per byte, 0..255 ascending)
void save_partition(const partition& part, std::ostream& out);
partition load_partition(std::istream& in, const alphabet& alpha);

void save_partition_file(const partition& part, const std::string& path);
partition load_partition_file(const std::string& path, const alphabet& alpha);

} // namespace strfp
