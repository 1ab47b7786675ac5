#include "strfp/partition.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "strfp/errors.hpp"

namespace strfp {

namespace {

std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) {
        return "0";
    }
    return std::string(buf, end);
}

// Strips one trailing '\r' so CRLF files parse like LF files.
bool next_line(std::istream& in, std::string& line) {
    if (!std::getline(in, line)) {
        return false;
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    return true;
}

std::uint64_t parse_u64(std::string_view text, const std::string& what) {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw data_error("partition file: bad " + what + " '" + std::string(text) + "'");
    }
    return value;
}

} // namespace

std::string_view to_string(provenance_tag tag) {
    switch (tag) {
    case provenance_tag::round_robin: return "round_robin";
    case provenance_tag::local_search: return "local_search";
    case provenance_tag::exact: return "exact";
    case provenance_tag::imported: return "imported";
    }
    return "round_robin";
}

std::optional<provenance_tag> provenance_tag_from(std::string_view text) {
    if (text == "round_robin") return provenance_tag::round_robin;
    if (text == "local_search") return provenance_tag::local_search;
    if (text == "exact") return provenance_tag::exact;
    if (text == "imported") return provenance_tag::imported;
    return std::nullopt;
}

partition::partition(int width, const std::array<std::uint8_t, 256>& bins, alphabet alpha,
                     provenance origin)
    : width_(width), bins_(bins), alpha_(std::move(alpha)), origin_(origin) {
    if (width_ < 1 || width_ > kMaxWidth) {
        throw std::invalid_argument("partition: width must be in [1, 64], got " +
                                    std::to_string(width_));
    }
    for (int b = 0; b < 256; ++b) {
        if (bins_[static_cast<std::size_t>(b)] >= width_) {
            throw std::invalid_argument("partition: byte " + std::to_string(b) +
                                        " mapped to bin " +
                                        std::to_string(bins_[static_cast<std::size_t>(b)]) +
                                        " >= width " + std::to_string(width_));
        }
    }
}

partition round_robin_partition(const alphabet& alpha, int width) {
    if (width < 1 || width > kMaxWidth) {
        throw std::invalid_argument("round_robin_partition: width must be in [1, 64], got " +
                                    std::to_string(width));
    }
    std::array<std::uint8_t, 256> bins{};
    for (int b = 0; b < 256; ++b) {
        bins[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(b % width);
    }
    const auto& members = alpha.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        bins[members[i]] = static_cast<std::uint8_t>(i % static_cast<std::size_t>(width));
    }
    return partition(width, bins, alpha, provenance{provenance_tag::round_robin});
}

void save_partition(const partition& part, std::ostream& out) {
    out << "width " << part.width() << '\n';
    out << "provenance " << to_string(part.origin().tag);
    if (part.origin().seed) {
        out << " seed=" << *part.origin().seed;
    }
    if (part.origin().time_limit_s) {
        out << " time_limit=" << format_double(*part.origin().time_limit_s);
    }
    if (part.origin().iteration_cap) {
        out << " iters=" << *part.origin().iteration_cap;
    }
    out << '\n';
    for (int b = 0; b < 256; ++b) {
        out << "map " << b << ' ' << int{part.bin_of(static_cast<std::uint8_t>(b))} << '\n';
    }
    if (!out) {
        throw data_error("partition: write failed");
    }
}

partition load_partition(std::istream& in, const alphabet& alpha) {
    std::string line;
    if (!next_line(in, line)) {
        throw data_error("partition file: empty");
    }
    std::istringstream width_line(line);
    std::string keyword;
    int width = 0;
    if (!(width_line >> keyword >> width) || keyword != "width") {
        throw data_error("partition file: expected 'width <n>', got '" + line + "'");
    }
    if (width < 1 || width > kMaxWidth) {
        throw data_error("partition file: width " + std::to_string(width) + " out of [1, 64]");
    }

    if (!next_line(in, line)) {
        throw data_error("partition file: missing provenance line");
    }
    std::istringstream prov_line(line);
    std::string tag_text;
    if (!(prov_line >> keyword >> tag_text) || keyword != "provenance") {
        throw data_error("partition file: expected 'provenance <tag>', got '" + line + "'");
    }
    const auto tag = provenance_tag_from(tag_text);
    if (!tag) {
        throw data_error("partition file: unknown provenance tag '" + tag_text + "'");
    }
    provenance origin{*tag};
    std::string token;
    while (prov_line >> token) {
        const auto eq = token.find('=');
        if (eq == std::string::npos) {
            throw data_error("partition file: bad provenance token '" + token + "'");
        }
        const std::string key = token.substr(0, eq);
        const std::string value = token.substr(eq + 1);
        if (key == "seed") {
            origin.seed = parse_u64(value, "seed");
        } else if (key == "time_limit") {
            try {
                origin.time_limit_s = std::stod(value);
            } catch (const std::exception&) {
                throw data_error("partition file: bad time_limit '" + value + "'");
            }
        } else if (key == "iters") {
            origin.iteration_cap = parse_u64(value, "iters");
        } else {
            throw data_error("partition file: unknown provenance key '" + key + "'");
        }
    }

    std::array<std::uint8_t, 256> bins{};
    std::array<bool, 256> present{};
    int rows = 0;
    while (next_line(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::istringstream map_line(line);
        int byte = -1;
        int bin = -1;
        if (!(map_line >> keyword >> byte >> bin) || keyword != "map") {
            throw data_error("partition file: expected 'map <byte> <bin>', got '" + line + "'");
        }
        if (byte < 0 || byte > 255) {
            throw data_error("partition file: byte " + std::to_string(byte) + " out of range");
        }
        if (present[static_cast<std::size_t>(byte)]) {
            throw data_error("partition file: duplicate byte " + std::to_string(byte));
        }
        if (byte != rows) {
            throw data_error("partition file: bytes must be ascending; expected " +
                             std::to_string(rows) + ", got " + std::to_string(byte));
        }
        if (bin < 0 || bin >= width) {
            throw data_error("partition file: byte " + std::to_string(byte) + " mapped to bin " +
                             std::to_string(bin) + " outside [0, " + std::to_string(width) + ")");
        }
        present[static_cast<std::size_t>(byte)] = true;
        bins[static_cast<std::size_t>(byte)] = static_cast<std::uint8_t>(bin);
        ++rows;
    }
    if (rows != 256) {
        throw data_error("partition file: expected 256 map lines, got " + std::to_string(rows));
    }
    return partition(width, bins, alpha, origin);
}

void save_partition_file(const partition& part, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("cannot open '" + path + "' for writing");
    }
    save_partition(part, out);
}

partition load_partition_file(const std::string& path, const alphabet& alpha) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open partition file '" + path + "'");
    }
    return load_partition(in, alpha);
}

} // namespace strfp
