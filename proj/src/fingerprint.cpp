#include "strfp/fingerprint.hpp"

#include "strfp/errors.hpp"

namespace strfp {

std::string render(const fingerprint& fp) {
    std::string out(static_cast<std::size_t>(fp.width), '0');
    for (int j = 0; j < fp.width; ++j) {
        if (fp.bits >> j & 1) {
            out[static_cast<std::size_t>(j)] = '1';
        }
    }
    return out;
}

fingerprint parse_fingerprint(std::string_view text, int width) {
    if (width < 1 || width > kMaxWidth) {
        throw std::invalid_argument("parse_fingerprint: width must be in [1, 64]");
    }
    if (text.size() != static_cast<std::size_t>(width)) {
        throw data_error("parse_fingerprint: expected " + std::to_string(width) +
                         " characters, got " + std::to_string(text.size()));
    }
    fingerprint fp{0, width};
    for (int j = 0; j < width; ++j) {
        const char c = text[static_cast<std::size_t>(j)];
        if (c == '1') {
            fp.bits |= std::uint64_t{1} << j;
        } else if (c != '0') {
            throw data_error(std::string("parse_fingerprint: bad character '") + c + "'");
        }
    }
    return fp;
}

} // namespace strfp
