#include "strfp/mip.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "strfp/errors.hpp"

namespace strfp {

namespace {

constexpr std::size_t kWrapColumn = 72;
constexpr double kBinaryTolerance = 1e-6;

std::string var_x(int byte, int bin) {
    return "x_" + std::to_string(byte) + "_" + std::to_string(bin);
}
std::string var_d(char side, std::size_t i, int bin) {
    return std::string("d_") + side + std::to_string(i) + "_" + std::to_string(bin);
}
std::string var_eta(std::uint32_t q, std::uint32_t w) {
    return "eta_" + std::to_string(q) + "_" + std::to_string(w);
}
std::string var_z(std::uint32_t q, std::uint32_t w, int bin) {
    return "z_" + std::to_string(q) + "_" + std::to_string(w) + "_" + std::to_string(bin);
}

// One labeled LP row, wrapped so no physical line outgrows kWrapColumn.
void emit_row(std::string& out, const std::string& label,
              const std::vector<std::string>& tokens) {
    std::string line = " " + label + ":";
    for (const std::string& tok : tokens) {
        if (line.size() + 1 + tok.size() > kWrapColumn && line.size() > 3) {
            out += line;
            out += '\n';
            line = "   ";
        }
        line += ' ';
        line += tok;
    }
    out += line;
    out += '\n';
}

void require_in_alphabet(const alphabet& alpha, const std::vector<std::uint8_t>& bytes,
                         const char* what, std::size_t index) {
    for (const std::uint8_t b : bytes) {
        if (alpha.rank_of(b) < 0) {
            throw data_error("model: " + std::string(what) + " " + std::to_string(index) +
                             " contains byte " + std::to_string(int{b}) +
                             " outside the alphabet");
        }
    }
}

} // namespace

model_instance build_mip(const training_instance& inst) {
    const alphabet& alpha = inst.words.alpha;
    const int n = inst.width;
    const std::size_t nw = inst.words.size();
    const std::size_t nq = inst.queries.size();
    const auto& pairs = inst.negative_pairs;

    for (std::size_t i = 0; i < nw; ++i) {
        if (inst.words.words[i].empty()) {
            throw data_error("model: word " + std::to_string(i) + " is empty");
        }
        require_in_alphabet(alpha, inst.word_bytes[i], "word", i);
    }
    for (std::size_t i = 0; i < nq; ++i) {
        if (inst.queries[i].empty()) {
            throw data_error("model: query " + std::to_string(i) + " is empty");
        }
        require_in_alphabet(alpha, inst.query_bytes[i], "query", i);
    }

    model_instance model;
    model.alpha_ = alpha;
    model.width_ = n;

    std::size_t udist_sum = 0;
    for (const auto& bytes : inst.word_bytes) {
        udist_sum += bytes.size();
    }
    for (const auto& bytes : inst.query_bytes) {
        udist_sum += bytes.size();
    }

    model.vars_.x = alpha.size() * static_cast<std::size_t>(n);
    model.vars_.d = (nw + nq) * static_cast<std::size_t>(n);
    model.vars_.eta = pairs.size();
    model.vars_.z = pairs.size() * static_cast<std::size_t>(n);

    model.constraints_.assignment = alpha.size();
    model.constraints_.fp_lower = static_cast<std::size_t>(n) * udist_sum;
    model.constraints_.fp_upper = static_cast<std::size_t>(n) * (nw + nq);
    model.constraints_.z_link = 3 * static_cast<std::size_t>(n) * pairs.size();
    model.constraints_.eta_link = pairs.size();

    auto& names = model.var_names_;
    names.reserve(model.vars_.total());
    std::vector<std::string> binaries;
    binaries.reserve(model.vars_.total());
    const auto declare = [&](std::string name, var_ref ref) {
        names.emplace(name, ref);
        binaries.push_back(std::move(name));
    };
    for (const std::uint8_t b : alpha.members()) {
        for (int j = 0; j < n; ++j) {
            declare(var_x(b, j), var_ref{var_family::x, int{b}, j, 0});
        }
    }
    for (std::size_t i = 0; i < nw; ++i) {
        for (int j = 0; j < n; ++j) {
            declare(var_d('w', i, j), var_ref{var_family::d_word, static_cast<int>(i), j, 0});
        }
    }
    for (std::size_t i = 0; i < nq; ++i) {
        for (int j = 0; j < n; ++j) {
            declare(var_d('q', i, j), var_ref{var_family::d_query, static_cast<int>(i), j, 0});
        }
    }
    for (const auto& [qi, wi] : pairs) {
        declare(var_eta(qi, wi),
                var_ref{var_family::eta, static_cast<int>(qi), static_cast<int>(wi), 0});
    }
    for (const auto& [qi, wi] : pairs) {
        for (int j = 0; j < n; ++j) {
            declare(var_z(qi, wi, j),
                    var_ref{var_family::z, static_cast<int>(qi), static_cast<int>(wi), j});
        }
    }

    std::string& lp = model.lp_text_;
    lp += "Maximize\n";
    {
        std::vector<std::string> tokens;
        if (pairs.empty()) {
            tokens.push_back("0");
        }
        bool first = true;
        for (const auto& [qi, wi] : pairs) {
            if (!first) {
                tokens.push_back("+");
            }
            first = false;
            tokens.push_back(var_eta(qi, wi));
        }
        emit_row(lp, "obj", tokens);
    }

    lp += "Subject To\n";
    for (const std::uint8_t b : alpha.members()) {
        std::vector<std::string> tokens;
        for (int j = 0; j < n; ++j) {
            if (j > 0) {
                tokens.push_back("+");
            }
            tokens.push_back(var_x(b, j));
        }
        tokens.push_back("=");
        tokens.push_back("1");
        emit_row(lp, "assign_" + std::to_string(int{b}), tokens);
    }

    const auto emit_fingerprint_rows = [&](char side, std::size_t i,
                                           const std::vector<std::uint8_t>& bytes) {
        const std::string tag = side + std::to_string(i);
        for (const std::uint8_t b : bytes) {
            for (int j = 0; j < n; ++j) {
                emit_row(lp, "fl_" + tag + "_" + std::to_string(int{b}) + "_" + std::to_string(j),
                         {var_x(b, j), "-", var_d(side, i, j), "<=", "0"});
            }
        }
        for (int j = 0; j < n; ++j) {
            std::vector<std::string> tokens{var_d(side, i, j)};
            for (const std::uint8_t b : bytes) {
                tokens.push_back("-");
                tokens.push_back(var_x(b, j));
            }
            tokens.push_back("<=");
            tokens.push_back("0");
            emit_row(lp, "fu_" + tag + "_" + std::to_string(j), tokens);
        }
    };
    for (std::size_t i = 0; i < nw; ++i) {
        emit_fingerprint_rows('w', i, inst.word_bytes[i]);
    }
    for (std::size_t i = 0; i < nq; ++i) {
        emit_fingerprint_rows('q', i, inst.query_bytes[i]);
    }

    for (const auto& [qi, wi] : pairs) {
        const std::string tag = std::to_string(qi) + "_" + std::to_string(wi);
        for (int j = 0; j < n; ++j) {
            const std::string z = var_z(qi, wi, j);
            const std::string dq = var_d('q', qi, j);
            const std::string dw = var_d('w', wi, j);
            emit_row(lp, "zq_" + tag + "_" + std::to_string(j), {z, "-", dq, "<=", "0"});
            emit_row(lp, "zw_" + tag + "_" + std::to_string(j), {z, "+", dw, "<=", "1"});
            emit_row(lp, "zl_" + tag + "_" + std::to_string(j),
                     {z, "-", dq, "+", dw, ">=", "0"});
        }
    }
    for (const auto& [qi, wi] : pairs) {
        std::vector<std::string> tokens{var_eta(qi, wi)};
        for (int j = 0; j < n; ++j) {
            tokens.push_back("-");
            tokens.push_back(var_z(qi, wi, j));
        }
        tokens.push_back("<=");
        tokens.push_back("0");
        emit_row(lp, "el_" + std::to_string(qi) + "_" + std::to_string(wi), tokens);
    }

    lp += "Binary\n";
    for (const std::string& name : binaries) {
        lp += ' ';
        lp += name;
        lp += '\n';
    }
    lp += "End\n";
    return model;
}

void export_lp(const model_instance& model, std::ostream& out) {
    out << model.lp_text();
    if (!out) {
        throw data_error("lp export: write failed");
    }
}

partition import_solution(const model_instance& model, std::istream& in) {
    const alphabet& alpha = model.alpha();
    const int n = model.width();

    // bins_seen[byte] counts x variables rounded to 1; bin[byte] keeps the bin.
    std::array<int, 256> ones_seen{};
    std::array<std::uint8_t, 256> chosen{};
    std::unordered_map<std::string, double> listed;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        std::istringstream fields(line);
        std::string name, value_text, extra;
        if (!(fields >> name)) {
            continue; // blank or comment-only line
        }
        if (!(fields >> value_text) || (fields >> extra)) {
            throw data_error("solution line " + std::to_string(line_no) +
                             ": expected `name value`");
        }
        const auto ref = model.var_names().find(name);
        if (ref == model.var_names().end()) {
            throw data_error("solution line " + std::to_string(line_no) +
                             ": unknown variable `" + name + "`");
        }
        double value = 0.0;
        const char* begin = value_text.data();
        const char* end = begin + value_text.size();
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc{} || ptr != end) {
            throw data_error("solution line " + std::to_string(line_no) +
                             ": bad value `" + value_text + "`");
        }
        if (!listed.emplace(name, value).second) {
            throw data_error("solution line " + std::to_string(line_no) +
                             ": duplicate variable `" + name + "`");
        }
        int rounded = 0;
        if (std::fabs(value) <= kBinaryTolerance) {
            rounded = 0;
        } else if (std::fabs(value - 1.0) <= kBinaryTolerance) {
            rounded = 1;
        } else {
            throw data_error("solution line " + std::to_string(line_no) + ": value " +
                             value_text + " is not within 1e-6 of 0 or 1");
        }
        if (ref->second.family == var_family::x && rounded == 1) {
            const auto byte = static_cast<std::size_t>(ref->second.i);
            ones_seen[byte] += 1;
            chosen[byte] = static_cast<std::uint8_t>(ref->second.j);
        }
    }

    std::array<std::uint8_t, 256> bins{};
    for (int b = 0; b < 256; ++b) {
        bins[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(b % n);
    }
    for (const std::uint8_t b : alpha.members()) {
        if (ones_seen[b] != 1) {
            throw data_error("solution assigns byte " + std::to_string(int{b}) + " to " +
                             std::to_string(ones_seen[b]) + " bins, expected exactly 1");
        }
        bins[b] = chosen[b];
    }
    return partition(n, bins, alpha, provenance{provenance_tag::imported});
}

} // namespace strfp
