#include "strfp/workload.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string_view>
#include <unordered_set>

#include "strfp/errors.hpp"
#include "strfp/rng.hpp"

namespace strfp {

namespace {

std::optional<freq_class> freq_class_from(std::string_view text) {
    if (text == "high") return freq_class::high;
    if (text == "mid") return freq_class::mid;
    if (text == "low") return freq_class::low;
    return std::nullopt;
}

std::optional<query_role> role_from(std::string_view text) {
    if (text == "seen") return query_role::seen;
    if (text == "unseen") return query_role::unseen;
    return std::nullopt;
}

} // namespace

std::string_view to_string(freq_class c) {
    switch (c) {
    case freq_class::high: return "high";
    case freq_class::mid: return "mid";
    case freq_class::low: return "low";
    }
    return "high";
}

std::string_view to_string(query_role r) {
    return r == query_role::seen ? "seen" : "unseen";
}

std::vector<std::string> workload::patterns(query_role role) const {
    std::vector<std::string> out;
    for (const auto& q : queries) {
        if (q.role == role) {
            out.push_back(q.pattern);
        }
    }
    return out;
}

std::vector<std::string> workload::all_patterns() const {
    std::vector<std::string> out;
    out.reserve(queries.size());
    for (const auto& q : queries) {
        out.push_back(q.pattern);
    }
    return out;
}

std::unordered_map<std::string, std::uint32_t> kgram_frequencies(const corpus& corp, int k) {
    if (k < 1) {
        throw std::invalid_argument("kgram_frequencies: k must be >= 1");
    }
    std::unordered_map<std::string, std::uint32_t> freq;
    std::vector<std::string_view> windows;
    const auto klen = static_cast<std::size_t>(k);
    for (const auto& word : corp.words) {
        if (word.size() < klen) {
            continue;
        }
        windows.clear();
        for (std::size_t i = 0; i + klen <= word.size(); ++i) {
            windows.emplace_back(word.data() + i, klen);
        }
        // Document frequency: each distinct gram counts once per word.
        std::sort(windows.begin(), windows.end());
        windows.erase(std::unique(windows.begin(), windows.end()), windows.end());
        for (const auto w : windows) {
            ++freq[std::string(w)];
        }
    }
    return freq;
}

workload generate_workload(const corpus& corp, std::span<const int> ks, int per_class,
                           std::uint64_t seed) {
    if (per_class < 1) {
        throw std::invalid_argument("generate_workload: per_class must be >= 1");
    }
    workload w;
    w.seed = seed;
    for (const int k : ks) {
        auto freq = kgram_frequencies(corp, k);
        std::vector<std::pair<std::string, std::uint32_t>> grams;
        grams.reserve(freq.size());
        for (auto& [gram, count] : freq) {
            grams.emplace_back(gram, count);
        }
        std::sort(grams.begin(), grams.end(), [](const auto& a, const auto& b) {
            if (a.second != b.second) {
                return a.second > b.second;
            }
            return a.first < b.first;
        });
        const std::size_t count = grams.size();
        if (count == 0) {
            continue;
        }
        const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(per_class), count);

        std::unordered_set<std::string_view> taken;
        const auto push_range = [&](std::size_t begin, freq_class cls) {
            for (std::size_t r = begin; r < begin + m; ++r) {
                if (!taken.insert(grams[r].first).second) {
                    continue; // already claimed by a higher-priority class
                }
                w.queries.push_back(query_spec{grams[r].first, k, cls, query_role::unseen});
            }
        };

        push_range(0, freq_class::high);
        const std::size_t center = count / 2;
        std::size_t mid_begin = center >= m / 2 ? center - m / 2 : 0;
        mid_begin = std::min(mid_begin, count - m);
        push_range(mid_begin, freq_class::mid);
        push_range(count - m, freq_class::low);
    }
    return w;
}

workload split_workload(workload w, std::size_t n_seen, std::uint64_t seed) {
    if (n_seen > w.queries.size()) {
        throw std::invalid_argument("split_workload: n_seen " + std::to_string(n_seen) +
                                    " exceeds " + std::to_string(w.queries.size()) + " queries");
    }
    for (auto& q : w.queries) {
        q.role = query_role::unseen;
    }
    rng_engine rng(seed);
    for (const std::size_t i : sample_indices(rng, w.queries.size(), n_seen)) {
        w.queries[i].role = query_role::seen;
    }
    w.seed = seed;
    return w;
}

std::string escape_pattern(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    for (const char c : raw) {
        switch (c) {
        case '\t': out += "\\t"; break;
        case '\n': out += "\\n"; break;
        case '\\': out += "\\\\"; break;
        default: out += c;
        }
    }
    return out;
}

std::string unescape_pattern(std::string_view escaped) {
    std::string out;
    out.reserve(escaped.size());
    for (std::size_t i = 0; i < escaped.size(); ++i) {
        if (escaped[i] != '\\') {
            out += escaped[i];
            continue;
        }
        if (++i == escaped.size()) {
            throw data_error("pattern: dangling escape at end of field");
        }
        switch (escaped[i]) {
        case 't': out += '\t'; break;
        case 'n': out += '\n'; break;
        case '\\': out += '\\'; break;
        default:
            throw data_error(std::string("pattern: unknown escape '\\") + escaped[i] + "'");
        }
    }
    return out;
}

void save_workload_tsv(const workload& w, std::ostream& out) {
    for (const auto& q : w.queries) {
        out << escape_pattern(q.pattern) << '\t' << q.k << '\t' << to_string(q.cls) << '\t'
            << to_string(q.role) << '\n';
    }
    if (!out) {
        throw data_error("workload: write failed");
    }
}

workload load_workload_tsv(std::istream& in) {
    workload w;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        std::vector<std::string_view> fields;
        std::string_view rest = line;
        while (true) {
            const auto tab = rest.find('\t');
            if (tab == std::string_view::npos) {
                fields.push_back(rest);
                break;
            }
            fields.push_back(rest.substr(0, tab));
            rest = rest.substr(tab + 1);
        }
        if (fields.size() != 4) {
            throw data_error("workload line " + std::to_string(line_no) + ": expected 4 fields, got " +
                             std::to_string(fields.size()));
        }
        query_spec q;
        q.pattern = unescape_pattern(fields[0]);
        auto [ptr, ec] = std::from_chars(fields[1].data(), fields[1].data() + fields[1].size(), q.k);
        if (ec != std::errc{} || ptr != fields[1].data() + fields[1].size() || q.k < 1) {
            throw data_error("workload line " + std::to_string(line_no) + ": bad k '" +
                             std::string(fields[1]) + "'");
        }
        const auto cls = freq_class_from(fields[2]);
        if (!cls) {
            throw data_error("workload line " + std::to_string(line_no) + ": bad freq_class '" +
                             std::string(fields[2]) + "'");
        }
        q.cls = *cls;
        const auto role = role_from(fields[3]);
        if (!role) {
            throw data_error("workload line " + std::to_string(line_no) + ": bad role '" +
                             std::string(fields[3]) + "'");
        }
        q.role = *role;
        w.queries.push_back(std::move(q));
    }
    if (in.bad()) {
        throw data_error("workload: read failed");
    }
    return w;
}

void save_workload_file(const workload& w, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw data_error("cannot open '" + path + "' for writing");
    }
    save_workload_tsv(w, out);
}

workload load_workload_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw data_error("cannot open workload file '" + path + "'");
    }
    return load_workload_tsv(in);
}

} // namespace strfp
