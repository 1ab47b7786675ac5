#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "strfp/corpus.hpp"

namespace strfp {

enum class freq_class : std::uint8_t { high, mid, low };
enum class query_role : std::uint8_t { seen, unseen };

std::string_view to_string(freq_class c);
std::string_view to_string(query_role r);

struct query_spec {
    std::string pattern;
    int k = 0;
    freq_class cls = freq_class::high;
    query_role role = query_role::unseen;

    bool operator==(const query_spec&) const = default;
};

// Frequency-stratified query patterns extracted from a corpus. Patterns are
// unique within a workload and each occurs in at least one corpus word.
struct workload {
    std::vector<query_spec> queries;
    std::uint64_t seed = 0;

    std::vector<std::string> patterns(query_role role) const;
    std::vector<std::string> all_patterns() const;
};

// Document frequency of each k-gram: the number of words containing the gram
// at least once. Grams never span word boundaries.
std::unordered_map<std::string, std::uint32_t> kgram_frequencies(const corpus& corp, int k);

// For each k: sort grams by (frequency desc, bytes asc), then pick the top
// per_class as high, per_class centered on rank count/2 as mid, and the bottom
// per_class as low. Classes are deduplicated with priority high > mid > low;
// when fewer grams exist than requested, whatever exists is taken.
workload generate_workload(const corpus& corp, std::span<const int> ks, int per_class,
                           std::uint64_t seed);

// Tags a uniformly random subset of n_seen queries as seen, the rest unseen.
workload split_workload(workload w, std::size_t n_seen, std::uint64_t seed);

// TSV, one query per line: pattern<TAB>k<TAB>freq_class<TAB>role.
// Patterns escape tab as \t, backslash as \\ and newline as \n.
void save_workload_tsv(const workload& w, std::ostream& out);
workload load_workload_tsv(std::istream& in);
void save_workload_file(const workload& w, const std::string& path);
workload load_workload_file(const std::string& path);

std::string escape_pattern(std::string_view raw);
std::string unescape_pattern(std::string_view escaped);

} // namespace strfp
