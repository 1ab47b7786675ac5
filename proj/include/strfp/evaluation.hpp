#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "strfp/corpus.hpp"
#include "strfp/partition.hpp"
#include "strfp/workload.hpp"

namespace strfp {

// Per-word fingerprint array aligned with corpus order.
struct fingerprint_column {
    partition part;
    std::vector<std::uint64_t> rows;

    std::size_t size() const { return rows.size(); }
};

fingerprint_column build_column(const corpus& corp, const partition& part);

// One rendered bitstring per line, aligned to the corpus.
void dump_column(const fingerprint_column& column, std::ostream& out);

struct scan_result {
    std::uint64_t candidates = 0;             // rows passing the subset test
    std::vector<std::uint32_t> matches;       // exact containment, ascending
};

// Counts candidate rows and verifies containment on candidates only. Because
// the candidate test admits no false negatives, `matches` equals the full
// oracle result. The pattern must be nonempty.
scan_result filtered_scan(const fingerprint_column& column, const corpus& corp,
                          std::string_view pattern);

struct eval_row {
    std::string pattern;
    int k = 0;
    freq_class cls = freq_class::high;
    query_role role = query_role::unseen;
    std::uint64_t true_matches = 0;
    std::uint64_t candidates = 0;
    std::uint64_t false_positives = 0;
    double fpr = 0.0; // false_positives / (corpus_size - true_matches), 0/0 -> 0
};

// Pair-weighted aggregate: total false-positive pairs over total negative pairs.
struct role_aggregate {
    std::uint64_t false_positive_pairs = 0;
    std::uint64_t negative_pairs = 0;
    double fpr() const {
        if (negative_pairs == 0) {
            return 0.0;
        }
        return static_cast<double>(false_positive_pairs) / static_cast<double>(negative_pairs);
    }
};

struct eval_report {
    std::vector<eval_row> rows; // workload order
    role_aggregate seen;
    role_aggregate unseen;
    role_aggregate overall;
};

eval_report evaluate(const corpus& corp, const partition& part, const workload& wl);

// CSV: pattern,role,k,freq_class,true_matches,candidates,false_positives,fpr
// preceded by '#' comment lines carrying the given provenance header.
void write_report_csv(const eval_report& report, std::ostream& out,
                      const std::vector<std::string>& header_comments = {});

struct bench_row {
    eval_row eval;
    double t_full_ms = 0.0;     // median full-scan wall time
    double t_filtered_ms = 0.0; // median fingerprint-filtered scan wall time
    double speedup = 0.0;       // t_full / t_filtered
};

struct bench_report {
    std::vector<bench_row> rows;
    int repeats = 0;
};

// Times, per query, a full exact-containment scan against a fingerprint-masked
// scan that verifies candidates only. Medians over `repeats` runs; a warmup
// pass precedes the timed runs. Single-threaded for stable numbers.
bench_report bench_scan(const corpus& corp, const partition& part, const workload& wl,
                        int repeats);

// Report CSV columns plus t_full_ms,t_filtered_ms,speedup.
void write_bench_csv(const bench_report& report, std::ostream& out,
                     const std::vector<std::string>& header_comments = {});

} // namespace strfp
