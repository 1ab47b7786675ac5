#include "strfp/evaluation.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "strfp/errors.hpp"
#include "strfp/fingerprint.hpp"
#include "strfp/parallel.hpp"

namespace strfp {

namespace {

using clock_type = std::chrono::steady_clock;

std::string format_fixed(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
    return buf;
}

// Pattern column with workload escapes plus CSV quoting when needed.
std::string csv_pattern(const std::string& raw) {
    std::string text = escape_pattern(raw);
    if (text.find(',') == std::string::npos && text.find('"') == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (const char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_comments(std::ostream& out, const std::vector<std::string>& comments) {
    for (const std::string& line : comments) {
        out << "# " << line << '\n';
    }
}

void write_eval_fields(std::ostream& out, const eval_row& row) {
    out << csv_pattern(row.pattern) << ',' << to_string(row.role) << ',' << row.k << ','
        << to_string(row.cls) << ',' << row.true_matches << ',' << row.candidates << ','
        << row.false_positives << ',' << format_fixed(row.fpr, 6);
}

eval_row measure_query(const fingerprint_column& column, const corpus& corp,
                       const query_spec& query) {
    eval_row row;
    row.pattern = query.pattern;
    row.k = query.k;
    row.cls = query.cls;
    row.role = query.role;
    if (query.pattern.empty()) {
        // Every word contains the empty string and its fingerprint is empty,
        // so candidates and matches are both the whole corpus.
        row.true_matches = corp.size();
        row.candidates = corp.size();
        return row;
    }
    const scan_result scan = filtered_scan(column, corp, query.pattern);
    row.true_matches = scan.matches.size();
    row.candidates = scan.candidates;
    row.false_positives = scan.candidates - scan.matches.size();
    const std::uint64_t negatives = corp.size() - row.true_matches;
    row.fpr = negatives == 0
                  ? 0.0
                  : static_cast<double>(row.false_positives) / static_cast<double>(negatives);
    return row;
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

// Candidate index buffer reused across scans on the same thread; a fresh
// allocation per scan would cost more in page faults than the scan itself.
std::vector<std::uint32_t>& scan_scratch(std::size_t n) {
    thread_local std::vector<std::uint32_t> scratch;
    if (scratch.size() < n) {
        scratch.resize(n);
    }
    return scratch;
}

// Branch-free compaction: the store is unconditional and the cursor advances
// only on passing rows, so candidate patterns the branch predictor cannot
// learn do not stall the pass.
std::size_t collect_candidates(const std::uint64_t* rows, std::size_t n, std::uint64_t qbits,
                               std::uint32_t* hits) {
    std::size_t m = 0;
    for (std::size_t i = 0; i < n; ++i) {
        hits[m] = static_cast<std::uint32_t>(i);
        m += static_cast<std::size_t>((qbits & ~rows[i]) == 0);
    }
    return m;
}

} // namespace

fingerprint_column build_column(const corpus& corp, const partition& part) {
    fingerprint_column column{part, std::vector<std::uint64_t>(corp.size(), 0)};
    parallel_for(corp.size(), [&](std::size_t i) {
        column.rows[i] = part.fingerprint_of(corp.words[i]).bits;
    });
    return column;
}

void dump_column(const fingerprint_column& column, std::ostream& out) {
    for (const std::uint64_t bits : column.rows) {
        out << render(fingerprint{bits, column.part.width()}) << '\n';
    }
    if (!out) {
        throw data_error("column dump: write failed");
    }
}

scan_result filtered_scan(const fingerprint_column& column, const corpus& corp,
                          std::string_view pattern) {
    if (pattern.empty()) {
        throw std::invalid_argument("filtered_scan: pattern must be nonempty");
    }
    if (column.rows.size() != corp.size()) {
        throw std::invalid_argument("filtered_scan: column does not match corpus");
    }
    const std::uint64_t qbits = column.part.fingerprint_of(pattern).bits;
    std::vector<std::uint32_t>& hits = scan_scratch(column.rows.size());
    const std::size_t m =
        collect_candidates(column.rows.data(), column.rows.size(), qbits, hits.data());
    scan_result result;
    result.candidates = m;
    for (std::size_t c = 0; c < m; ++c) {
        const std::uint32_t i = hits[c];
        if (corp.words[i].find(pattern) != std::string::npos) {
            result.matches.push_back(i);
        }
    }
    return result;
}

eval_report evaluate(const corpus& corp, const partition& part, const workload& wl) {
    const fingerprint_column column = build_column(corp, part);
    eval_report report;
    report.rows.resize(wl.queries.size());
    parallel_for(wl.queries.size(), [&](std::size_t i) {
        report.rows[i] = measure_query(column, corp, wl.queries[i]);
    });
    for (const eval_row& row : report.rows) {
        role_aggregate& agg = row.role == query_role::seen ? report.seen : report.unseen;
        const std::uint64_t negatives = corp.size() - row.true_matches;
        agg.false_positive_pairs += row.false_positives;
        agg.negative_pairs += negatives;
        report.overall.false_positive_pairs += row.false_positives;
        report.overall.negative_pairs += negatives;
    }
    return report;
}

void write_report_csv(const eval_report& report, std::ostream& out,
                      const std::vector<std::string>& header_comments) {
    write_comments(out, header_comments);
    out << "pattern,role,k,freq_class,true_matches,candidates,false_positives,fpr\n";
    for (const eval_row& row : report.rows) {
        write_eval_fields(out, row);
        out << '\n';
    }
    if (!out) {
        throw data_error("report: write failed");
    }
}

bench_report bench_scan(const corpus& corp, const partition& part, const workload& wl,
                        int repeats) {
    if (repeats < 1) {
        throw std::invalid_argument("bench_scan: repeats must be >= 1");
    }
    const fingerprint_column column = build_column(corp, part);
    bench_report report;
    report.repeats = repeats;
    report.rows.reserve(wl.queries.size());

    for (const query_spec& query : wl.queries) {
        bench_row row;
        row.eval = measure_query(column, corp, query);

        const std::string& pattern = query.pattern;
        std::uint64_t sink = 0;
        const auto full_pass = [&]() {
            std::uint64_t matches = 0;
            for (const std::string& word : corp.words) {
                if (word.find(pattern) != std::string::npos) {
                    ++matches;
                }
            }
            return matches;
        };
        const std::uint64_t qbits = part.fingerprint_of(pattern).bits;
        const auto filtered_pass = [&]() {
            std::uint64_t matches = 0;
            std::vector<std::uint32_t>& hits = scan_scratch(column.rows.size());
            const std::size_t m =
                collect_candidates(column.rows.data(), column.rows.size(), qbits, hits.data());
            for (std::size_t c = 0; c < m; ++c) {
                if (corp.words[hits[c]].find(pattern) != std::string::npos) {
                    ++matches;
                }
            }
            return matches;
        };

        sink += full_pass() + filtered_pass(); // warmup, untimed
        std::vector<double> full_ms, filtered_ms;
        full_ms.reserve(static_cast<std::size_t>(repeats));
        filtered_ms.reserve(static_cast<std::size_t>(repeats));
        for (int r = 0; r < repeats; ++r) {
            auto t0 = clock_type::now();
            sink += full_pass();
            auto t1 = clock_type::now();
            sink += filtered_pass();
            auto t2 = clock_type::now();
            full_ms.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
            filtered_ms.push_back(std::chrono::duration<double, std::milli>(t2 - t1).count());
        }
        asm volatile("" : : "g"(sink) : "memory");

        row.t_full_ms = median_of(std::move(full_ms));
        row.t_filtered_ms = median_of(std::move(filtered_ms));
        row.speedup = row.t_filtered_ms > 0.0 ? row.t_full_ms / row.t_filtered_ms : 0.0;
        report.rows.push_back(std::move(row));
    }
    return report;
}

void write_bench_csv(const bench_report& report, std::ostream& out,
                     const std::vector<std::string>& header_comments) {
    write_comments(out, header_comments);
    out << "pattern,role,k,freq_class,true_matches,candidates,false_positives,fpr,"
           "t_full_ms,t_filtered_ms,speedup\n";
    for (const bench_row& row : report.rows) {
        write_eval_fields(out, row.eval);
        out << ',' << format_fixed(row.t_full_ms, 6) << ',' << format_fixed(row.t_filtered_ms, 6)
            << ',' << format_fixed(row.speedup, 3) << '\n';
    }
    if (!out) {
        throw data_error("bench report: write failed");
    }
}

} // namespace strfp
