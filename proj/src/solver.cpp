#include "strfp/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>

#include "strfp/errors.hpp"
#include "strfp/rng.hpp"

namespace strfp {

namespace {

using clock_type = std::chrono::steady_clock;

double elapsed_seconds(clock_type::time_point start) {
    return std::chrono::duration<double>(clock_type::now() - start).count();
}

// Objective evaluation specialized to alphabet-member bins. Bins of bytes
// outside the alphabet never move, so their contribution per string is a
// precomputed constant mask.
struct compiled_instance {
    int width = 0;
    std::vector<std::vector<std::uint16_t>> word_ranks;
    std::vector<std::vector<std::uint16_t>> query_ranks;
    std::vector<std::uint64_t> word_fixed;
    std::vector<std::uint64_t> query_fixed;
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>* pairs = nullptr;

    mutable std::vector<std::uint64_t> word_fp;
    mutable std::vector<std::uint64_t> query_fp;

    static compiled_instance make(const training_instance& inst,
                                  const std::array<std::uint8_t, 256>& base_bins) {
        compiled_instance ci;
        ci.width = inst.width;
        ci.pairs = &inst.negative_pairs;
        const alphabet& alpha = inst.words.alpha;
        const auto compile = [&](const std::vector<std::vector<std::uint8_t>>& byte_sets,
                                 std::vector<std::vector<std::uint16_t>>& ranks,
                                 std::vector<std::uint64_t>& fixed) {
            ranks.resize(byte_sets.size());
            fixed.resize(byte_sets.size(), 0);
            for (std::size_t i = 0; i < byte_sets.size(); ++i) {
                for (const std::uint8_t b : byte_sets[i]) {
                    const int rank = alpha.rank_of(b);
                    if (rank >= 0) {
                        ranks[i].push_back(static_cast<std::uint16_t>(rank));
                    } else {
                        fixed[i] |= std::uint64_t{1} << base_bins[b];
                    }
                }
            }
        };
        compile(inst.word_bytes, ci.word_ranks, ci.word_fixed);
        compile(inst.query_bytes, ci.query_ranks, ci.query_fixed);
        ci.word_fp.resize(ci.word_ranks.size());
        ci.query_fp.resize(ci.query_ranks.size());
        return ci;
    }

    std::int64_t evaluate(const std::vector<std::uint8_t>& member_bins) const {
        for (std::size_t i = 0; i < word_ranks.size(); ++i) {
            std::uint64_t bits = word_fixed[i];
            for (const std::uint16_t r : word_ranks[i]) {
                bits |= std::uint64_t{1} << member_bins[r];
            }
            word_fp[i] = bits;
        }
        for (std::size_t i = 0; i < query_ranks.size(); ++i) {
            std::uint64_t bits = query_fixed[i];
            for (const std::uint16_t r : query_ranks[i]) {
                bits |= std::uint64_t{1} << member_bins[r];
            }
            query_fp[i] = bits;
        }
        std::int64_t correct = 0;
        for (const auto& [qi, wi] : *pairs) {
            if ((query_fp[qi] & ~word_fp[wi]) != 0) {
                ++correct;
            }
        }
        return correct;
    }
};

partition assemble_partition(const training_instance& inst,
                             const std::array<std::uint8_t, 256>& base_bins,
                             const std::vector<std::uint8_t>& member_bins, provenance origin) {
    std::array<std::uint8_t, 256> bins = base_bins;
    const auto& members = inst.words.alpha.members();
    for (std::size_t i = 0; i < members.size(); ++i) {
        bins[members[i]] = member_bins[i];
    }
    return partition(inst.width, bins, inst.words.alpha, origin);
}

std::array<std::uint8_t, 256> modulo_bins(int width) {
    std::array<std::uint8_t, 256> bins{};
    for (int b = 0; b < 256; ++b) {
        bins[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(b % width);
    }
    return bins;
}

} // namespace

std::string_view to_string(solve_status s) {
    switch (s) {
    case solve_status::optimal: return "optimal";
    case solve_status::time_limit: return "time_limit";
    case solve_status::iteration_limit: return "iteration_limit";
    }
    return "optimal";
}

void write_trace_csv(const solve_trace& trace, std::ostream& out) {
    out << "elapsed_s,objective,fpr\n";
    char buf[64];
    for (const auto& point : trace.incumbents) {
        const double fpr =
            trace.total_negatives == 0
                ? 0.0
                : 1.0 - static_cast<double>(point.objective) /
                            static_cast<double>(trace.total_negatives);
        std::snprintf(buf, sizeof(buf), "%.3f,%lld,%.6f", point.elapsed_s,
                      static_cast<long long>(point.objective), fpr);
        out << buf << '\n';
    }
    if (!out) {
        throw data_error("trace: write failed");
    }
}

solve_result exact_solve(const training_instance& inst) {
    const alphabet& alpha = inst.words.alpha;
    const std::size_t m = alpha.size();
    if (m > kExactAlphabetLimit) {
        throw guard_error("exact_solve: alphabet has " + std::to_string(m) +
                          " members, exact enumeration is limited to " +
                          std::to_string(kExactAlphabetLimit));
    }
    const auto start = clock_type::now();
    const auto base_bins = modulo_bins(inst.width);
    const auto ci = compiled_instance::make(inst, base_bins);
    const auto total = static_cast<std::int64_t>(inst.negative_pairs.size());
    const int max_bin = inst.width - 1;

    std::vector<std::uint8_t> assignment(m, 0);
    std::vector<std::uint8_t> best;
    std::int64_t best_obj = -1;

    solve_trace trace;
    trace.total_negatives = total;
    trace.status = solve_status::optimal;

    // Restricted growth: a value may exceed the running maximum by at most
    // one, which visits every set partition exactly once.
    const auto visit = [&](const auto& self, std::size_t pos, int max_used) -> bool {
        if (pos == m) {
            const std::int64_t obj = ci.evaluate(assignment);
            if (obj > best_obj) {
                best_obj = obj;
                best = assignment;
                trace.incumbents.push_back(
                    trace_point{elapsed_seconds(start), best_obj,
                                assemble_partition(inst, base_bins, best,
                                                   provenance{provenance_tag::exact})});
            }
            return best_obj == total; // upper bound reached, stop early
        }
        const int limit = std::min(max_used + 1, max_bin);
        for (int v = 0; v <= limit; ++v) {
            assignment[pos] = static_cast<std::uint8_t>(v);
            if (self(self, pos + 1, std::max(max_used, v))) {
                return true;
            }
        }
        return false;
    };
    assignment[0] = 0;
    visit(visit, 1, 0);

    return solve_result{
        assemble_partition(inst, base_bins, best, provenance{provenance_tag::exact}), trace};
}

solve_result local_search(const training_instance& inst, const local_search_options& opts) {
    if (!opts.max_evaluations && opts.time_limit_s <= 0.0) {
        throw std::invalid_argument("local_search: time limit must be positive");
    }
    const alphabet& alpha = inst.words.alpha;
    const std::size_t m = alpha.size();
    const int n = inst.width;
    const auto start = clock_type::now();
    rng_engine rng(opts.seed);

    provenance origin{provenance_tag::local_search};
    origin.seed = opts.seed;
    if (opts.max_evaluations) {
        origin.iteration_cap = *opts.max_evaluations;
    } else {
        origin.time_limit_s = opts.time_limit_s;
    }

    std::array<std::uint8_t, 256> base_bins = modulo_bins(n);
    std::vector<std::uint8_t> current(m, 0);
    switch (opts.init) {
    case local_search_options::init_kind::round_robin:
        for (std::size_t i = 0; i < m; ++i) {
            current[i] = static_cast<std::uint8_t>(i % static_cast<std::size_t>(n));
        }
        break;
    case local_search_options::init_kind::random:
        for (std::size_t i = 0; i < m; ++i) {
            current[i] = static_cast<std::uint8_t>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        }
        break;
    case local_search_options::init_kind::given:
        if (!opts.init_partition) {
            throw std::invalid_argument("local_search: init_kind::given needs init_partition");
        }
        if (opts.init_partition->width() != n) {
            throw std::invalid_argument("local_search: init partition width mismatch");
        }
        base_bins = opts.init_partition->bins();
        for (std::size_t i = 0; i < m; ++i) {
            current[i] = opts.init_partition->bin_of(alpha.members()[i]);
        }
        break;
    }

    const auto ci = compiled_instance::make(inst, base_bins);
    const auto total = static_cast<std::int64_t>(inst.negative_pairs.size());

    std::int64_t cur_obj = ci.evaluate(current);
    std::vector<std::uint8_t> best = current;
    std::int64_t best_obj = cur_obj;

    solve_trace trace;
    trace.total_negatives = total;
    trace.incumbents.push_back(trace_point{
        0.0, best_obj, assemble_partition(inst, base_bins, best, origin)});

    std::uint64_t evals = 0;
    const auto out_of_budget = [&]() {
        if (opts.max_evaluations) {
            return evals >= *opts.max_evaluations; // clock ignored for reproducibility
        }
        return elapsed_seconds(start) >= opts.time_limit_s;
    };
    const auto record_best = [&]() {
        best = current;
        best_obj = cur_obj;
        trace.incumbents.push_back(trace_point{
            elapsed_seconds(start), best_obj, assemble_partition(inst, base_bins, best, origin)});
    };

    trace.status = opts.max_evaluations ? solve_status::iteration_limit : solve_status::time_limit;
    bool stopped = best_obj == total;
    if (stopped) {
        trace.status = solve_status::optimal;
    }

    while (!stopped) {
        // Climb to a local optimum, accepting the first improving move.
        bool improved_in_sweep = true;
        while (improved_in_sweep && !stopped) {
            improved_in_sweep = false;
            for (std::size_t mi = 0; mi < m && !stopped; ++mi) {
                const std::uint8_t orig = current[mi];
                for (int b = 0; b < n; ++b) {
                    if (b == orig) {
                        continue;
                    }
                    if (out_of_budget()) {
                        stopped = true;
                        break;
                    }
                    current[mi] = static_cast<std::uint8_t>(b);
                    ++evals;
                    const std::int64_t obj = ci.evaluate(current);
                    if (obj > cur_obj) {
                        cur_obj = obj;
                        improved_in_sweep = true;
                        if (cur_obj > best_obj) {
                            record_best();
                            if (best_obj == total) {
                                trace.status = solve_status::optimal;
                                stopped = true;
                            }
                        }
                        break; // move on to the next byte
                    }
                    current[mi] = orig;
                }
            }
        }
        if (stopped || out_of_budget()) {
            break;
        }
        // Restart from a uniformly random assignment.
        for (std::size_t i = 0; i < m; ++i) {
            current[i] = static_cast<std::uint8_t>(uniform_below(rng, static_cast<std::uint64_t>(n)));
        }
        ++evals;
        cur_obj = ci.evaluate(current);
        if (cur_obj > best_obj) {
            record_best();
            if (best_obj == total) {
                trace.status = solve_status::optimal;
                stopped = true;
            }
        }
    }

    return solve_result{assemble_partition(inst, base_bins, best, origin), trace};
}

} // namespace strfp
