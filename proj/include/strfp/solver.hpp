#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "strfp/partition.hpp"
#include "strfp/training.hpp"

namespace strfp {

enum class solve_status : std::uint8_t { optimal, time_limit, iteration_limit };

std::string_view to_string(solve_status s);

struct trace_point {
    double elapsed_s = 0.0;
    std::int64_t objective = 0;
    partition snapshot;
};

// Incumbent stream of a solver run; objective values are non-decreasing.
struct solve_trace {
    std::vector<trace_point> incumbents;
    solve_status status = solve_status::optimal;
    std::int64_t total_negatives = 0;
};

struct solve_result {
    partition best;
    solve_trace trace;
};

// CSV: elapsed_s,objective,fpr
void write_trace_csv(const solve_trace& trace, std::ostream& out);

inline constexpr std::size_t kExactAlphabetLimit = 14;

// Enumerates set partitions of the alphabet into at most `width` bins via
// restricted growth strings, so bin relabelings are visited once. Returns the
// first partition attaining the maximum objective in enumeration order.
// Guarded to alphabets of at most kExactAlphabetLimit members.
solve_result exact_solve(const training_instance& inst);

struct local_search_options {
    enum class init_kind : std::uint8_t { round_robin, random, given };

    double time_limit_s = 300.0;
    // When set, the run stops after exactly this many objective evaluations
    // and the clock is ignored, making the result reproducible.
    std::optional<std::uint64_t> max_evaluations;
    std::uint64_t seed = 0;
    init_kind init = init_kind::round_robin;
    std::optional<partition> init_partition; // required for init_kind::given
};

// Anytime first-improvement hill climbing over single-byte moves (reassign
// one alphabet byte to another bin), with random restarts at local optima.
// The returned objective is never below the initial partition's.
solve_result local_search(const training_instance& inst, const local_search_options& opts);

} // namespace strfp
