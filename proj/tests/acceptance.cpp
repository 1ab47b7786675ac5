// Acceptance gate. Runs eight independent checks against the built library
// and prints one [PASS]/[FAIL] line each; exits nonzero if any fail. Slow
// checks carry their own wall-clock budget and fail when they blow it.

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "strfp/corpus.hpp"
#include "strfp/evaluation.hpp"
#include "strfp/fingerprint.hpp"
#include "strfp/mip.hpp"
#include "strfp/oracle.hpp"
#include "strfp/parallel.hpp"
#include "strfp/partition.hpp"
#include "strfp/rng.hpp"
#include "strfp/solver.hpp"
#include "strfp/training.hpp"
#include "strfp/workload.hpp"

#include "support/test_util.hpp"

using namespace strfp;

namespace {

int g_failures = 0;

class stopwatch {
public:
    stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int index, const char* name, bool ok, double elapsed_s, const std::string& detail) {
    std::printf("[%s] %d %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", index, name, elapsed_s,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
    if (!ok) {
        ++g_failures;
    }
}

partition random_partition(const alphabet& alpha, int width, rng_engine& rng) {
    std::array<std::uint8_t, 256> bins{};
    for (int b = 0; b < 256; ++b) {
        bins[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(b % width);
    }
    for (const std::uint8_t m : alpha.members()) {
        bins[m] = static_cast<std::uint8_t>(uniform_below(rng, static_cast<std::uint64_t>(width)));
    }
    return partition(width, bins, alpha, provenance{provenance_tag::round_robin});
}

// Small random instances shared by the solver, model, and redundancy checks.
// Alphabet of 2..8 letters, width 2..3, up to 10 words and 5 queries; small
// enough that every assignment can be enumerated outright.
std::vector<training_instance> tiny_instances() {
    std::vector<training_instance> out;
    rng_engine rng(11);
    const std::string pool = "abcdefgh";
    for (int t = 0; t < 24; ++t) {
        const std::size_t a_size = 2 + uniform_below(rng, 7);
        const alphabet alpha = alphabet::from_chars(std::string_view(pool).substr(0, a_size));
        const int width = 2 + static_cast<int>(uniform_below(rng, 2));
        const auto random_string = [&](std::size_t max_len) {
            std::string s;
            const std::size_t len = 1 + uniform_below(rng, max_len);
            for (std::size_t i = 0; i < len; ++i) {
                s.push_back(pool[uniform_below(rng, a_size)]);
            }
            return s;
        };
        std::vector<std::string> words;
        const std::size_t n_words = 1 + uniform_below(rng, 10);
        for (std::size_t i = 0; i < n_words; ++i) {
            words.push_back(random_string(6));
        }
        std::vector<std::string> queries;
        const std::size_t n_queries = 1 + uniform_below(rng, 5);
        for (std::size_t i = 0; i < n_queries; ++i) {
            queries.push_back(random_string(3));
        }
        out.push_back(make_training_instance(test::make_corpus(std::move(words), alpha),
                                             std::move(queries), width));
    }
    return out;
}

// Partitions produced by the solver checks, kept for the redundancy check.
std::vector<std::pair<const training_instance*, partition>> g_trained;

void check_golden_fingerprints() {
    const stopwatch timer;
    const alphabet alpha = alphabet::from_chars("alunote");
    std::array<std::uint8_t, 256> bins{};
    for (int b = 0; b < 256; ++b) {
        bins[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(b % 4);
    }
    for (const char c : std::string("alu")) {
        bins[static_cast<unsigned char>(c)] = 0;
    }
    bins[static_cast<unsigned char>('o')] = 1;
    for (const char c : std::string("nte")) {
        bins[static_cast<unsigned char>(c)] = 2;
    }
    const partition part(4, bins, alpha, provenance{provenance_tag::round_robin});

    const fingerprint word = part.fingerprint_of("nutella");
    const fingerprint hit = part.fingerprint_of("utn");
    const fingerprint miss = part.fingerprint_of("tone");
    const bool ok = render(word) == "1010" && render(hit) == "1010" && render(miss) == "0110" &&
                    is_candidate(hit, word) && !is_candidate(miss, word);
    const double elapsed = timer.seconds();
    report(1, "golden fingerprints render and filter", ok && elapsed < 1.0,
           elapsed, "nutella=" + render(word) + " utn=" + render(hit) + " tone=" + render(miss));
}

void check_no_false_negatives() {
    const stopwatch timer;
    rng_engine rng(7);
    const std::string pool = "abcdefghijklmnopqrstuvwxyz0123456789+/";
    const int trials = 12000;
    int violations = 0;
    int matches_checked = 0;
    for (int t = 0; t < trials; ++t) {
        const std::size_t a_size = 2 + uniform_below(rng, 10);
        const alphabet alpha = alphabet::from_chars(std::string_view(pool).substr(0, a_size));
        const int width = 1 + static_cast<int>(uniform_below(rng, 8));
        const partition part = random_partition(alpha, width, rng);

        // every third word draws from beyond the alphabet to hit the fallback
        const std::size_t draw = t % 3 == 0 ? std::min(a_size + 3, pool.size()) : a_size;
        std::string word;
        const std::size_t len = 1 + uniform_below(rng, 12);
        for (std::size_t i = 0; i < len; ++i) {
            word.push_back(pool[uniform_below(rng, draw)]);
        }
        const std::size_t start = uniform_below(rng, word.size());
        const std::string inside = word.substr(start, 1 + uniform_below(rng, word.size() - start));

        std::string probe;
        const std::size_t probe_len = 1 + uniform_below(rng, 4);
        for (std::size_t i = 0; i < probe_len; ++i) {
            probe.push_back(pool[uniform_below(rng, draw)]);
        }

        const fingerprint fw = part.fingerprint_of(word);
        for (const std::string& pattern : {inside, probe}) {
            if (!test::contains_naive(word, pattern)) {
                continue;
            }
            ++matches_checked;
            if (!is_candidate(part.fingerprint_of(pattern), fw)) {
                ++violations;
            }
        }
    }
    const double elapsed = timer.seconds();
    report(2, "no false negatives across random trials",
           violations == 0 && matches_checked >= 10000 && elapsed < 30.0, elapsed,
           std::to_string(matches_checked) + " matching pairs, " + std::to_string(violations) +
               " violations");
}

void check_exact_matches_brute_force(const std::vector<training_instance>& instances) {
    const stopwatch timer;
    int mismatches = 0;
    for (const training_instance& inst : instances) {
        const solve_result res = exact_solve(inst);
        const std::int64_t got =
            res.trace.incumbents.empty() ? 0 : res.trace.incumbents.back().objective;
        const std::int64_t want = test::brute_force_best_objective(inst);
        if (got != want || res.trace.status != solve_status::optimal) {
            ++mismatches;
        }
        g_trained.emplace_back(&inst, res.best);
    }
    const double elapsed = timer.seconds();
    report(3, "exact solver matches brute force",
           mismatches == 0 && instances.size() >= 20 && elapsed < 60.0, elapsed,
           std::to_string(instances.size()) + " instances, " + std::to_string(mismatches) +
               " mismatches");
}

void check_model_fidelity(const std::vector<training_instance>& instances) {
    const stopwatch timer;
    bool ok = true;
    std::string detail;
    rng_engine rng(13);

    const model_instance fixture = build_mip(test::four_letter_instance());
    if (fixture.vars().total() != 22 || fixture.constraints().total() != 38) {
        ok = false;
        detail = "fixture counts off: " + std::to_string(fixture.vars().total()) + " vars, " +
                 std::to_string(fixture.constraints().total()) + " constraints";
    }

    for (const training_instance& inst : instances) {
        const model_instance model = build_mip(inst);
        const std::size_t a = inst.words.alpha.members().size();
        const std::size_t n = static_cast<std::size_t>(inst.width);
        const std::size_t w = inst.words.words.size();
        const std::size_t q = inst.queries.size();
        const std::size_t p = inst.negative_pairs.size();
        std::size_t udist = 0;
        for (const auto& bytes : inst.word_bytes) {
            udist += bytes.size();
        }
        for (const auto& bytes : inst.query_bytes) {
            udist += bytes.size();
        }
        const var_counts vars = model.vars();
        const constraint_counts cons = model.constraints();
        if (vars.x != a * n || vars.d != (w + q) * n || vars.eta != p || vars.z != p * n ||
            cons.assignment != a || cons.fp_lower != n * udist || cons.fp_upper != n * (w + q) ||
            cons.z_link != 3 * n * p || cons.eta_link != p) {
            ok = false;
            detail = "count formulas broken";
            break;
        }

        const test::lp_model_text parsed = test::parse_lp(model.lp_text());
        if (parsed.rows.size() != cons.total() || parsed.binaries.size() != vars.total()) {
            ok = false;
            detail = "emitted rows disagree with counts";
            break;
        }
        for (int r = 0; r < 50 && ok; ++r) {
            const partition part = random_partition(inst.words.alpha, inst.width, rng);
            const auto values = test::induced_assignment(inst, part);
            for (const test::lp_row& row : parsed.rows) {
                if (!test::row_satisfied(row, values)) {
                    ok = false;
                    detail = "induced point violates " + row.name;
                    break;
                }
            }
            long eta_sum = 0;
            for (const auto& [name, value] : values) {
                if (name.rfind("eta_", 0) == 0) {
                    eta_sum += value;
                }
            }
            if (eta_sum != objective(part, inst).correct) {
                ok = false;
                detail = "eta sum disagrees with the objective";
            }
        }
        if (!ok) {
            break;
        }
    }
    const double elapsed = timer.seconds();
    if (ok && elapsed >= 60.0) {
        ok = false;
        detail = "over budget";
    }
    if (ok) {
        detail = std::to_string(instances.size()) + " models, 50 partitions each";
    }
    report(4, "model rows hold and eta attains the objective", ok, elapsed, detail);
}

struct full_run {
    corpus corp{{}, alphabet::printable_ascii(), 0};
    workload wl;
    partition optimized = round_robin_partition(alphabet::printable_ascii(), 16);
    bool valid = false;
};

std::string fpr4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

void check_beats_baseline(full_run& run) {
    const stopwatch timer;
    const std::string path = std::string(STRFP_DATA_DIR) + "/words.txt";
    run.corp = load_corpus_file(path, alphabet::printable_ascii(), ingest_policy::drop_row);

    std::vector<int> ks;
    for (int k = 1; k <= 10; ++k) {
        ks.push_back(k);
    }
    run.wl = split_workload(generate_workload(run.corp, ks, 10, 1), 20, 1);
    const corpus sample = sample_training(run.corp, 65536, 50, 2);
    const training_instance inst =
        make_training_instance(sample, run.wl.patterns(query_role::seen), 16);

    local_search_options opts;
    opts.time_limit_s = 60.0;
    opts.seed = 3;
    const solve_result res = local_search(inst, opts);
    run.optimized = res.best;

    const partition baseline = round_robin_partition(run.corp.alpha, 16);
    const eval_report tuned = evaluate(run.corp, run.optimized, run.wl);
    const eval_report plain = evaluate(run.corp, baseline, run.wl);

    std::size_t seen_count = 0;
    for (const query_spec& qs : run.wl.queries) {
        seen_count += qs.role == query_role::seen ? 1 : 0;
    }
    const double elapsed = timer.seconds();
    const bool ok = run.corp.size() >= 50000 && run.wl.queries.size() >= 250 &&
                    seen_count == 20 && tuned.seen.fpr() < plain.seen.fpr() &&
                    tuned.unseen.fpr() <= plain.unseen.fpr() * 1.05 + 1e-12 && elapsed <= 180.0;
    run.valid = ok;
    report(5, "trained partition beats round robin", ok, elapsed,
           "seen " + fpr4(tuned.seen.fpr()) + " vs " + fpr4(plain.seen.fpr()) + ", unseen " +
               fpr4(tuned.unseen.fpr()) + " vs " + fpr4(plain.unseen.fpr()) + ", " +
               std::to_string(run.wl.queries.size()) + " queries over " +
               std::to_string(run.corp.size()) + " words");
}

void check_filtered_scan_speed(const full_run& run) {
    const stopwatch timer;
    if (!run.valid) {
        report(6, "filtered scan not slower on selective queries", false, timer.seconds(),
               "skipped: previous check did not produce a partition");
        return;
    }
    const bench_report bench = bench_scan(run.corp, run.optimized, run.wl, 3);
    const double n = static_cast<double>(run.corp.size());
    std::size_t selective = 0;
    std::size_t slower = 0;
    std::vector<double> speedups;
    for (const bench_row& row : bench.rows) {
        speedups.push_back(row.speedup);
        if (static_cast<double>(row.eval.candidates) / n >= 0.5) {
            continue;
        }
        ++selective;
        if (row.t_filtered_ms > row.t_full_ms) {
            ++slower;
        }
    }
    std::sort(speedups.begin(), speedups.end());
    const double median_speedup = speedups.empty() ? 0.0 : speedups[speedups.size() / 2];
    const double elapsed = timer.seconds();
    report(6, "filtered scan not slower on selective queries", slower == 0 && selective > 0,
           elapsed,
           std::to_string(selective) + " selective queries, " + std::to_string(slower) +
               " slower, median speedup " + fpr4(median_speedup) + "x");
}

void check_query_bits_subset(const full_run& run) {
    const stopwatch timer;
    std::uint64_t pairs = 0;
    std::uint64_t violations = 0;
    for (const auto& [inst, part] : g_trained) {
        for (std::size_t qi = 0; qi < inst->queries.size(); ++qi) {
            const fingerprint fq = part.fingerprint_of(inst->queries[qi]);
            for (const std::uint32_t wi : inst->oracle.matches[qi]) {
                ++pairs;
                if (!is_candidate(fq, part.fingerprint_of(inst->words.words[wi]))) {
                    ++violations;
                }
            }
        }
    }

    std::atomic<std::uint64_t> big_pairs{0};
    std::atomic<std::uint64_t> big_violations{0};
    if (run.valid) {
        const std::vector<std::string> patterns = run.wl.all_patterns();
        parallel_for(patterns.size(), [&](std::size_t qi) {
            const std::string& pattern = patterns[qi];
            const fingerprint fq = run.optimized.fingerprint_of(pattern);
            std::uint64_t local_pairs = 0;
            std::uint64_t local_bad = 0;
            for (const std::string& word : run.corp.words) {
                if (word.find(pattern) == std::string::npos) {
                    continue;
                }
                ++local_pairs;
                if (!is_candidate(fq, run.optimized.fingerprint_of(word))) {
                    ++local_bad;
                }
            }
            big_pairs += local_pairs;
            big_violations += local_bad;
        });
    }
    const double elapsed = timer.seconds();
    const bool ok = violations == 0 && big_violations == 0 && pairs > 0 &&
                    (!run.valid || big_pairs > 0);
    report(7, "query bits stay within matching word bits", ok, elapsed,
           std::to_string(pairs + big_pairs) + " matching pairs, " +
               std::to_string(violations + big_violations) + " violations");
}

void check_lp_round_trip() {
    const stopwatch timer;
    const training_instance inst = test::four_letter_instance();
    const model_instance model = build_mip(inst);

    test::temp_dir dir;
    {
        std::ofstream out(dir.file("model.lp"), std::ios::binary);
        export_lp(model, out);
    }
    const std::string lp = test::read_file(dir.file("model.lp"));

    test::write_file(dir.file("solution.txt"),
                     "x_97_0 1\nx_98_0 1\nx_99_1 1\nx_100_1 1\n");
    std::ifstream in(dir.file("solution.txt"), std::ios::binary);
    const partition part = import_solution(model, in);
    const objective_result obj = objective(part, inst);

    const double elapsed = timer.seconds();
    const bool ok = lp.rfind("Maximize\n", 0) == 0 && lp.find("\nEnd\n") != std::string::npos &&
                    part.origin().tag == provenance_tag::imported && obj.correct == 2 &&
                    obj.total_negatives == 2 && elapsed < 1.0;
    report(8, "lp round trip reproduces the optimum", ok, elapsed,
           "objective " + std::to_string(obj.correct) + " of " +
               std::to_string(obj.total_negatives));
}

} // namespace

int main() {
    const stopwatch total;
    try {
        check_golden_fingerprints();
        check_no_false_negatives();
        const std::vector<training_instance> instances = tiny_instances();
        check_exact_matches_brute_force(instances);
        check_model_fidelity(instances);
        full_run run;
        check_beats_baseline(run);
        check_filtered_scan_speed(run);
        check_query_bits_subset(run);
        check_lp_round_trip();
    } catch (const std::exception& e) {
        std::printf("[FAIL] aborted by exception: %s\n", e.what());
        ++g_failures;
    }
    std::printf("%s: %d of 8 criteria failed (%.1fs total)\n", g_failures == 0 ? "OK" : "FAILED",
                g_failures, total.seconds());
    return g_failures == 0 ? 0 : 1;
}
