#include "doctest.h"

#include <sstream>

#include "strfp/errors.hpp"
#include "strfp/evaluation.hpp"
#include "strfp/rng.hpp"
#include "strfp/solver.hpp"

#include "support/test_util.hpp"

using namespace strfp;

namespace {

// a,l,u -> 0; o -> 1; n,t,e -> 2 at width 4 over the two-word corpus.
struct scan_fixture {
    corpus corp;
    partition part;

    scan_fixture()
        : corp(test::make_corpus({"nutella", "tone"}, alphabet::from_chars("alunote"))),
          part(make_partition()) {}

    static partition make_partition() {
        std::array<std::uint8_t, 256> bins{};
        for (int b = 0; b < 256; ++b) {
            bins[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>(b % 4);
        }
        bins['a'] = 0;
        bins['l'] = 0;
        bins['u'] = 0;
        bins['o'] = 1;
        bins['n'] = 2;
        bins['t'] = 2;
        bins['e'] = 2;
        return partition(4, bins, alphabet::from_chars("alunote"), provenance{});
    }
};

workload single_query(std::string pattern) {
    workload wl;
    wl.queries.push_back(
        query_spec{std::move(pattern), 1, freq_class::high, query_role::seen});
    return wl;
}

} // namespace

TEST_CASE("column rows are the per-word fingerprints in corpus order") {
    const scan_fixture fx;
    const fingerprint_column column = build_column(fx.corp, fx.part);
    REQUIRE(column.size() == 2);
    CHECK(render(fingerprint{column.rows[0], 4}) == "1010");
    CHECK(render(fingerprint{column.rows[1], 4}) == "0110");

    std::ostringstream dump;
    dump_column(column, dump);
    CHECK(dump.str() == "1010\n0110\n");
}

TEST_CASE("empty corpus yields an empty column") {
    const scan_fixture fx;
    const corpus empty = test::make_corpus({}, fx.corp.alpha);
    CHECK(build_column(empty, fx.part).size() == 0);
}

TEST_CASE("rebuilding the column changes nothing") {
    const scan_fixture fx;
    CHECK(build_column(fx.corp, fx.part).rows == build_column(fx.corp, fx.part).rows);
}

TEST_CASE("filtered scan admits the false positive but verifies it away") {
    const scan_fixture fx;
    const fingerprint_column column = build_column(fx.corp, fx.part);

    const scan_result utn = filtered_scan(column, fx.corp, "utn");
    CHECK(utn.candidates == 1); // "utn" passes against "nutella" only
    CHECK(utn.matches.empty());

    const scan_result ell = filtered_scan(column, fx.corp, "ell");
    CHECK(ell.candidates == 1);
    CHECK(ell.matches == std::vector<std::uint32_t>{0});

    const scan_result tone = filtered_scan(column, fx.corp, "tone");
    CHECK(tone.candidates == 1);
    CHECK(tone.matches == std::vector<std::uint32_t>{1});
}

TEST_CASE("patterns longer than every word can still be candidates") {
    const scan_fixture fx;
    const fingerprint_column column = build_column(fx.corp, fx.part);
    const scan_result r = filtered_scan(column, fx.corp, "tonetonetone");
    CHECK(r.candidates == 1);
    CHECK(r.matches.empty());
}

TEST_CASE("filtered scan rejects an empty pattern or a foreign column") {
    const scan_fixture fx;
    const fingerprint_column column = build_column(fx.corp, fx.part);
    CHECK_THROWS_AS(filtered_scan(column, fx.corp, ""), std::invalid_argument);
    const corpus bigger = test::make_corpus({"a", "b", "c"}, fx.corp.alpha);
    CHECK_THROWS_AS(filtered_scan(column, bigger, "a"), std::invalid_argument);
}

TEST_CASE("per query fpr counts false positives among non-matching rows") {
    const scan_fixture fx;
    const eval_report report = evaluate(fx.corp, fx.part, single_query("utn"));
    REQUIRE(report.rows.size() == 1);
    const eval_row& row = report.rows[0];
    CHECK(row.true_matches == 0);
    CHECK(row.candidates == 1);
    CHECK(row.false_positives == 1);
    CHECK(row.fpr == doctest::Approx(0.5)); // 1 FP over 2 non-matching words
    CHECK(report.seen.fpr() == doctest::Approx(0.5));
    CHECK(report.unseen.negative_pairs == 0);
    CHECK(report.unseen.fpr() == 0.0);
}

TEST_CASE("aggregate fpr is pair weighted across queries") {
    const corpus corp = test::make_corpus({"ab", "cd", "ef"}, alphabet::from_chars("abcdef"));
    // one bin: every query passes against every word
    const partition coarse = round_robin_partition(corp.alpha, 1);
    workload wl;
    wl.queries.push_back(query_spec{"ab", 2, freq_class::high, query_role::seen});
    wl.queries.push_back(query_spec{"e", 1, freq_class::high, query_role::unseen});
    const eval_report report = evaluate(corp, coarse, wl);
    // "ab": 1 match, 2 FPs of 2 negatives; "e": 1 match, 2 FPs of 2 negatives
    CHECK(report.seen.false_positive_pairs == 2);
    CHECK(report.seen.negative_pairs == 2);
    CHECK(report.overall.false_positive_pairs == 4);
    CHECK(report.overall.negative_pairs == 4);
    CHECK(report.overall.fpr() == doctest::Approx(1.0));
}

TEST_CASE("perfect and round robin partitions bracket the fixture") {
    const training_instance inst = test::four_letter_instance();
    workload wl;
    wl.queries.push_back(query_spec{"a", 1, freq_class::high, query_role::seen});
    wl.queries.push_back(query_spec{"c", 1, freq_class::high, query_role::seen});

    const solve_result solved = exact_solve(inst);
    const eval_report tuned = evaluate(inst.words, solved.best, wl);
    CHECK(tuned.overall.fpr() == 0.0);

    const eval_report naive =
        evaluate(inst.words, round_robin_partition(inst.words.alpha, 2), wl);
    CHECK(naive.overall.fpr() == doctest::Approx(1.0));
}

TEST_CASE("candidate counts dominate matches on random inputs") {
    rng_engine rng(71);
    const std::string pool = "abcdefgh";
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::string> words;
        const std::size_t n_words = 1 + uniform_below(rng, 60);
        for (std::size_t i = 0; i < n_words; ++i) {
            std::string w;
            const std::size_t len = uniform_below(rng, 10);
            for (std::size_t j = 0; j < len; ++j) {
                w.push_back(pool[uniform_below(rng, pool.size())]);
            }
            words.push_back(std::move(w));
        }
        const corpus corp = test::make_corpus(words, alphabet::from_chars(pool));
        const int width = 1 + static_cast<int>(uniform_below(rng, 8));
        std::array<std::uint8_t, 256> bins{};
        for (int b = 0; b < 256; ++b) {
            bins[static_cast<std::size_t>(b)] =
                static_cast<std::uint8_t>(uniform_below(rng, static_cast<std::uint64_t>(width)));
        }
        const partition part(width, bins, corp.alpha, provenance{});
        const fingerprint_column column = build_column(corp, part);
        for (int q = 0; q < 10; ++q) {
            std::string pattern;
            const std::size_t len = 1 + uniform_below(rng, 4);
            for (std::size_t j = 0; j < len; ++j) {
                pattern.push_back(pool[uniform_below(rng, pool.size())]);
            }
            const scan_result scan = filtered_scan(column, corp, pattern);
            CHECK(scan.candidates >= scan.matches.size());
            std::vector<std::uint32_t> expected;
            for (std::uint32_t wi = 0; wi < corp.size(); ++wi) {
                if (test::contains_naive(corp.words[wi], pattern)) {
                    expected.push_back(wi);
                }
            }
            CHECK(scan.matches == expected);
        }
    }
}

TEST_CASE("report fprs match a naive double loop") {
    rng_engine rng(83);
    const std::string pool = "abcd";
    std::vector<std::string> words;
    for (int i = 0; i < 200; ++i) {
        std::string w;
        const std::size_t len = 1 + uniform_below(rng, 7);
        for (std::size_t j = 0; j < len; ++j) {
            w.push_back(pool[uniform_below(rng, pool.size())]);
        }
        words.push_back(std::move(w));
    }
    const corpus corp = test::make_corpus(words, alphabet::from_chars(pool));
    const partition part = round_robin_partition(corp.alpha, 2);
    workload wl;
    for (const char* p : {"a", "b", "ab", "cd", "dd", "abc"}) {
        wl.queries.push_back(query_spec{p, static_cast<int>(std::string(p).size()),
                                        freq_class::high, query_role::unseen});
    }
    const eval_report report = evaluate(corp, part, wl);
    for (std::size_t qi = 0; qi < wl.queries.size(); ++qi) {
        const std::string& pattern = wl.queries[qi].pattern;
        std::uint64_t matches = 0, fps = 0;
        for (const std::string& w : corp.words) {
            const bool is_match = test::contains_naive(w, pattern);
            const bool candidate =
                is_candidate(part.fingerprint_of(pattern), part.fingerprint_of(w));
            matches += is_match ? 1 : 0;
            fps += (candidate && !is_match) ? 1 : 0;
        }
        CHECK(report.rows[qi].true_matches == matches);
        CHECK(report.rows[qi].false_positives == fps);
        const std::uint64_t negatives = corp.size() - matches;
        const double expected =
            negatives == 0 ? 0.0 : static_cast<double>(fps) / static_cast<double>(negatives);
        CHECK(report.rows[qi].fpr == doctest::Approx(expected));
    }
}

TEST_CASE("report csv carries comments, header, and one row per query") {
    const scan_fixture fx;
    const eval_report report = evaluate(fx.corp, fx.part, single_query("utn"));
    std::ostringstream out;
    write_report_csv(report, out, {"note one", "note two"});
    const std::string text = out.str();
    CHECK(text.rfind("# note one\n# note two\n", 0) == 0);
    CHECK(text.find("pattern,role,k,freq_class,true_matches,candidates,false_positives,fpr\n") !=
          std::string::npos);
    CHECK(text.find("utn,seen,1,high,0,1,1,0.500000\n") != std::string::npos);
}

TEST_CASE("empty workload writes the header only") {
    const scan_fixture fx;
    const eval_report report = evaluate(fx.corp, fx.part, workload{});
    std::ostringstream out;
    write_report_csv(report, out);
    CHECK(out.str() ==
          "pattern,role,k,freq_class,true_matches,candidates,false_positives,fpr\n");
}

TEST_CASE("patterns with commas or quotes are csv quoted") {
    const corpus corp = test::make_corpus({"a,b", "a\"b"}, alphabet::printable_ascii());
    const partition part = round_robin_partition(corp.alpha, 4);
    workload wl;
    wl.queries.push_back(query_spec{"a,b", 3, freq_class::high, query_role::seen});
    wl.queries.push_back(query_spec{"\"", 1, freq_class::high, query_role::seen});
    const eval_report report = evaluate(corp, part, wl);
    std::ostringstream out;
    write_report_csv(report, out);
    CHECK(out.str().find("\"a,b\",seen") != std::string::npos);
    CHECK(out.str().find("\"\"\"\",seen") != std::string::npos);
}

TEST_CASE("bench rows carry the eval counters and positive medians") {
    const scan_fixture fx;
    workload wl = single_query("utn");
    wl.queries.push_back(query_spec{"ell", 3, freq_class::mid, query_role::unseen});
    const bench_report report = bench_scan(fx.corp, fx.part, wl, 3);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.repeats == 3);
    CHECK(report.rows[0].eval.candidates == 1);
    CHECK(report.rows[0].eval.false_positives == 1);
    CHECK(report.rows[1].eval.true_matches == 1);
    for (const bench_row& row : report.rows) {
        CHECK(row.t_full_ms > 0.0);
        CHECK(row.t_filtered_ms > 0.0);
        CHECK(row.speedup > 0.0);
    }
    CHECK_THROWS_AS(bench_scan(fx.corp, fx.part, wl, 0), std::invalid_argument);
}

TEST_CASE("bench csv extends the report columns with timings") {
    const scan_fixture fx;
    const bench_report report = bench_scan(fx.corp, fx.part, single_query("utn"), 1);
    std::ostringstream out;
    write_bench_csv(report, out, {"bench note"});
    const std::string text = out.str();
    CHECK(text.rfind("# bench note\n", 0) == 0);
    CHECK(text.find("pattern,role,k,freq_class,true_matches,candidates,false_positives,fpr,"
                    "t_full_ms,t_filtered_ms,speedup\n") != std::string::npos);
    CHECK(text.find("utn,seen,1,high,0,1,1,0.500000,") != std::string::npos);
}
