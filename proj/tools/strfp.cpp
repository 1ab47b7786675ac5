#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "strfp/corpus.hpp"
#include "strfp/errors.hpp"
#include "strfp/evaluation.hpp"
#include "strfp/fingerprint.hpp"
#include "strfp/mip.hpp"
#include "strfp/partition.hpp"
#include "strfp/solver.hpp"
#include "strfp/training.hpp"
#include "strfp/workload.hpp"

namespace {

strfp::alphabet parse_alphabet(const std::string& spec) {
    if (spec == "printable") {
        return strfp::alphabet::printable_ascii();
    }
    if (spec == "all") {
        return strfp::alphabet::all_bytes();
    }
    if (spec.rfind("chars:", 0) == 0) {
        return strfp::alphabet::from_chars(std::string_view(spec).substr(6));
    }
    throw std::invalid_argument("alphabet must be `printable`, `all`, or `chars:<letters>`");
}

strfp::ingest_policy parse_policy(const std::string& name) {
    if (name == "drop") {
        return strfp::ingest_policy::drop_row;
    }
    if (name == "keep") {
        return strfp::ingest_policy::keep_total;
    }
    throw std::invalid_argument("policy must be `drop` or `keep`");
}

// Accepts `1..10` or a comma-separated list such as `2,3,5`.
std::vector<int> parse_ks(const std::string& text) {
    std::vector<int> ks;
    const auto parse_int = [&](const std::string& tok) {
        std::size_t used = 0;
        int value = 0;
        try {
            value = std::stoi(tok, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("bad k value `" + tok + "`");
        }
        if (used != tok.size() || value < 1) {
            throw std::invalid_argument("bad k value `" + tok + "`");
        }
        return value;
    };
    const std::size_t dots = text.find("..");
    if (dots != std::string::npos) {
        const int lo = parse_int(text.substr(0, dots));
        const int hi = parse_int(text.substr(dots + 2));
        if (hi < lo) {
            throw std::invalid_argument("k range is empty: " + text);
        }
        for (int k = lo; k <= hi; ++k) {
            ks.push_back(k);
        }
        return ks;
    }
    std::stringstream parts(text);
    std::string tok;
    while (std::getline(parts, tok, ',')) {
        ks.push_back(parse_int(tok));
    }
    if (ks.empty()) {
        throw std::invalid_argument("no k values given");
    }
    return ks;
}

void check_bits(int bits) {
    if (bits < 1 || bits > strfp::kMaxWidth) {
        throw std::invalid_argument("bits must be in 1.." + std::to_string(strfp::kMaxWidth));
    }
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw strfp::data_error("cannot open `" + path + "` for writing");
    }
    return out;
}

std::string describe_corpus(const std::string& path, const strfp::corpus& corp) {
    std::ostringstream text;
    text << "corpus: " << path << " (" << corp.size() << " words, " << corp.dropped_count
         << " dropped)";
    return text.str();
}

std::string describe_partition(const strfp::partition& part) {
    std::ostringstream text;
    text << "partition: width " << part.width() << ", provenance "
         << strfp::to_string(part.origin().tag);
    if (part.origin().seed) {
        text << " seed=" << *part.origin().seed;
    }
    if (part.origin().time_limit_s) {
        text << " time_limit=" << *part.origin().time_limit_s;
    }
    if (part.origin().iteration_cap) {
        text << " iters=" << *part.origin().iteration_cap;
    }
    return text.str();
}

void print_aggregates(const strfp::eval_report& report) {
    const auto line = [](const char* label, const strfp::role_aggregate& agg) {
        std::cout << label << " fpr: " << agg.fpr() << " (" << agg.false_positive_pairs << "/"
                  << agg.negative_pairs << " pairs)\n";
    };
    std::cout << "queries: " << report.rows.size() << "\n";
    line("seen", report.seen);
    line("unseen", report.unseen);
    line("overall", report.overall);
}

struct workload_args {
    std::string corpus, out;
    std::string alphabet = "printable", policy = "drop", ks = "1..10";
    int per_class = 10;
    std::size_t seen = 20;
    std::uint64_t seed = 1;
};

struct train_args {
    std::string corpus, workload, out, trace;
    std::string alphabet = "printable", policy = "drop", init = "round-robin";
    int bits = 16;
    std::size_t block = 65536, sample = 50;
    std::uint64_t seed_sample = 2, seed_search = 3;
    double time_limit = 300.0;
    std::uint64_t iters = 0;
    bool has_iters = false;
    bool exact = false;
};

struct lp_args {
    std::string corpus, workload, out;
    std::string alphabet = "printable", policy = "drop";
    std::string solution; // import only
    int bits = 16;
    std::size_t block = 65536, sample = 50;
    std::uint64_t seed_sample = 2;
};

struct eval_args {
    std::string corpus, workload, partition, out, dump_column;
    std::string alphabet = "printable", policy = "drop";
    int repeats = 5; // bench only
};

struct baseline_args {
    std::string out;
    std::string alphabet = "printable";
    int bits = 16;
};

// Shared by train, export-lp and import-solution: sample the training block
// and pair it with the workload's seen patterns.
strfp::training_instance build_instance(const std::string& corpus_path,
                                        const std::string& workload_path,
                                        const strfp::alphabet& alpha, strfp::ingest_policy policy,
                                        std::size_t block, std::size_t sample,
                                        std::uint64_t seed_sample, int bits,
                                        strfp::corpus* full_out, std::size_t* seen_out) {
    check_bits(bits);
    strfp::corpus full = strfp::load_corpus_file(corpus_path, alpha, policy);
    const strfp::workload wl = strfp::load_workload_file(workload_path);
    const std::vector<std::string> seen = wl.patterns(strfp::query_role::seen);
    if (seen.empty()) {
        std::cerr << "warning: workload has no seen queries; training objective is trivial\n";
    }
    strfp::corpus sampled = strfp::sample_training(full, block, sample, seed_sample);
    if (sampled.words.empty()) {
        throw strfp::data_error("training sample is empty");
    }
    if (seen_out != nullptr) {
        *seen_out = seen.size();
    }
    if (full_out != nullptr) {
        *full_out = std::move(full);
    }
    return strfp::make_training_instance(std::move(sampled), seen, bits);
}

void cmd_workload(const workload_args& args) {
    const strfp::alphabet alpha = parse_alphabet(args.alphabet);
    const strfp::corpus corp =
        strfp::load_corpus_file(args.corpus, alpha, parse_policy(args.policy));
    const std::vector<int> ks = parse_ks(args.ks);
    strfp::workload wl = strfp::generate_workload(corp, ks, args.per_class, args.seed);
    wl = strfp::split_workload(std::move(wl), std::min(args.seen, wl.queries.size()), args.seed);
    auto out = open_out(args.out);
    strfp::save_workload_tsv(wl, out);
    std::size_t seen_count = 0;
    for (const auto& q : wl.queries) {
        if (q.role == strfp::query_role::seen) {
            ++seen_count;
        }
    }
    std::cout << "queries: " << wl.queries.size() << " (" << seen_count << " seen)\n"
              << describe_corpus(args.corpus, corp) << "\n";
}

void cmd_train(const train_args& args) {
    const strfp::alphabet alpha = parse_alphabet(args.alphabet);
    const strfp::training_instance inst =
        build_instance(args.corpus, args.workload, alpha, parse_policy(args.policy), args.block,
                       args.sample, args.seed_sample, args.bits, nullptr, nullptr);

    strfp::solve_result result = [&] {
        if (args.exact) {
            return strfp::exact_solve(inst);
        }
        strfp::local_search_options opts;
        opts.time_limit_s = args.time_limit;
        if (args.has_iters) {
            opts.max_evaluations = args.iters;
        }
        opts.seed = args.seed_search;
        if (args.init == "round-robin") {
            opts.init = strfp::local_search_options::init_kind::round_robin;
        } else if (args.init == "random") {
            opts.init = strfp::local_search_options::init_kind::random;
        } else {
            throw std::invalid_argument("init must be `round-robin` or `random`");
        }
        return strfp::local_search(inst, opts);
    }();

    auto out = open_out(args.out);
    strfp::save_partition(result.best, out);
    if (!args.trace.empty()) {
        auto trace_out = open_out(args.trace);
        strfp::write_trace_csv(result.trace, trace_out);
    }
    const auto& trace = result.trace;
    const std::int64_t objective = trace.incumbents.empty() ? 0 : trace.incumbents.back().objective;
    std::cout << "status: " << strfp::to_string(trace.status) << "\n"
              << "objective: " << objective << " of " << trace.total_negatives << "\n"
              << "training fpr: "
              << (trace.total_negatives == 0
                      ? 0.0
                      : 1.0 - static_cast<double>(objective) /
                                  static_cast<double>(trace.total_negatives))
              << "\n";
}

void cmd_export_lp(const lp_args& args) {
    const strfp::alphabet alpha = parse_alphabet(args.alphabet);
    const strfp::training_instance inst =
        build_instance(args.corpus, args.workload, alpha, parse_policy(args.policy), args.block,
                       args.sample, args.seed_sample, args.bits, nullptr, nullptr);
    const strfp::model_instance model = strfp::build_mip(inst);
    auto out = open_out(args.out);
    strfp::export_lp(model, out);
    std::cout << "variables: " << model.vars().total() << "\n"
              << "constraints: " << model.constraints().total() << "\n";
}

void cmd_import_solution(const lp_args& args) {
    const strfp::alphabet alpha = parse_alphabet(args.alphabet);
    const strfp::training_instance inst =
        build_instance(args.corpus, args.workload, alpha, parse_policy(args.policy), args.block,
                       args.sample, args.seed_sample, args.bits, nullptr, nullptr);
    const strfp::model_instance model = strfp::build_mip(inst);
    std::ifstream in(args.solution, std::ios::binary);
    if (!in) {
        throw strfp::data_error("cannot open `" + args.solution + "`");
    }
    const strfp::partition part = strfp::import_solution(model, in);
    auto out = open_out(args.out);
    strfp::save_partition(part, out);
    const strfp::objective_result obj = strfp::objective(part, inst);
    std::cout << "objective: " << obj.correct << " of " << obj.total_negatives << "\n";
}

void cmd_eval(const eval_args& args, bool bench) {
    const strfp::alphabet alpha = parse_alphabet(args.alphabet);
    const strfp::corpus corp =
        strfp::load_corpus_file(args.corpus, alpha, parse_policy(args.policy));
    const strfp::workload wl = strfp::load_workload_file(args.workload);
    const strfp::partition part = strfp::load_partition_file(args.partition, alpha);

    std::vector<std::string> comments{describe_corpus(args.corpus, corp),
                                      describe_partition(part),
                                      "workload: " + args.workload + " (" +
                                          std::to_string(wl.queries.size()) + " queries)"};
    if (!args.dump_column.empty()) {
        const strfp::fingerprint_column column = strfp::build_column(corp, part);
        auto dump = open_out(args.dump_column);
        strfp::dump_column(column, dump);
    }
    if (bench) {
        if (args.repeats < 1) {
            throw std::invalid_argument("repeats must be >= 1");
        }
        comments.push_back("repeats: " + std::to_string(args.repeats));
        const strfp::bench_report report = strfp::bench_scan(corp, part, wl, args.repeats);
        auto out = open_out(args.out);
        strfp::write_bench_csv(report, out, comments);
        strfp::eval_report view;
        for (const auto& row : report.rows) {
            view.rows.push_back(row.eval);
        }
        double full_total = 0.0, filtered_total = 0.0;
        for (const auto& row : report.rows) {
            full_total += row.t_full_ms;
            filtered_total += row.t_filtered_ms;
        }
        std::cout << "queries: " << report.rows.size() << "\n"
                  << "median full scan total: " << full_total << " ms\n"
                  << "filtered scan total: " << filtered_total << " ms\n";
        if (filtered_total > 0.0) {
            std::cout << "overall speedup: " << full_total / filtered_total << "\n";
        }
    } else {
        const strfp::eval_report report = strfp::evaluate(corp, part, wl);
        auto out = open_out(args.out);
        strfp::write_report_csv(report, out, comments);
        print_aggregates(report);
    }
}

void cmd_baseline(const baseline_args& args) {
    check_bits(args.bits);
    const strfp::alphabet alpha = parse_alphabet(args.alphabet);
    const strfp::partition part = strfp::round_robin_partition(alpha, args.bits);
    auto out = open_out(args.out);
    strfp::save_partition(part, out);
    std::cout << "width: " << args.bits << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Letter-bin string fingerprints: workload generation, partition "
                 "optimization, and scan evaluation"};
    app.require_subcommand(1);
    app.set_config("--config")->description("read defaults from a key=value file");

    workload_args wargs;
    train_args targs;
    lp_args xargs, iargs;
    eval_args eargs, bargs;
    baseline_args sargs;
    std::function<void()> run;

    const auto add_alphabet = [](CLI::App* sub, std::string& spec, std::string& policy) {
        sub->add_option("--alphabet", spec, "printable | all | chars:<letters>")
            ->capture_default_str();
        sub->add_option("--policy", policy, "rows with out-of-alphabet bytes: drop | keep")
            ->capture_default_str();
    };

    {
        auto* sub = app.add_subcommand("workload", "generate a frequency-stratified workload");
        sub->add_option("--corpus", wargs.corpus, "newline-delimited text column")->required();
        sub->add_option("--out", wargs.out, "workload TSV to write")->required();
        add_alphabet(sub, wargs.alphabet, wargs.policy);
        sub->add_option("--ks", wargs.ks, "gram lengths, `1..10` or `2,3,5`")
            ->capture_default_str();
        sub->add_option("--per-class", wargs.per_class, "queries per frequency class per k")
            ->capture_default_str();
        sub->add_option("--seen", wargs.seen, "queries tagged as seen (training set)")
            ->capture_default_str();
        sub->add_option("--seed", wargs.seed, "seed for the seen/unseen split")
            ->capture_default_str();
        sub->callback([&] { run = [&] { cmd_workload(wargs); }; });
    }
    {
        auto* sub = app.add_subcommand("train", "optimize a partition against seen queries");
        sub->add_option("--corpus", targs.corpus, "newline-delimited text column")->required();
        sub->add_option("--workload", targs.workload, "workload TSV")->required();
        sub->add_option("--out", targs.out, "partition file to write")->required();
        sub->add_option("--trace", targs.trace, "incumbent trace CSV to write");
        add_alphabet(sub, targs.alphabet, targs.policy);
        sub->add_option("--bits", targs.bits, "fingerprint width")->capture_default_str();
        sub->add_option("--block", targs.block, "training rows come from the first N words")
            ->capture_default_str();
        sub->add_option("--sample", targs.sample, "training sample size")->capture_default_str();
        sub->add_option("--seed-sample", targs.seed_sample, "seed for the training sample")
            ->capture_default_str();
        sub->add_option("--seed-search", targs.seed_search, "seed for local-search restarts")
            ->capture_default_str();
        sub->add_option("--time-limit", targs.time_limit, "local-search budget in seconds")
            ->capture_default_str();
        sub->add_option("--iters", targs.iters,
                        "evaluation cap; when set, the time limit is ignored")
            ->check(CLI::NonNegativeNumber);
        sub->add_option("--init", targs.init, "round-robin | random")->capture_default_str();
        sub->add_flag("--exact", targs.exact, "exhaustive enumeration (small alphabets only)");
        sub->callback([&, sub] {
            targs.has_iters = sub->count("--iters") > 0;
            run = [&] { cmd_train(targs); };
        });
    }
    {
        auto* sub = app.add_subcommand("export-lp", "write the optimization model in LP format");
        sub->add_option("--corpus", xargs.corpus, "newline-delimited text column")->required();
        sub->add_option("--workload", xargs.workload, "workload TSV")->required();
        sub->add_option("--out", xargs.out, "LP file to write")->required();
        add_alphabet(sub, xargs.alphabet, xargs.policy);
        sub->add_option("--bits", xargs.bits, "fingerprint width")->capture_default_str();
        sub->add_option("--block", xargs.block, "training rows come from the first N words")
            ->capture_default_str();
        sub->add_option("--sample", xargs.sample, "training sample size")->capture_default_str();
        sub->add_option("--seed-sample", xargs.seed_sample, "seed for the training sample")
            ->capture_default_str();
        sub->callback([&] { run = [&] { cmd_export_lp(xargs); }; });
    }
    {
        auto* sub = app.add_subcommand("import-solution",
                                       "rebuild the model and read a solver solution back");
        sub->add_option("--corpus", iargs.corpus, "newline-delimited text column")->required();
        sub->add_option("--workload", iargs.workload, "workload TSV")->required();
        sub->add_option("--solution", iargs.solution, "solver solution (`name value` lines)")
            ->required();
        sub->add_option("--out", iargs.out, "partition file to write")->required();
        add_alphabet(sub, iargs.alphabet, iargs.policy);
        sub->add_option("--bits", iargs.bits, "fingerprint width")->capture_default_str();
        sub->add_option("--block", iargs.block, "training rows come from the first N words")
            ->capture_default_str();
        sub->add_option("--sample", iargs.sample, "training sample size")->capture_default_str();
        sub->add_option("--seed-sample", iargs.seed_sample, "seed for the training sample")
            ->capture_default_str();
        sub->callback([&] { run = [&] { cmd_import_solution(iargs); }; });
    }
    {
        auto* sub = app.add_subcommand("eval", "measure false-positive rates per query and role");
        sub->add_option("--corpus", eargs.corpus, "newline-delimited text column")->required();
        sub->add_option("--workload", eargs.workload, "workload TSV")->required();
        sub->add_option("--partition", eargs.partition, "partition file")->required();
        sub->add_option("--out", eargs.out, "report CSV to write")->required();
        sub->add_option("--dump-column", eargs.dump_column,
                        "also write the fingerprint column, one bitstring per row");
        add_alphabet(sub, eargs.alphabet, eargs.policy);
        sub->callback([&] { run = [&] { cmd_eval(eargs, false); }; });
    }
    {
        auto* sub = app.add_subcommand("bench", "time full scans against filtered scans");
        sub->add_option("--corpus", bargs.corpus, "newline-delimited text column")->required();
        sub->add_option("--workload", bargs.workload, "workload TSV")->required();
        sub->add_option("--partition", bargs.partition, "partition file")->required();
        sub->add_option("--out", bargs.out, "timing CSV to write")->required();
        sub->add_option("--repeats", bargs.repeats, "timed repetitions per query")
            ->capture_default_str();
        add_alphabet(sub, bargs.alphabet, bargs.policy);
        sub->callback([&] { run = [&] { cmd_eval(bargs, true); }; });
    }
    {
        auto* sub = app.add_subcommand("baseline", "emit the round-robin partition");
        sub->add_option("--out", sargs.out, "partition file to write")->required();
        sub->add_option("--alphabet", sargs.alphabet, "printable | all | chars:<letters>")
            ->capture_default_str();
        sub->add_option("--bits", sargs.bits, "fingerprint width")->capture_default_str();
        sub->callback([&] { run = [&] { cmd_baseline(sargs); }; });
    }

    // lets a config file supply subcommand options under a [name] section, and
    // lets `--config` appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->configurable();
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
        if (run) {
            run();
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const strfp::guard_error& e) {
        std::cerr << "guard error: " << e.what() << "\n";
        return 4;
    } catch (const strfp::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
