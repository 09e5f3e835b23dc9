// mpbench: matmul and LU benchmark grids as CSV, plus a self-check suite.

#include <mpmat/bench.hpp>
#include <mpmat/errors.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

struct RawOptions {
    std::string prec = "dd";
    std::string n;
    std::string algo;
    std::string alpha = "1";
    std::string workers = "1";
};

void add_grid_options(CLI::App& cmd, mpmat::bench::RunConfig& config, RawOptions& raw)
{
    cmd.add_option("--prec", raw.prec, "Precision list: dd, qd")->capture_default_str();
    cmd.add_option("--n", raw.n, "Sizes, e.g. 1023,1024,1025 or 1..10");
    cmd.add_option("--nmin", config.n_min, "Recursion cutoff n_min")->capture_default_str();
    cmd.add_option("--bs", config.block_size, "Block size for Block")->capture_default_str();
    cmd.add_option("--workers", raw.workers, "Worker counts, e.g. 1,8")->capture_default_str();
    cmd.add_option("--seed", config.seed, "Seed for random matrices")->capture_default_str();
    cmd.add_option("--reps", config.reps, "Timed repetitions (median)")->capture_default_str();
    cmd.add_option("--out", config.out, "CSV output file (default stdout)");
    cmd.add_flag("--count-ops", config.count_ops, "Count scalar operations instead of timing");
}

}  // namespace

int main(int argc, char** argv)
{
    namespace mb = mpmat::bench;
    mpmat::ensure_round_to_nearest();

    CLI::App app{"Multiple-precision matrix multiplication and LU benchmarks"};
    app.require_subcommand(1);

    mb::RunConfig config;
    RawOptions raw;

    auto* matmul = app.add_subcommand("matmul", "Time matrix products of the benchmark pair");
    add_grid_options(*matmul, config, raw);
    matmul->add_option("--algo", raw.algo, "simple,block,strassen,winograd (default block)");
    matmul->add_option("--matrix", config.matrix, "bench (default) or random");
    matmul->add_flag("--verify", config.verify,
                     "Record max relative error against the exact product");
    matmul->add_option("--save", config.save, "Write the product matrix (single run only)");

    auto* lu = app.add_subcommand("lu", "Solve A x = b with blocked pivot-free LU");
    add_grid_options(*lu, config, raw);
    lu->add_option("--algo,--update", raw.algo,
                   "Update algorithms: simple,block,strassen,winograd; baselines rowwise,unblocked");
    lu->add_option("--alpha", raw.alpha, "Panel multipliers, K = alpha * nmin")
        ->capture_default_str();
    lu->add_option("--matrix", config.matrix, "random (default) or lotkin");
    lu->add_flag("--verify", config.verify, "Accepted for symmetry; LU rows always report error");

    auto* verify = app.add_subcommand("verify", "Run the correctness property suite");
    verify->add_option("--seed", config.seed, "Seed for random matrices")->capture_default_str();
    verify->add_option("--product", config.product,
                       "Also check a stored benchmark product against the closed form");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        config.subcommand = app.get_subcommands().front()->get_name();
        config.precisions = mb::parse_word_list(raw.prec);
        if (!raw.n.empty()) {
            config.sizes = mb::parse_size_list(raw.n);
        }
        if (!raw.algo.empty()) {
            config.algorithms = mb::parse_word_list(raw.algo);
        }
        config.alphas = mb::parse_size_list(raw.alpha);
        config.workers = mb::parse_size_list(raw.workers);
        config.validate();
    } catch (const mb::UsageError& e) {
        std::cerr << "mpbench: " << e.what() << "\n" << app.help();
        return 1;
    }

    if (config.subcommand == "verify") {
        return mb::run_verify(config, std::cout) ? 0 : 2;
    }

    std::ofstream file;
    if (!config.out.empty()) {
        file.open(config.out);
        if (!file) {
            std::cerr << "mpbench: cannot open '" << config.out << "' for writing\n";
            return 1;
        }
    }
    std::ostream& csv = config.out.empty() ? std::cout : file;
    const auto rows = config.subcommand == "matmul" ? mb::run_matmul(config, csv)
                                                    : mb::run_lu(config, csv);
    int status = 0;
    for (const auto& r : rows) {
        if (r.failed()) {
            std::cerr << "mpbench: " << r.algorithm << " n=" << r.n << " failed: " << r.error
                      << "\n";
            status = 2;
        }
    }
    return status;
}
