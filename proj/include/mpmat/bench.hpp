#pragma once

// Benchmark driver behind the mpbench tool: run grids of matmul and LU
// experiments and write one CSV row per configuration.

#include <mpmat/matmul.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mpmat::bench {

/// Bad command-line input; maps to exit status 1.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// "4", "1,2,8", "1..10" or mixtures such as "1,4..6". Values must be >= 1.
std::vector<std::size_t> parse_size_list(std::string_view text);

/// Comma-separated words, e.g. "block,strassen".
std::vector<std::string> parse_word_list(std::string_view text);

struct RunConfig {
    std::string subcommand;
    std::vector<std::string> precisions{"dd"};
    std::vector<std::size_t> sizes;
    /// matmul: simple|block|strassen|winograd. lu: the same names select the
    /// trailing-update algorithm, plus rowwise and unblocked baselines.
    std::vector<std::string> algorithms;
    std::size_t n_min = 32;
    std::size_t block_size = 32;
    std::vector<std::size_t> alphas{1};
    std::vector<std::size_t> workers{1};
    std::uint64_t seed = 42;
    std::size_t reps = 3;
    std::string matrix;
    bool verify = false;
    bool count_ops = false;
    std::string out;
    /// matmul: write the computed product here (single-row grids only).
    std::string save;
    /// verify: check a stored bench product against the closed form.
    std::string product;

    /// Fills subcommand defaults and rejects invalid combinations.
    void validate();
};

struct BenchRecord {
    std::string experiment;
    std::string precision;
    std::string algorithm;
    std::size_t n = 0;
    std::size_t bs = 0;
    std::size_t nmin = 0;
    std::optional<std::size_t> alpha;
    std::size_t workers = 1;
    std::size_t reps = 0;
    std::optional<double> seconds_median;
    std::optional<std::uint64_t> mul_count;
    std::optional<std::uint64_t> add_count;
    std::optional<double> max_rel_error;
    /// Set when the run failed; printed in the max_rel_error column.
    std::string error;

    bool failed() const noexcept { return !error.empty(); }
};

std::string csv_header();
std::string csv_row(const BenchRecord& r);

/// Median of the samples (mean of the middle two for an even count).
double median(std::vector<double> samples);

/// Each runner streams rows to `csv` as they complete (header first) and
/// returns them. Rows that fail carry the error and the grid continues.
std::vector<BenchRecord> run_matmul(const RunConfig& config, std::ostream& csv);
std::vector<BenchRecord> run_lu(const RunConfig& config, std::ostream& csv);

/// Runs the property suite and prints one line per check. True iff all pass.
bool run_verify(const RunConfig& config, std::ostream& report);

}  // namespace mpmat::bench
