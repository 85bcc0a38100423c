#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "polycount/counting.hpp"
#include "polycount/oracle.hpp"

namespace polycount::cli {

enum class OutputFormat { text, csv, json };

enum ExitCode : int {
    kOk = 0,
    kInvalidInput = 2, ///< bad parameters, or a brute force over the guard
    kMismatch = 3,     ///< verify found a disagreement
};

struct RunConfig {
    std::uint64_t q = 2;
    unsigned m = 2;
    std::optional<unsigned> d;
    std::optional<unsigned> d_max;
    std::optional<unsigned> k;
    OutputFormat format = OutputFormat::text;
    unsigned precision = 5;
    std::uint64_t oracle_guard = kDefaultOracleGuard;
    bool count_only = false;
    std::optional<std::string> dump_path;  ///< verify: irreducible list as hex lines
    std::optional<std::string> cache_path; ///< JSON CountTable to warm-start from
};

/// Ratio as printed: text mode truncates and appends "..." when digits are
/// dropped; csv and json round half-to-even.
std::string render_ratio(const ExactRatio& r, unsigned precision, OutputFormat format);

/// CountTable for the config's params, seeded from cache_path when that file
/// holds a table for the same (q, m). Problems with the cache are reported
/// on `err` and otherwise ignored.
CountTable load_table(const RunConfig& config, std::ostream& err);

int cmd_count(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_table(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_asymptotic(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_partitions(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full command line (args[0] is the subcommand, no program name). Reads
/// POLYCOUNT_CACHE from the environment.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace polycount::cli
