#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pmj/golden.hpp"
#include "pmj/limits.hpp"

namespace pmj::cli {

inline constexpr std::string_view kVersion = "1.0.0";

enum ExitCode : int {
    kOk = 0,
    kUsage = 1,
    kNumerical = 2,
    kBudget = 3,
};

/// Runs the command line; output goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Listing of the pair-matched words of q with Catalan flags.
nlohmann::json words_json(const Monomial& q, bool respect_indices);

/// {"word":"abab","colors":"THTH","indices":[1,1,1,1],"catalan":false}
nlohmann::json word_json(const ColoredWord& w);

struct TableResult {
    GoldenRow row;
    VolumeEstimate computed;
    double abs_err{0.0};
};

/// Evaluates every golden row.
std::vector<TableResult> compute_tables(const LimitParams& params);

/// Absolute error above which a table row counts as a mismatch.
inline constexpr double kTableTolerance = 0.02;

/// CSV with header monomial,word,p_paper,p_computed,abs_err.
std::string tables_csv(const std::vector<TableResult>& rows);

/// Shortest decimal text that parses back to the same double.
std::string format_double(double x);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view text);

}  // namespace pmj::cli
