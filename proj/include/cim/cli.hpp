#pragma once

#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace cim::cli {

using Cell = std::variant<std::monostate, double, long long, std::string>;

/// Flat tabular output shared by the CSV and JSON writers.
struct RecordSet {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

// CSV: header row, comma separator, '.' decimal point, LF line endings; reals
// carry 15 significant digits, fields with commas or quotes are quoted.
void write_csv(const RecordSet& records, std::ostream& out);
// JSON: array of flat objects keyed by column name; missing values are null.
void write_json(const RecordSet& records, std::ostream& out);

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

std::optional<std::string> process_env(const std::string& name);

// Entry point behind the `cim` executable. `args` includes the program name.
// Data goes to `out`, diagnostics to `err`. Returns the process exit code:
// 0 success, 2 malformed spec string, 3 violated precondition, 4 numerical
// failure, other non-zero values for command-line usage errors.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const EnvLookup& env = process_env);

}  // namespace cim::cli
