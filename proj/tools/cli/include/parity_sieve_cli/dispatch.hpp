#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "parity_sieve_cli/calibration.hpp"
#include "parity_sieve_cli/config.hpp"

namespace parity_sieve::cli {

using Json = nlohmann::ordered_json;

// Parses, validates and runs; returns the process exit status. The report
// goes to --output or `out`, diagnostics to `err` as a single line.
int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Runs a validated config. `report` receives the JSON document (also for
// CSV output, where it is not printed).
int dispatch(const RunConfig& config, std::ostream& out, Json& report);

struct SuiteResult {
  Json json;
  bool pass = true;
};

// Named verification suite: oracle, buchstab, constants, selberg, small-y,
// expansion.
SuiteResult run_suite(const std::string& name, const RunConfig& config, const Calibration& cal);

// Shortest round-trip decimal, independent of the C locale.
std::string format_double(double v);

}  // namespace parity_sieve::cli
