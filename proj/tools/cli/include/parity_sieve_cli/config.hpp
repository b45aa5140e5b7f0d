#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace parity_sieve::cli {

enum class Command { kSum, kHistogram, kConstants, kDirichlet, kWk, kFj, kApprox, kVerify };

const char* command_name(Command c);

enum class Format { kJson, kCsv };

struct RunConfig {
  Command command = Command::kSum;
  std::optional<std::uint64_t> x;
  std::optional<std::uint64_t> y;
  std::optional<unsigned> k;
  std::optional<std::string> z;  // "-3", "2", "i", "1.5-2i"
  double alpha_max = 16.0;
  std::string step = "1/1024";
  std::uint64_t cutoff = 10'000'000;
  std::optional<unsigned> j;
  std::optional<unsigned> ell;
  std::optional<std::uint64_t> N;
  std::optional<double> h;
  double epsilon = 0.05;
  Format format = Format::kJson;
  std::optional<std::string> output;
  std::optional<unsigned> threads;
  std::optional<std::string> calibration;  // default_calibration_path() when empty
  std::string suite = "all";
  unsigned trials = 200;
  std::uint64_t seed = 7;
  std::optional<std::string> emit_csv;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerificationFailed = 1;
inline constexpr int kExitUsage = 2;

struct ParseResult {
  std::optional<RunConfig> config;
  int exit_code = kExitOk;  // meaningful when config is empty
  std::string message;      // help text or a one-line diagnostic
};

// Compiled-in location of data/calibration.txt.
std::string default_calibration_path();

ParseResult parse_command_line(const std::vector<std::string>& args);

// "1/1024", "0.0009765625" -> 1/1024. Throws parity_sieve::Error.
double parse_step(const std::string& text);

// "-3", "2.5", "i", "-i", "1+2i", "0.5-1.5i". Throws parity_sieve::Error.
struct ComplexText {
  double re = 0;
  double im = 0;
};
ComplexText parse_complex(const std::string& text);

// Checks every flag the command needs and every range it can check
// cheaply. Throws parity_sieve::Error with a one-line message.
void validate(const RunConfig& config);

}  // namespace parity_sieve::cli
