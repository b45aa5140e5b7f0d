#include "parity_sieve_cli/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <map>

#include "parity_sieve/error.hpp"

namespace parity_sieve::cli {
namespace {

const std::map<std::string, Command> kCommands = {
    {"sum", Command::kSum},         {"histogram", Command::kHistogram}, {"constants", Command::kConstants},
    {"dirichlet", Command::kDirichlet}, {"wk", Command::kWk},           {"fj", Command::kFj},
    {"approx", Command::kApprox},   {"verify", Command::kVerify}};

double parse_real(const std::string& text, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size())
    fail(ErrorCode::kBounds, std::string("cannot parse ") + what + " '" + text + "'");
  return v;
}

void need(bool present, const char* flag, const char* command) {
  if (!present) fail(ErrorCode::kBounds, std::string(command) + " requires " + flag);
}

}  // namespace

std::string default_calibration_path() {
#ifdef PARITY_SIEVE_CALIBRATION_FILE
  return PARITY_SIEVE_CALIBRATION_FILE;
#else
  return "calibration.txt";
#endif
}

const char* command_name(Command c) {
  for (const auto& [name, cmd] : kCommands)
    if (cmd == c) return name.c_str();
  return "?";
}

double parse_step(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return parse_real(text, "step");
  const double num = parse_real(text.substr(0, slash), "step numerator");
  const double den = parse_real(text.substr(slash + 1), "step denominator");
  if (den == 0) fail(ErrorCode::kBounds, "step denominator is zero");
  return num / den;
}

ComplexText parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw)
    if (c != ' ') text.push_back(c);
  if (text.empty()) fail(ErrorCode::kBounds, "empty z");
  if (text.back() != 'i') return {parse_real(text, "z"), 0.0};
  const std::string body = text.substr(0, text.size() - 1);
  // split at the last sign that is not an exponent sign or the leading one
  std::size_t split = std::string::npos;
  for (std::size_t p = body.size(); p-- > 1;) {
    if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  auto coefficient = [](const std::string& s) {
    if (s.empty() || s == "+") return 1.0;
    if (s == "-") return -1.0;
    return parse_real(s, "imaginary part");
  };
  if (split == std::string::npos) return {0.0, coefficient(body)};
  return {parse_real(body.substr(0, split), "real part"), coefficient(body.substr(split))};
}

ParseResult parse_command_line(const std::vector<std::string>& args) {
  CLI::App app{"Exact sums of (-k)^nu_y(n), their Euler-product constants and the delay-equation kernels"};
  app.set_help_flag("--help", "print this help and exit");
  app.set_config("--config", "", "key = value file with default flag values");
  app.set_version_flag("--version", "parity-sieve 0.1.0");

  RunConfig cfg;
  std::string command;
  std::string format = "json";
  app.add_option("command", command, "sum | histogram | constants | dirichlet | wk | fj | approx | verify")
      ->required()
      ->check(CLI::IsMember({"sum", "histogram", "constants", "dirichlet", "wk", "fj", "approx", "verify"}));
  app.add_option("--x", cfg.x, "upper limit x");
  app.add_option("--y", cfg.y, "sieving bound y (primes p < y); omit for all primes");
  app.add_option("--k", cfg.k, "k in (-k)^nu");
  app.add_option("--z", cfg.z, "z in z^nu: integer, real or complex such as 1+2i");
  app.add_option("--alpha-max", cfg.alpha_max, "solver range");
  app.add_option("--step", cfg.step, "solver step 1/M, e.g. 1/1024");
  app.add_option("--cutoff", cfg.cutoff, "Euler product cutoff");
  app.add_option("--j", cfg.j, "index j");
  app.add_option("--ell", cfg.ell, "log power l in F_{j,l}");
  app.add_option("--N", cfg.N, "Dirichlet sum limit");
  app.add_option("--h", cfg.h, "Buchstab exponent, Y = ceil(y^h)");
  app.add_option("--epsilon", cfg.epsilon, "exclusion band around jump points");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", cfg.output, "report path (stdout when omitted)");
  app.add_option("--threads", cfg.threads, "worker threads (falls back to PARITY_SIEVE_THREADS)")
      ->check(CLI::Range(1u, 1024u));
  app.add_option("--calibration", cfg.calibration, "frozen tolerance file");
  app.add_option("--suite", cfg.suite, "verify suite")
      ->check(CLI::IsMember({"all", "oracle", "buchstab", "constants", "selberg", "small-y", "expansion"}));
  app.add_option("--trials", cfg.trials, "random trials for verify");
  app.add_option("--seed", cfg.seed, "SplitMix64 seed for verify");
  app.add_option("--emit-csv", cfg.emit_csv, "also write grid/series data as CSV");

  std::vector<const char*> argv;
  argv.push_back("parity-sieve");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return {std::nullopt, kExitOk, app.help()};
  } catch (const CLI::CallForVersion& e) {
    return {std::nullopt, kExitOk, e.what()};
  } catch (const CLI::ParseError& e) {
    std::string what = e.what();
    if (what.empty()) what = e.get_name();
    return {std::nullopt, kExitUsage, "error: " + what};
  }
  cfg.command = kCommands.at(command);
  cfg.format = format == "csv" ? Format::kCsv : Format::kJson;
  return {cfg, kExitOk, {}};
}

void validate(const RunConfig& c) {
  const char* name = command_name(c.command);
  auto csv_ok = [&] {
    if (c.format == Format::kCsv)
      fail(ErrorCode::kBounds, std::string(name) + " has no tabular output; use --format json");
  };
  if (c.k && (*c.k < 1 || *c.k > 16)) fail(ErrorCode::kBounds, "--k must lie in [1, 16]");
  if (c.y && *c.y < 2) fail(ErrorCode::kBounds, "--y must be at least 2");
  switch (c.command) {
    case Command::kSum:
      csv_ok();
      need(c.x.has_value(), "--x", name);
      if (c.k.has_value() == c.z.has_value()) fail(ErrorCode::kBounds, "sum takes exactly one of --k and --z");
      if (*c.x < 1) fail(ErrorCode::kBounds, "--x must be at least 1");
      if (c.z) {
        const auto z = parse_complex(*c.z);
        if (std::hypot(z.re, z.im) > 16) fail(ErrorCode::kBounds, "|z| must not exceed 16");
      }
      if (c.h) {
        need(c.y.has_value(), "--y with --h", name);
        if (!(*c.h > 1.0)) fail(ErrorCode::kBounds, "--h must exceed 1");
      }
      break;
    case Command::kHistogram:
      need(c.x.has_value(), "--x", name);
      if (*c.x < 1) fail(ErrorCode::kBounds, "--x must be at least 1");
      break;
    case Command::kConstants:
      csv_ok();
      if (!c.k && !c.z) fail(ErrorCode::kBounds, "constants requires --k or --z");
      if (c.cutoff < 2 || c.cutoff > 1'000'000'000) fail(ErrorCode::kBounds, "--cutoff must lie in [2, 10^9]");
      break;
    case Command::kDirichlet:
      need(c.N.has_value(), "--N", name);
      need(c.k.has_value(), "--k", name);
      need(c.j.has_value(), "--j", name);
      if (*c.N < 1 || *c.N > 1'000'000'000) fail(ErrorCode::kBounds, "--N must lie in [1, 10^9]");
      if (*c.j > 16) fail(ErrorCode::kBounds, "--j must not exceed 16");
      break;
    case Command::kWk:
      need(c.k.has_value(), "--k", name);
      if (*c.k > 12) fail(ErrorCode::kBounds, "wk supports k <= 12");
      if (!(c.alpha_max >= 2 && c.alpha_max <= 64)) fail(ErrorCode::kBounds, "--alpha-max must lie in [2, 64]");
      parse_step(c.step);
      break;
    case Command::kFj:
      need(c.x.has_value(), "--x", name);
      need(c.k.has_value(), "--k", name);
      if (c.y && *c.y >= *c.x) fail(ErrorCode::kBounds, "fj needs beta = x/y > 1");
      if (!c.y && *c.x < 2) fail(ErrorCode::kBounds, "fj needs beta = x > 1");
      if (c.j && (*c.j < 1 || *c.j > *c.k + 2)) fail(ErrorCode::kBounds, "--j must lie in [1, k+2]");
      break;
    case Command::kApprox:
      csv_ok();
      need(c.x.has_value(), "--x", name);
      need(c.y.has_value(), "--y", name);
      need(c.k.has_value(), "--k", name);
      if (*c.k > 12) fail(ErrorCode::kBounds, "approx supports k <= 12");
      if (*c.y > *c.x) fail(ErrorCode::kBounds, "approx needs y <= x");
      if (*c.x > 100'000'000) fail(ErrorCode::kBounds, "approx supports x <= 10^8");
      parse_step(c.step);
      break;
    case Command::kVerify:
      csv_ok();
      if (c.trials < 1 || c.trials > 100'000) fail(ErrorCode::kBounds, "--trials must lie in [1, 10^5]");
      break;
  }
}

}  // namespace parity_sieve::cli
