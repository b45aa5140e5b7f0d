#include "parity_sieve_cli/calibration.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "parity_sieve/error.hpp"

namespace parity_sieve::cli {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

double Calibration::get(const std::string& key, double fallback) const {
  const auto it = values.find(key);
  return it == values.end() ? fallback : it->second;
}

double Calibration::require(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) fail(ErrorCode::kBounds, "calibration file lacks key '" + key + "'");
  return it->second;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Calibration load_calibration(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::kBounds, "cannot read calibration file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  Calibration cal;
  cal.path = path;
  cal.hash = fnv1a_hex(buf.str());

  std::istringstream lines(buf.str());
  std::string line;
  int number = 0;
  while (std::getline(lines, line)) {
    ++number;
    line = trim(line.substr(0, line.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::kBounds, path + ":" + std::to_string(number) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      std::size_t used = 0;
      const double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      cal.values[key] = v;
    } catch (const std::exception&) {
      fail(ErrorCode::kBounds, path + ":" + std::to_string(number) + ": not a number: " + value);
    }
  }
  return cal;
}

}  // namespace parity_sieve::cli
