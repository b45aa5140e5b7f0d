#pragma once

#include <map>
#include <optional>
#include <string>

namespace parity_sieve::cli {

// Frozen tolerances, one `key = value` per line, `#` comments.
struct Calibration {
  std::string path;
  std::string hash;  // FNV-1a 64 of the file bytes, 16 hex digits
  std::map<std::string, double> values;

  double get(const std::string& key, double fallback) const;
  // Throws when the key is missing.
  double require(const std::string& key) const;
};

std::string fnv1a_hex(const std::string& bytes);

// Throws parity_sieve::Error(kBounds) when unreadable or malformed.
Calibration load_calibration(const std::string& path);

}  // namespace parity_sieve::cli
