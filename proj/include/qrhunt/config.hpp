#pragma once

// Optional key=value configuration for run defaults, plus the thread-count
// resolution chain: explicit flag, then QRHUNT_THREADS, then the config
// file, then 1.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "qrhunt/arith.hpp"

namespace qrhunt {

struct Config {
  i64 segment_size = kDefaultSegmentSize;
  double rho_step = 1e-4;
  std::optional<int> threads;
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto from = s.find_first_not_of(" \t\r");
  if (from == std::string::npos) return "";
  const auto to = s.find_last_not_of(" \t\r");
  return s.substr(from, to - from + 1);
}

}  // namespace detail

/// Lines of the form key=value; blank lines and #-comments ignored.
/// Known keys: segment_size, rho_step, threads.
inline Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  Config cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: bad line " + std::to_string(lineno) + " in " + path);
    const std::string key = detail::trim(stripped.substr(0, eq));
    const std::string value = detail::trim(stripped.substr(eq + 1));
    try {
      if (key == "segment_size")
        cfg.segment_size = std::stoll(value);
      else if (key == "rho_step")
        cfg.rho_step = std::stod(value);
      else if (key == "threads")
        cfg.threads = std::stoi(value);
      else
        throw std::invalid_argument("unknown key");
    } catch (const std::exception&) {
      throw std::invalid_argument("config: bad value for '" + key + "' at line " +
                                  std::to_string(lineno) + " in " + path);
    }
  }
  if (cfg.segment_size < 1) throw std::invalid_argument("config: segment_size must be positive");
  if (!(cfg.rho_step > 0)) throw std::invalid_argument("config: rho_step must be positive");
  return cfg;
}

inline int resolve_threads(std::optional<int> flag_value, const Config& cfg) {
  if (flag_value) return std::max(1, *flag_value);
  if (const char* env = std::getenv("QRHUNT_THREADS")) {
    try {
      return std::max(1, std::stoi(env));
    } catch (const std::exception&) {
      throw std::invalid_argument("QRHUNT_THREADS is not an integer");
    }
  }
  if (cfg.threads) return std::max(1, *cfg.threads);
  return 1;
}

}  // namespace qrhunt
