#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace simplicial {

enum class OutputFormat { json, text, csv };

/// One CLI invocation. Unset optionals fall back to per-command defaults.
struct Request {
  std::string command;
  std::filesystem::path complex_path;
  std::optional<int> dim;
  double laziness = 0.5;
  std::size_t steps = 100;
  std::uint64_t seed = 0;
  std::size_t chains = 10000;
  std::string weights = "normalized";  // one | normalized | recip-deg
  OutputFormat format = OutputFormat::json;
  std::optional<std::string> start;
  std::string walk = "up";  // converge / montecarlo: up | down | graph | vertex
  unsigned workers = 1;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitPrecondition = 1;
inline constexpr int kExitInternal = 2;
inline constexpr int kExitVerification = 3;

struct Outcome {
  int exit_code = kExitOk;
  nlohmann::json report;
  std::string diagnostic;
};

const std::vector<std::string>& known_commands();

/**
 * Executes a command. The report always carries the keys
 * complex, betti, spectra, signed, orientable, walks, warnings
 * (null when a section does not apply).
 */
Outcome run(const Request& request);

/// Report in the requested format. CSV for `converge` has columns t,distance,bound.
std::string render(const Outcome& outcome, const Request& request);

}  // namespace simplicial
