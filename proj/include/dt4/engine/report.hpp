#ifndef DT4_ENGINE_REPORT_HPP
#define DT4_ENGINE_REPORT_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "dt4/series/truncated_series.hpp"

namespace dt4 {

enum class Status { pass, fail, error };

inline std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::error:
      return "error";
  }
  return "error";
}

/// One compared quantity. For series identities `exponents` is the color-degree
/// vector; checks reuse the record with a label naming what was compared.
/// In modular mode lhs/rhs hold one residue per trial.
struct CoefficientRecord {
  Exponent exponents;
  std::string label;
  nlohmann::json lhs;
  nlohmann::json rhs;
  bool equal = false;
};

/// Why a run ended in status error; the CLI maps this to an exit code.
enum class ErrorKind { none, config, degenerate, internal };

struct Report {
  nlohmann::json task = nlohmann::json::object();
  Status status = Status::pass;
  std::vector<CoefficientRecord> coefficients;
  std::uint64_t partitions_processed = 0;

  // modular mode only
  std::optional<std::uint64_t> prime;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::array<std::uint64_t, 4>> sample_points;
  std::optional<std::string> failure_probability_bound;
  std::optional<std::uint64_t> degree_bound;

  ErrorKind error_kind = ErrorKind::none;
  std::string error;

  // run-dependent; left out of deterministic output
  std::int64_t elapsed_ms = 0;
  std::uint64_t cache_hits = 0;
  std::uint64_t cache_misses = 0;

  /// Sets status from the records unless an error was already recorded.
  void finalize() {
    if (status == Status::error) return;
    status = Status::pass;
    for (const auto& r : coefficients) {
      if (!r.equal) status = Status::fail;
    }
  }

  void fail_with(ErrorKind kind, std::string message) {
    status = Status::error;
    error_kind = kind;
    error = std::move(message);
  }

  std::size_t mismatches() const {
    std::size_t n = 0;
    for (const auto& r : coefficients) n += r.equal ? 0 : 1;
    return n;
  }

  /// Report document. With `include_run_stats` false the output depends only on
  /// the task and seed, so it is byte-identical across thread counts and cache state.
  nlohmann::json to_json(bool include_run_stats = true) const {
    nlohmann::json j;
    j["task"] = task;
    j["status"] = to_string(status);
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& r : coefficients) {
      nlohmann::json c{{"exponents", r.exponents}, {"lhs", r.lhs}, {"rhs", r.rhs}, {"equal", r.equal}};
      if (!r.label.empty()) c["label"] = r.label;
      coeffs.push_back(std::move(c));
    }
    j["coefficients"] = std::move(coeffs);
    j["partitions_processed"] = partitions_processed;
    if (prime) j["prime"] = *prime;
    if (trials) j["trials"] = *trials;
    if (seed) j["seed"] = *seed;
    if (!sample_points.empty()) j["sample_points"] = sample_points;
    if (degree_bound) j["degree_bound"] = *degree_bound;
    if (failure_probability_bound) j["failure_probability_bound"] = *failure_probability_bound;
    if (status == Status::error) j["error"] = error;
    if (include_run_stats) {
      j["elapsed_ms"] = elapsed_ms;
      j["cache_hits"] = cache_hits;
      j["cache_misses"] = cache_misses;
    }
    return j;
  }
};

}  // namespace dt4

#endif  // DT4_ENGINE_REPORT_HPP
