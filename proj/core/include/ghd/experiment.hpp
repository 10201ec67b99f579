#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ghd/sampling.hpp"

namespace ghd {

enum class ProtocolKind { Sampling, Sketch, Deterministic, Streaming };
enum class OutputFormat { Csv, Json };

std::string_view to_string(ProtocolKind kind) noexcept;
/// Accepts sampling, sketch, det / deterministic, stream / streaming.
ProtocolKind parse_protocol_kind(std::string_view name);

/// A parameter sweep. The grid is the cartesian product of the lists that
/// apply to the protocol: (n, L, U, s) for sampling and sketch, (n, t) for
/// deterministic, (n, c, p) for streaming. Any empty list means an empty grid.
struct ExperimentConfig {
  ProtocolKind protocol = ProtocolKind::Sketch;
  std::vector<std::size_t> n;
  std::vector<std::size_t> close_max;  // L
  std::vector<std::size_t> far_min;    // U
  std::vector<std::size_t> t;
  std::vector<std::size_t> p;
  std::vector<double> s;
  std::vector<double> c;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  OutputFormat format = OutputFormat::Csv;
  SamplingRule rule = SamplingRule::Hoeffding;
  double rate_constant = 8.0;
  bool allow_hypothesis_violation = false;
  unsigned threads = 1;
};

/// Key-value text, one `key = value` per line, `#` starts a comment. List
/// values are comma separated; integer lists also accept `a..b` ranges.
/// Keys: protocol, n, L, U, t, s, c, p, trials, seed, format, rule,
/// rate_constant, allow_hypothesis_violation, threads.
ExperimentConfig parse_experiment_config(std::string_view text);

/// One grid point. Optional fields are absent when they do not apply.
struct ExperimentRecord {
  std::string protocol;
  std::size_t n = 0;
  std::optional<std::size_t> close_max, far_min, t, p;
  std::optional<double> s, c;

  bool skipped = false;
  std::string skip_reason;

  // Derived parameters.
  std::optional<std::size_t> block_length, blocks, samples, code_size, word_width, state_bits;
  std::optional<bool> hypothesis_holds;

  std::size_t declared_bits = 0;
  std::size_t worst_bits = 0;
  std::size_t trials = 0;
  std::size_t close_errors = 0;
  std::size_t far_errors = 0;
  double close_error = 0.0;
  double far_error = 0.0;
  double close_halfwidth = 0.0;
  double far_halfwidth = 0.0;
  std::optional<double> close_bound, far_bound;  // 0 means "must never err"
  std::optional<double> lower_bits, upper_bits;
  std::size_t chain_violations = 0;  // sketch only: T or T' outside their analytic bounds
  bool bound_ok = true;
};

struct ExperimentReport {
  std::vector<ExperimentRecord> records;

  bool all_bounds_hold() const noexcept;
};

/// Error-rate allowance used for every bound check: bound + 3 sqrt(bound / trials).
double error_allowance(double bound, std::size_t trials) noexcept;

/// Deterministic in (config, seed); grid points run on config.threads workers
/// with per-point seeds derived from the master seed.
ExperimentReport run_experiment(const ExperimentConfig& config);

/// Fixed columns, one row per record, header first.
std::string to_csv(const ExperimentReport& report);
/// Array of objects with the same keys as the CSV columns; null for absent.
std::string to_json(const ExperimentReport& report);
std::string format_report(const ExperimentReport& report, OutputFormat format);

struct BoundComparison {
  std::size_t n = 0, close_max = 0, far_min = 0;
  double s = 0.0;
  std::optional<std::size_t> sampling_bits, sketch_bits;
  double sampling_rate = 0.0;  // (s / U) n
  double sketch_rate = 0.0;    // (s / U)^(1/3) n log2 n
  bool below_crossover = false;  // s < U
  bool both_trivial = false;     // both rates >= n
};

/// Pairs sampling and sketch records on (n, L, U, s). Throws InvalidInput
/// when either protocol is missing or the two grids differ.
std::vector<BoundComparison> compare_bounds(const ExperimentReport& report);
std::string format_comparison(const std::vector<BoundComparison>& rows);

}  // namespace ghd
