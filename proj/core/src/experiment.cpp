#include "ghd/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ghd/det_protocol.hpp"
#include "ghd/errors.hpp"
#include "ghd/parallel.hpp"
#include "ghd/sketch.hpp"
#include "ghd/streaming.hpp"

namespace ghd {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::uint64_t parse_uint(const std::string& text, std::string_view key) {
  std::uint64_t v = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || end != text.data() + text.size()) {
    throw InvalidInput("config: '" + std::string(key) + "' expects a non-negative integer, got '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& text, std::string_view key) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw InvalidInput("config: '" + std::string(key) + "' expects a number, got '" + text + "'");
  }
  return v;
}

std::vector<std::size_t> parse_uint_list(const std::string& value, std::string_view key) {
  std::vector<std::size_t> out;
  if (value.empty()) return out;
  for (const auto& item : split(value, ',')) {
    const auto dots = item.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_uint(item, key));
      continue;
    }
    const auto lo = parse_uint(trim(item.substr(0, dots)), key);
    const auto hi = parse_uint(trim(item.substr(dots + 2)), key);
    if (lo > hi) throw InvalidInput("config: empty range in '" + std::string(key) + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& value, std::string_view key) {
  std::vector<double> out;
  if (value.empty()) return out;
  for (const auto& item : split(value, ',')) out.push_back(parse_real(item, key));
  return out;
}

bool parse_bool(const std::string& value, std::string_view key) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw InvalidInput("config: '" + std::string(key) + "' expects true or false");
}

// Trial k of a grid point: which instance, which coins.
struct TrialSeeds {
  std::uint64_t instance;
  std::uint64_t coins;
};

TrialSeeds trial_seeds(std::uint64_t point_seed, std::size_t trial, bool far) {
  const std::uint64_t base = derive_seed(point_seed, 2 * trial + (far ? 1 : 0));
  return {derive_seed(base, 0), derive_seed(base, 1)};
}

void finish_rates(ExperimentRecord& r) {
  const auto trials = static_cast<double>(r.trials);
  r.close_error = static_cast<double>(r.close_errors) / trials;
  r.far_error = static_cast<double>(r.far_errors) / trials;
  r.close_halfwidth = monte_carlo_halfwidth(r.close_error, r.trials);
  r.far_halfwidth = monte_carlo_halfwidth(r.far_error, r.trials);
  auto within = [&](double error, const std::optional<double>& bound) {
    if (!bound) return true;
    if (*bound == 0.0) return error == 0.0;
    return error <= error_allowance(*bound, r.trials);
  };
  r.bound_ok = within(r.close_error, r.close_bound) && within(r.far_error, r.far_bound) && r.chain_violations == 0 &&
               r.worst_bits <= r.declared_bits;
  if (r.lower_bits && static_cast<double>(r.worst_bits) < *r.lower_bits) r.bound_ok = false;
  if (r.upper_bits && static_cast<double>(r.worst_bits) > *r.upper_bits) r.bound_ok = false;
}

void run_gap_point(ExperimentRecord& r, const Protocol& protocol, std::uint64_t point_seed,
                   const std::function<void(const BitString&, const BitString&, std::uint64_t)>& audit) {
  for (std::size_t k = 0; k < r.trials; ++k) {
    for (const bool far : {false, true}) {
      const TrialSeeds seeds = trial_seeds(point_seed, k, far);
      const std::size_t d = far ? *r.far_min : *r.close_max;
      const auto [x, y] = random_pair_at_distance(r.n, d, seeds.instance);
      const ProtocolOutcome out = run_protocol(protocol, x, y, seeds.coins);
      r.worst_bits = std::max(r.worst_bits, out.ledger.total_bits());
      if (out.output != (far ? 1 : 0)) ++(far ? r.far_errors : r.close_errors);
      if (audit) audit(x, y, seeds.coins);
    }
  }
}

void run_sampling_point(ExperimentRecord& r, const ExperimentConfig& cfg, std::uint64_t seed) {
  const SamplingParams params =
      derive_sampling_params(r.n, *r.close_max, *r.far_min, *r.s, cfg.rule, cfg.rate_constant);
  r.samples = params.trials;
  r.declared_bits = sampling_cost(params);
  r.close_bound = std::exp(-*r.s);
  r.far_bound = std::exp(-*r.s);
  run_gap_point(r, SamplingProtocol(params), seed, {});
}

void run_sketch_point(ExperimentRecord& r, const ExperimentConfig& cfg, std::uint64_t seed) {
  const SketchParams params = derive_sketch_params(r.n, *r.close_max, *r.far_min, *r.s, cfg.allow_hypothesis_violation);
  r.blocks = params.blocks;
  r.block_length = params.block_length;
  r.word_width = params.word_width;
  r.hypothesis_holds = params.hypothesis_holds;
  r.declared_bits = sketch_cost(params);
  r.close_bound = 0.0;
  if (params.hypothesis_holds) r.far_bound = std::exp(-*r.s);
  const double slack = 1e-6;
  std::function<void(const BitString&, const BitString&, std::uint64_t)> audit;
  if (!params.trivial_mode) {
    audit = [&](const BitString& x, const BitString& y, std::uint64_t coins) {
      const SketchStatistics st = audit_sketch(x, y, params, SharedRandomness(coins));
      const auto h = static_cast<double>(hamming_distance(x, y));
      if (st.t > h + slack || std::fabs(st.t - st.t_prime) > 5.0 / static_cast<double>(r.n) + slack) {
        ++r.chain_violations;
      }
    };
  }
  run_gap_point(r, SketchProtocol(params), seed, audit);
}

void run_det_point(ExperimentRecord& r, std::uint64_t seed) {
  const DetProtocolParams params = make_det_params(r.n, *r.t);
  const DetProtocol protocol(params);
  r.code_size = params.code->size();
  r.declared_bits = det_cost(params);
  r.close_bound = 0.0;
  r.far_bound = 0.0;
  const DetBounds bounds = det_complexity_bounds(r.n, *r.t);
  r.lower_bits = bounds.lower;
  r.upper_bits = bounds.upper;
  for (std::size_t k = 0; k < r.trials; ++k) {
    for (const bool far : {false, true}) {
      const TrialSeeds seeds = trial_seeds(seed, k, far);
      // The promise is x = y against H >= t.
      auto rng = SharedRandomness(seeds.coins).stream();
      const std::size_t d = far ? *r.t + rng.uniform_below(r.n - *r.t + 1) : 0;
      const auto [x, y] = random_pair_at_distance(r.n, d, seeds.instance);
      const ProtocolOutcome out = run_protocol(protocol, x, y, 0);
      r.worst_bits = std::max(r.worst_bits, out.ledger.total_bits());
      if (out.output != (far ? 1 : 0)) ++(far ? r.far_errors : r.close_errors);
    }
  }
}

void run_stream_point(ExperimentRecord& r, std::uint64_t seed) {
  const std::size_t n = r.n;
  const std::size_t passes = *r.p;
  const SpaceBound bound = space_lower_bound(n, *r.c, passes);
  r.t = bound.t;
  r.close_bound = 0.0;
  r.far_bound = 0.0;
  const AlgorithmFactory factory = [n, passes] { return std::make_unique<ExactBitmapF0>(2 * n, passes); };
  std::size_t state_bits = 0;
  bool budget_ok = true;
  for (std::size_t k = 0; k < r.trials; ++k) {
    for (const bool far : {false, true}) {
      const TrialSeeds seeds = trial_seeds(seed, k, far);
      auto rng = SharedRandomness(seeds.coins).stream();
      const std::size_t d = far ? bound.t + rng.uniform_below(n - bound.t + 1) : 0;
      const auto [x, y] = random_pair_at_distance(n, d, seeds.instance);
      const StreamingDecision dec = ghd_via_streaming(factory, *r.c, x, y);
      state_bits = std::max(state_bits, dec.run.state_bits);
      budget_ok = budget_ok && dec.run.within_budget() && dec.run.f0 == n + dec.run.distance;
      r.worst_bits = std::max(r.worst_bits, dec.run.communication);
      if (dec.output != (far ? 1 : 0)) ++(far ? r.far_errors : r.close_errors);
    }
  }
  r.state_bits = state_bits;
  r.declared_bits = 2 * passes * state_bits;
  r.lower_bits = bound.precursor;
  if (!budget_ok || static_cast<double>(state_bits) < bound.precursor) r.chain_violations += 1;
}

std::vector<ExperimentRecord> expand_grid(const ExperimentConfig& cfg) {
  std::vector<ExperimentRecord> grid;
  const std::string name(to_string(cfg.protocol));
  switch (cfg.protocol) {
    case ProtocolKind::Sampling:
    case ProtocolKind::Sketch:
      for (auto n : cfg.n)
        for (auto l : cfg.close_max)
          for (auto u : cfg.far_min)
            for (auto s : cfg.s) {
              ExperimentRecord r;
              r.protocol = name;
              r.n = n;
              r.close_max = l;
              r.far_min = u;
              r.s = s;
              grid.push_back(std::move(r));
            }
      break;
    case ProtocolKind::Deterministic:
      for (auto n : cfg.n)
        for (auto t : cfg.t) {
          ExperimentRecord r;
          r.protocol = name;
          r.n = n;
          r.t = t;
          grid.push_back(std::move(r));
        }
      break;
    case ProtocolKind::Streaming:
      for (auto n : cfg.n)
        for (auto c : cfg.c)
          for (auto p : cfg.p) {
            ExperimentRecord r;
            r.protocol = name;
            r.n = n;
            r.c = c;
            r.p = p;
            grid.push_back(std::move(r));
          }
      break;
  }
  return grid;
}

std::string fmt_real(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

template <typename T>
std::string fmt_opt(const std::optional<T>& v) {
  if (!v) return {};
  if constexpr (std::is_same_v<T, double>) {
    return fmt_real(*v);
  } else if constexpr (std::is_same_v<T, bool>) {
    return *v ? "true" : "false";
  } else {
    return std::to_string(*v);
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

// Column name and string rendering, shared by CSV and JSON.
using Cell = std::pair<std::string, std::function<nlohmann::ordered_json(const ExperimentRecord&)>>;

template <typename T>
nlohmann::ordered_json opt_json(const std::optional<T>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

const std::vector<Cell>& columns() {
  using R = ExperimentRecord;
  using J = nlohmann::ordered_json;
  static const std::vector<Cell> cols = {
      {"protocol", [](const R& r) { return J(r.protocol); }},
      {"n", [](const R& r) { return J(r.n); }},
      {"L", [](const R& r) { return opt_json(r.close_max); }},
      {"U", [](const R& r) { return opt_json(r.far_min); }},
      {"t", [](const R& r) { return opt_json(r.t); }},
      {"s", [](const R& r) { return opt_json(r.s); }},
      {"c", [](const R& r) { return opt_json(r.c); }},
      {"p", [](const R& r) { return opt_json(r.p); }},
      {"status", [](const R& r) { return J(r.skipped ? "skipped" : "ok"); }},
      {"reason", [](const R& r) { return J(r.skip_reason); }},
      {"a", [](const R& r) { return opt_json(r.block_length); }},
      {"b", [](const R& r) { return opt_json(r.blocks); }},
      {"m", [](const R& r) { return opt_json(r.samples); }},
      {"code_size", [](const R& r) { return opt_json(r.code_size); }},
      {"word_width", [](const R& r) { return opt_json(r.word_width); }},
      {"state_bits", [](const R& r) { return opt_json(r.state_bits); }},
      {"hypothesis_holds", [](const R& r) { return opt_json(r.hypothesis_holds); }},
      {"declared_bits", [](const R& r) { return J(r.declared_bits); }},
      {"worst_bits", [](const R& r) { return J(r.worst_bits); }},
      {"lower_bits", [](const R& r) { return opt_json(r.lower_bits); }},
      {"upper_bits", [](const R& r) { return opt_json(r.upper_bits); }},
      {"trials", [](const R& r) { return J(r.trials); }},
      {"close_errors", [](const R& r) { return J(r.close_errors); }},
      {"close_error", [](const R& r) { return J(r.close_error); }},
      {"close_halfwidth", [](const R& r) { return J(r.close_halfwidth); }},
      {"close_bound", [](const R& r) { return opt_json(r.close_bound); }},
      {"far_errors", [](const R& r) { return J(r.far_errors); }},
      {"far_error", [](const R& r) { return J(r.far_error); }},
      {"far_halfwidth", [](const R& r) { return J(r.far_halfwidth); }},
      {"far_bound", [](const R& r) { return opt_json(r.far_bound); }},
      {"chain_violations", [](const R& r) { return J(r.chain_violations); }},
      {"bound_ok", [](const R& r) { return J(r.bound_ok); }},
  };
  return cols;
}

std::string cell_text(const nlohmann::ordered_json& v) {
  if (v.is_null()) return {};
  if (v.is_string()) return csv_escape(v.get<std::string>());
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_float()) return fmt_real(v.get<double>());
  return v.dump();
}

}  // namespace

std::string_view to_string(ProtocolKind kind) noexcept {
  switch (kind) {
    case ProtocolKind::Sampling: return "sampling";
    case ProtocolKind::Sketch: return "sketch";
    case ProtocolKind::Deterministic: return "det";
    case ProtocolKind::Streaming: return "stream";
  }
  return "unknown";
}

ProtocolKind parse_protocol_kind(std::string_view name) {
  if (name == "sampling") return ProtocolKind::Sampling;
  if (name == "sketch") return ProtocolKind::Sketch;
  if (name == "det" || name == "deterministic") return ProtocolKind::Deterministic;
  if (name == "stream" || name == "streaming") return ProtocolKind::Streaming;
  throw InvalidInput("unknown protocol '" + std::string(name) + "'");
}

ExperimentConfig parse_experiment_config(std::string_view text) {
  ExperimentConfig cfg;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw InvalidInput("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "protocol") cfg.protocol = parse_protocol_kind(value);
    else if (key == "n") cfg.n = parse_uint_list(value, key);
    else if (key == "L") cfg.close_max = parse_uint_list(value, key);
    else if (key == "U") cfg.far_min = parse_uint_list(value, key);
    else if (key == "t") cfg.t = parse_uint_list(value, key);
    else if (key == "p") cfg.p = parse_uint_list(value, key);
    else if (key == "s") cfg.s = parse_real_list(value, key);
    else if (key == "c") cfg.c = parse_real_list(value, key);
    else if (key == "trials") cfg.trials = parse_uint(value, key);
    else if (key == "seed") cfg.seed = parse_uint(value, key);
    else if (key == "format") {
      if (value == "csv") cfg.format = OutputFormat::Csv;
      else if (value == "json") cfg.format = OutputFormat::Json;
      else throw InvalidInput("config: format must be csv or json");
    } else if (key == "rule") {
      if (value == "hoeffding") cfg.rule = SamplingRule::Hoeffding;
      else if (value == "asymptotic") cfg.rule = SamplingRule::AsymptoticRate;
      else throw InvalidInput("config: rule must be hoeffding or asymptotic");
    } else if (key == "rate_constant") cfg.rate_constant = parse_real(value, key);
    else if (key == "allow_hypothesis_violation") cfg.allow_hypothesis_violation = parse_bool(value, key);
    else if (key == "threads") cfg.threads = static_cast<unsigned>(std::max<std::uint64_t>(1, parse_uint(value, key)));
    else throw InvalidInput("config line " + std::to_string(line_no) + ": unknown key '" + key + "'");
  }
  if (cfg.trials == 0) throw InvalidInput("config: trials must be positive");
  return cfg;
}

bool ExperimentReport::all_bounds_hold() const noexcept {
  for (const auto& r : records) {
    if (!r.skipped && !r.bound_ok) return false;
  }
  return true;
}

double error_allowance(double bound, std::size_t trials) noexcept {
  if (trials == 0) return bound;
  return bound + 3.0 * std::sqrt(bound / static_cast<double>(trials));
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
  ExperimentReport report;
  report.records = expand_grid(config);
  parallel_for(report.records.size(), config.threads, [&](std::size_t i) {
    ExperimentRecord& r = report.records[i];
    const std::uint64_t seed = derive_seed(config.seed, i);
    r.trials = config.trials;
    try {
      switch (config.protocol) {
        case ProtocolKind::Sampling: run_sampling_point(r, config, seed); break;
        case ProtocolKind::Sketch: run_sketch_point(r, config, seed); break;
        case ProtocolKind::Deterministic: run_det_point(r, seed); break;
        case ProtocolKind::Streaming: run_stream_point(r, seed); break;
      }
      finish_rates(r);
    } catch (const InvalidInput& e) {
      r.skipped = true;
      r.skip_reason = e.what();
    } catch (const HypothesisViolation& e) {
      r.skipped = true;
      r.skip_reason = e.what();
    } catch (const SizeLimitExceeded& e) {
      r.skipped = true;
      r.skip_reason = e.what();
    } catch (const ConstructionFailure& e) {
      r.skipped = true;
      r.skip_reason = e.what();
    }
    if (r.skipped) {
      r.trials = 0;
      r.bound_ok = true;
    }
  });
  return report;
}

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream out;
  const auto& cols = columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i].first;
  out << '\n';
  for (const auto& r : report.records) {
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cell_text(cols[i].second(r));
    out << '\n';
  }
  return out.str();
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : report.records) {
    nlohmann::ordered_json obj;
    for (const auto& [name, get] : columns()) obj[name] = get(r);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

std::string format_report(const ExperimentReport& report, OutputFormat format) {
  return format == OutputFormat::Json ? to_json(report) : to_csv(report);
}

std::vector<BoundComparison> compare_bounds(const ExperimentReport& report) {
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, double>;
  std::map<Key, const ExperimentRecord*> sampling;
  std::map<Key, const ExperimentRecord*> sketch;
  for (const auto& r : report.records) {
    if (!r.close_max || !r.far_min || !r.s) continue;
    const Key key{r.n, *r.close_max, *r.far_min, *r.s};
    if (r.protocol == to_string(ProtocolKind::Sampling)) sampling[key] = &r;
    if (r.protocol == to_string(ProtocolKind::Sketch)) sketch[key] = &r;
  }
  if (sampling.empty() || sketch.empty()) {
    throw InvalidInput("compare_bounds: report needs both sampling and sketch records");
  }
  if (sampling.size() != sketch.size()) throw InvalidInput("compare_bounds: sampling and sketch grids differ");

  std::vector<BoundComparison> rows;
  for (const auto& [key, samp] : sampling) {
    const auto it = sketch.find(key);
    if (it == sketch.end()) throw InvalidInput("compare_bounds: sampling and sketch grids differ");
    const auto& [n, l, u, s] = key;
    BoundComparison row;
    row.n = n;
    row.close_max = l;
    row.far_min = u;
    row.s = s;
    if (!samp->skipped) row.sampling_bits = samp->worst_bits;
    if (!it->second->skipped) row.sketch_bits = it->second->worst_bits;
    const double nd = static_cast<double>(n);
    const double ratio = s / static_cast<double>(u);
    row.sampling_rate = ratio * nd;
    row.sketch_rate = std::cbrt(ratio) * nd * std::log2(nd);
    row.below_crossover = s < static_cast<double>(u);
    row.both_trivial = row.sampling_rate >= nd && row.sketch_rate >= nd;
    rows.push_back(row);
  }
  return rows;
}

std::string format_comparison(const std::vector<BoundComparison>& rows) {
  std::ostringstream out;
  out << "n,L,U,s,sampling_bits,sketch_bits,sampling_rate,sketch_rate,s_below_U,both_trivial\n";
  for (const auto& r : rows) {
    out << r.n << ',' << r.close_max << ',' << r.far_min << ',' << fmt_real(r.s) << ','
        << fmt_opt(r.sampling_bits) << ',' << fmt_opt(r.sketch_bits) << ',' << fmt_real(r.sampling_rate) << ','
        << fmt_real(r.sketch_rate) << ',' << (r.below_crossover ? "true" : "false") << ','
        << (r.both_trivial ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace ghd
