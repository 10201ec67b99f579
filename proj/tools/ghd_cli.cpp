// Command-line driver: exact volumes, complexity bounds, experiment sweeps
// and a worked streaming reduction.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ghd/ball_volume.hpp"
#include "ghd/covering_code.hpp"
#include "ghd/det_protocol.hpp"
#include "ghd/errors.hpp"
#include "ghd/experiment.hpp"
#include "ghd/instance.hpp"
#include "ghd/streaming.hpp"

namespace {

constexpr int kExitBoundViolation = 2;
constexpr int kExitUsage = 1;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ghd::InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw ghd::InvalidInput("cannot write " + path);
  out << text;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gap Hamming Distance protocols: exact costs, bounds and experiments"};
  app.require_subcommand(1);

  // volume n r
  std::size_t vol_n = 0, vol_r = 0;
  auto* volume = app.add_subcommand("volume", "Exact Hamming ball volume V(n, r) and its log2");
  volume->add_option("n", vol_n)->required();
  volume->add_option("r", vol_r)->required();

  // bounds det n t | bounds stream n c p
  auto* bounds = app.add_subcommand("bounds", "Complexity bounds");
  bounds->require_subcommand(1);
  std::size_t det_n = 0, det_t = 0;
  auto* bounds_det = bounds->add_subcommand("det", "Deterministic communication bounds for GHD with L = 0, U = t");
  bounds_det->add_option("n", det_n)->required();
  bounds_det->add_option("t", det_t)->required();
  std::size_t st_n = 0, st_p = 0;
  double st_c = 0.0;
  auto* bounds_stream = bounds->add_subcommand("stream", "Space lower bound for deterministic p-pass c-approximate F0");
  bounds_stream->add_option("n", st_n)->required();
  bounds_stream->add_option("c", st_c)->required();
  bounds_stream->add_option("p", st_p)->required();

  // bench <protocol> --config file
  std::string bench_protocol, bench_config, bench_out, bench_format;
  std::uint64_t bench_seed = 0;
  unsigned bench_threads = 0;
  auto* bench = app.add_subcommand("bench", "Run an experiment sweep described by a config file");
  bench->add_option("protocol", bench_protocol, "sampling | sketch | det | stream")->required();
  bench->add_option("--config", bench_config, "Config file")->required();
  bench->add_option("--out", bench_out, "Write the report here instead of stdout");
  bench->add_option("--format", bench_format, "Override the config format: csv | json");
  bench->add_option("--seed", bench_seed, "Override the config seed");
  bench->add_option("--threads", bench_threads, "Override the config thread count");

  // compare --config file
  std::string cmp_config;
  auto* compare = app.add_subcommand("compare", "Run sampling and sketch on one grid and tabulate both rates");
  compare->add_option("--config", cmp_config, "Config file (protocol key is ignored)")->required();

  // code n r
  std::size_t code_n = 0, code_r = 0;
  std::string code_out;
  auto* code = app.add_subcommand("code", "Build and serialize a covering code (greedy for n <= 22, random above)");
  code->add_option("n", code_n)->required();
  code->add_option("r", code_r)->required();
  code->add_option("--out", code_out);

  // det x y --code file
  std::string det_x, det_y, det_code;
  std::size_t det_run_t = 0;
  auto* det = app.add_subcommand("det", "Run the deterministic protocol on one pair and print the transcript");
  det->add_option("x", det_x)->required();
  det->add_option("y", det_y)->required();
  det->add_option("--t", det_run_t, "Threshold t")->required();
  det->add_option("--code", det_code, "Serialized covering code of radius floor((t-1)/2)");

  // demo stream
  std::size_t demo_n = 16, demo_p = 2, demo_d = 0;
  double demo_c = 1.5;
  std::uint64_t demo_seed = 1;
  auto* demo = app.add_subcommand("demo", "Worked examples");
  demo->require_subcommand(1);
  auto* demo_stream = demo->add_subcommand("stream", "GHD decided through an exact F0 streaming algorithm");
  demo_stream->add_option("--n", demo_n);
  demo_stream->add_option("--c", demo_c);
  demo_stream->add_option("--p", demo_p);
  demo_stream->add_option("--distance", demo_d, "Hamming distance of the generated pair");
  demo_stream->add_option("--seed", demo_seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*volume) {
      const ghd::BallVolume v = ghd::ball_volume(vol_n, vol_r);
      std::cout << "V(" << vol_n << ", " << vol_r << ") = " << v.to_string() << "\n";
      std::cout << "log2 = " << fmt(v.log2()) << "\n";
      return 0;
    }
    if (*bounds_det) {
      const ghd::DetBounds b = ghd::det_complexity_bounds(det_n, det_t);
      std::cout << "n = " << det_n << ", t = " << det_t << " (x = y against H >= t)\n";
      std::cout << "lower = " << fmt(b.lower) << "  # n - log2 V(n, floor(t/2))\n";
      std::cout << "upper = " << fmt(b.upper) << "  # n - log2 V(n, floor((t-1)/2)) + log2 n + 2\n";
      return 0;
    }
    if (*bounds_stream) {
      const ghd::SpaceBound b = ghd::space_lower_bound(st_n, st_c, st_p);
      std::cout << "n = " << st_n << ", c = " << st_c << ", p = " << st_p << ", t = " << b.t << "\n";
      std::cout << "space >= " << fmt(b.precursor) << " bits  # (n - log2 V(n, floor(t/2))) / 2p\n";
      std::cout << "asymptotic rate = " << fmt(b.asymptotic) << "  # n (2 - c)^2 / p\n";
      return 0;
    }
    if (*bench) {
      ghd::ExperimentConfig cfg = ghd::parse_experiment_config(read_file(bench_config));
      cfg.protocol = ghd::parse_protocol_kind(bench_protocol);
      if (!bench_format.empty()) {
        if (bench_format == "csv") cfg.format = ghd::OutputFormat::Csv;
        else if (bench_format == "json") cfg.format = ghd::OutputFormat::Json;
        else throw ghd::InvalidInput("--format must be csv or json");
      }
      if (bench->count("--seed")) cfg.seed = bench_seed;
      if (bench_threads) cfg.threads = bench_threads;
      const ghd::ExperimentReport report = ghd::run_experiment(cfg);
      write_output(ghd::format_report(report, cfg.format), bench_out);
      return report.all_bounds_hold() ? 0 : kExitBoundViolation;
    }
    if (*compare) {
      ghd::ExperimentConfig cfg = ghd::parse_experiment_config(read_file(cmp_config));
      ghd::ExperimentReport both;
      for (const auto kind : {ghd::ProtocolKind::Sampling, ghd::ProtocolKind::Sketch}) {
        cfg.protocol = kind;
        auto part = ghd::run_experiment(cfg);
        both.records.insert(both.records.end(), part.records.begin(), part.records.end());
      }
      std::cout << ghd::format_comparison(ghd::compare_bounds(both));
      return both.all_bounds_hold() ? 0 : kExitBoundViolation;
    }
    if (*code) {
      const ghd::CoveringCode c = code_n <= ghd::kMaxGreedyLength
                                      ? ghd::greedy_covering_code(code_n, code_r)
                                      : ghd::random_covering_code(code_n, code_r, 0.99);
      write_output(ghd::serialize(c), code_out);
      return 0;
    }
    if (*det) {
      const ghd::BitString x = ghd::BitString::from_string(det_x);
      const ghd::BitString y = ghd::BitString::from_string(det_y);
      const ghd::DetProtocolParams params =
          det_code.empty() ? ghd::make_det_params(x.size(), det_run_t)
                           : ghd::make_det_params(
                                 x.size(), det_run_t,
                                 std::make_shared<const ghd::CoveringCode>(ghd::parse_covering_code(read_file(det_code))));
      const ghd::ProtocolOutcome out = ghd::run_det_protocol(x, y, params);
      std::cout << "|C| = " << params.code->size() << ", cost = " << ghd::det_cost(params) << " bits\n";
      std::cout << out.ledger.dump();
      std::cout << "output = " << out.output << "\n";
      return 0;
    }
    if (*demo_stream) {
      const auto [x, y] = ghd::random_pair_at_distance(demo_n, demo_d, demo_seed);
      const auto [u, v] = ghd::encode_streams(x, y);
      std::cout << "x = " << x.to_string() << "\ny = " << y.to_string() << "\n";
      auto tokens = [](const ghd::TokenStream& s) {
        std::string out;
        for (const auto tok : s.tokens) out += (out.empty() ? "" : " ") + std::to_string(tok);
        return out;
      };
      std::cout << "u = " << tokens(u) << "\nv = " << tokens(v) << "\n";
      const std::size_t n = demo_n, passes = demo_p;
      const ghd::AlgorithmFactory factory = [n, passes] {
        return std::make_unique<ghd::ExactBitmapF0>(2 * n, passes);
      };
      const ghd::StreamingDecision d = ghd::ghd_via_streaming(factory, demo_c, x, y);
      const ghd::ReductionRun& r = d.run;
      std::cout << "H(x, y) = " << r.distance << ", t = " << r.t << ", F0(u.v) = " << r.f0 << ", E = " << r.estimate
                << "\n";
      std::cout << "passes = " << r.passes << ", state = " << r.state_bits << " bits, handoffs = " << r.handoffs
                << ", communication = " << r.communication << " bits (budget " << 2 * r.passes * r.state_bits
                << ")\n";
      std::cout << "answer = " << d.output << "  # 0 iff E < n + t\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
