#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "hfc/baseline_partitioner.h"
#include "hfc/cli.h"
#include "hfc/io.h"
#include "hfc/refine.h"
#include "hfc/solver.h"

namespace hfc::cli {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Ratio parse_epsilon(const std::string& text) {
  Ratio eps;
  try {
    eps = Ratio::parse_decimal(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("invalid epsilon '" + text + "': " + e.what());
  }
  if (!(eps < Ratio(1, 1))) throw UsageError("epsilon must be below 1");
  return eps;
}

Ratio parse_alpha(const std::string& text) {
  Ratio alpha;
  try {
    alpha = Ratio::parse_decimal(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError("invalid alpha '" + text + "': " + e.what());
  }
  if (alpha == Ratio() || Ratio(1, 2) < alpha) throw UsageError("alpha must be in (0, 0.5]");
  return alpha;
}

struct Algorithm {
  enum class Kind { Hfc, Baseline, Rebahfc } kind = Kind::Hfc;
  bool waves = true;
  std::uint32_t pairs = 0;
};

Algorithm parse_algorithm(const std::string& label) {
  Algorithm algorithm;
  if (label == "baseline") {
    algorithm.kind = Algorithm::Kind::Baseline;
  } else if (label == "rebahfc") {
    algorithm.kind = Algorithm::Kind::Rebahfc;
  } else if (label == "hfc-waves") {
    algorithm.waves = true;
  } else if (label.starts_with("hfc-")) {
    const std::string count = label.substr(4);
    std::uint32_t q = 0;
    const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), q);
    if (ec != std::errc() || ptr != count.data() + count.size() || q == 0) {
      throw UsageError("unknown algorithm '" + label + "'");
    }
    algorithm.waves = false;
    algorithm.pairs = q;
  } else {
    throw UsageError("unknown algorithm '" + label + "'");
  }
  return algorithm;
}

std::string algorithm_label(const std::string& pairs) {
  return pairs == "waves" ? "hfc-waves" : "hfc-" + pairs;
}

struct RunSettings {
  Ratio epsilon;
  std::string epsilon_text;
  std::uint64_t seed = 0;
  double time_limit = 0;
  std::uint32_t threads = 1;
  bool timing = false;
};

struct Outcome {
  RunRecord record;
  std::optional<Bipartition> partition;
  int exit_code = kOk;
};

void fill_metrics(RunRecord& record, const Bipartition& partition) {
  record.cut = partition.cut;
  record.block0 = partition.block_sizes[0];
  record.block1 = partition.block_sizes[1];
  record.imbalance = partition.imbalance();
}

Outcome run_algorithm(const Hypergraph& h, const std::string& instance, const std::string& label,
                      const RunSettings& settings) {
  const Algorithm algorithm = parse_algorithm(label);
  Outcome outcome;
  RunRecord& record = outcome.record;
  record.instance = instance;
  record.algorithm = label;
  record.seed = settings.seed;
  record.epsilon = settings.epsilon_text;
  record.status = std::string(to_string(RunStatus::Ok));

  const auto start = std::chrono::steady_clock::now();
  switch (algorithm.kind) {
    case Algorithm::Kind::Hfc: {
      ExecutorConfig cfg;
      cfg.epsilon = settings.epsilon;
      cfg.seed = settings.seed;
      cfg.time_limit = settings.time_limit;
      cfg.threads = settings.threads;
      cfg.use_waves = algorithm.waves;
      if (!algorithm.waves) cfg.pair_count = algorithm.pairs;
      const PartitionResult result = partition_hypergraph(h, cfg);
      record.status = std::string(to_string(result.status));
      outcome.partition = result.partition;
      if (result.status == RunStatus::Timeout) outcome.exit_code = kTimeout;
      if (result.status == RunStatus::Unbalanced) outcome.exit_code = kInfeasible;
      break;
    }
    case Algorithm::Kind::Baseline:
      outcome.partition = baseline_partition(h, settings.epsilon, settings.seed);
      break;
    case Algorithm::Kind::Rebahfc: {
      const Bipartition initial = baseline_partition(h, settings.epsilon, settings.seed);
      record.initial_cut = initial.cut;
      RefineConfig cfg = default_refine_config(settings.epsilon);
      cfg.seed = settings.seed;
      Budget budget = Budget::with_time_limit(settings.time_limit);
      outcome.partition = rebahfc(h, initial, cfg, budget).partition;
      break;
    }
  }
  if (settings.timing) {
    record.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  if (outcome.partition) fill_metrics(record, *outcome.partition);
  return outcome;
}

LoadedHypergraph load_input(const std::string& path, std::ostream& err) {
  LoadedHypergraph loaded = load_hmetis(path);
  if (loaded.dropped_hyperedges > 0) {
    err << "warning: dropped " << loaded.dropped_hyperedges
        << " hyperedges with fewer than two pins\n";
  }
  return loaded;
}

void write_metrics(const std::string& path, std::span<const RunRecord> records, std::ostream& out) {
  if (path.empty()) {
    out << csv_header() << '\n';
    for (const auto& r : records) out << csv_row(r) << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path);
  file << csv_header() << '\n';
  for (const auto& r : records) file << csv_row(r) << '\n';
}

std::string format_fixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.6f", value);
  return buffer;
}

struct PartitionArgs {
  std::string input;
  std::string epsilon = "0.03";
  std::string pairs = "waves";
  std::uint64_t seed = 0;
  double time_limit = 0;
  std::uint32_t threads = 1;
  std::string output_partition;
  std::string output_metrics;
  bool timing = false;
};

int cmd_partition(const PartitionArgs& args, std::ostream& out, std::ostream& err) {
  RunSettings settings{parse_epsilon(args.epsilon), args.epsilon, args.seed, args.time_limit,
                       args.threads, args.timing};
  const std::string label = algorithm_label(args.pairs);
  parse_algorithm(label);
  const auto loaded = load_input(args.input, err);
  Outcome outcome = run_algorithm(loaded.hypergraph, fs::path(args.input).stem().string(), label,
                                  settings);
  if (outcome.partition && !args.output_partition.empty()) {
    save_partition(args.output_partition, outcome.partition->assignment);
  }
  write_metrics(args.output_metrics, std::span(&outcome.record, 1), out);
  if (outcome.exit_code != kOk) err << "error: " << outcome.record.status << '\n';
  return outcome.exit_code;
}

struct RefineArgs {
  std::string input;
  std::string epsilon = "0.03";
  std::string alpha;
  std::string initial_partition;
  bool baseline = false;
  std::uint32_t pairs = 5;
  std::uint64_t seed = 0;
  double time_limit = 0;
  std::string output_partition;
  std::string output_metrics;
  bool timing = false;
};

int cmd_refine(const RefineArgs& args, std::ostream& out, std::ostream& err) {
  const Ratio eps = parse_epsilon(args.epsilon);
  RefineConfig cfg = default_refine_config(eps);
  if (!args.alpha.empty()) cfg.alpha = parse_alpha(args.alpha);
  if (args.pairs == 0) throw UsageError("--pairs must be at least 1");
  cfg.pair_count = args.pairs;
  cfg.seed = args.seed;
  if (args.baseline == !args.initial_partition.empty()) {
    throw UsageError("exactly one of --initial-partition and --baseline is required");
  }

  const auto loaded = load_input(args.input, err);
  const Hypergraph& h = loaded.hypergraph;
  const auto start = std::chrono::steady_clock::now();
  const Bipartition initial =
      args.baseline ? baseline_partition(h, eps, args.seed)
                    : Bipartition::evaluate(h, load_partition(args.initial_partition,
                                                              h.num_vertices()),
                                            eps);

  RunRecord record;
  record.instance = fs::path(args.input).stem().string();
  record.algorithm = "rebahfc";
  record.seed = args.seed;
  record.epsilon = args.epsilon;
  record.initial_cut = initial.cut;
  int code = kOk;
  try {
    Budget budget = Budget::with_time_limit(args.time_limit);
    const RefineResult result = rebahfc(h, initial, cfg, budget);
    fill_metrics(record, result.partition);
    record.status = std::string(to_string(RunStatus::Ok));
    if (!args.output_partition.empty()) {
      save_partition(args.output_partition, result.partition.assignment);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    record.status = std::string(to_string(RunStatus::Unbalanced));
    code = kInfeasible;
  }
  if (args.timing) {
    record.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  write_metrics(args.output_metrics, std::span(&record, 1), out);
  return code;
}

struct EvaluateArgs {
  std::string input;
  std::string partition;
  std::string epsilon = "0.03";
};

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  const Ratio eps = parse_epsilon(args.epsilon);
  const auto loaded = load_input(args.input, err);
  const Hypergraph& h = loaded.hypergraph;
  const Bipartition p =
      Bipartition::evaluate(h, load_partition(args.partition, h.num_vertices()), eps);
  out << "cut " << p.cut << '\n'
      << "block0 " << p.block_sizes[0] << '\n'
      << "block1 " << p.block_sizes[1] << '\n'
      << "imbalance " << format_fixed(p.imbalance()) << '\n'
      << "max_block_size " << max_block_size(h.num_vertices(), eps) << '\n'
      << "balanced " << (p.is_balanced() ? "yes" : "no") << '\n';
  return kOk;
}

struct BenchArgs {
  std::string instances;
  std::string algorithms = "hfc-20,hfc-waves,baseline,rebahfc";
  std::uint32_t seeds = 5;
  std::uint64_t seed = 0;
  std::string epsilon = "0.03";
  double time_limit = 0;
  std::uint32_t threads = 1;
  std::string output_dir;
  bool timing = false;
};

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  const Ratio eps = parse_epsilon(args.epsilon);
  std::vector<std::string> labels;
  {
    std::string label;
    std::istringstream in(args.algorithms);
    while (std::getline(in, label, ',')) {
      if (label.empty()) continue;
      parse_algorithm(label);
      labels.push_back(label);
    }
  }
  if (labels.empty()) throw UsageError("no algorithms given");
  if (args.seeds == 0) throw UsageError("--seeds must be at least 1");

  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(args.instances)) {
    if (entry.is_regular_file() && entry.path().extension() == ".hgr") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw UsageError("no .hgr files in " + args.instances);

  std::vector<RunRecord> records;
  for (const auto& file : files) {
    const auto loaded = load_input(file.string(), err);
    for (const auto& label : labels) {
      for (std::uint32_t i = 0; i < args.seeds; ++i) {
        RunSettings settings{eps, args.epsilon, args.seed + i, args.time_limit, args.threads,
                             args.timing};
        records.push_back(
            run_algorithm(loaded.hypergraph, file.stem().string(), label, settings).record);
      }
    }
  }

  fs::create_directories(args.output_dir);
  const fs::path dir(args.output_dir);
  write_metrics((dir / "runs.csv").string(), records, out);
  {
    std::ofstream best(dir / "best.csv");
    best << "instance,best_cut\n";
    for (const auto& [instance, cut] : best_cuts(records)) {
      best << instance << ',';
      if (cut) best << *cut;
      best << '\n';
    }
  }
  {
    std::ofstream ratios(dir / "ratios.csv");
    ratios << "algorithm,instance,ratio\n";
    for (const auto& row : performance_ratios(records)) {
      ratios << row.algorithm << ',' << row.instance << ',' << format_fixed(row.ratio) << '\n';
    }
  }
  if (args.timing) {
    std::ofstream runtime(dir / "runtime.csv");
    runtime << "algorithm,geometric_mean_seconds\n";
    for (const auto& [algorithm, seconds] : geometric_mean_times(records)) {
      runtime << algorithm << ',' << format_fixed(seconds) << '\n';
    }
  }
  out << records.size() << " runs on " << files.size() << " instances written to "
      << args.output_dir << '\n';
  return kOk;
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Balanced hypergraph bipartitioning with incremental max-flow"};
  app.name("hfc");
  app.require_subcommand(1);

  PartitionArgs partition;
  auto* p = app.add_subcommand("partition", "Compute a balanced bipartition");
  p->add_option("--input", partition.input, "Hypergraph in hMETIS format")->required();
  p->add_option("--epsilon", partition.epsilon, "Allowed imbalance as a decimal")
      ->capture_default_str();
  p->add_option("--pairs", partition.pairs, "Number of random terminal pairs, or 'waves'")
      ->capture_default_str();
  p->add_option("--seed", partition.seed)->capture_default_str();
  p->add_option("--time-limit", partition.time_limit, "Seconds, 0 for none")->capture_default_str();
  p->add_option("--threads", partition.threads)->capture_default_str();
  p->add_option("--output-partition", partition.output_partition);
  p->add_option("--output-metrics", partition.output_metrics, "CSV file, stdout if omitted");
  p->add_flag("--timing", partition.timing, "Record wall time in the metrics");

  RefineArgs refine;
  auto* r = app.add_subcommand("refine", "Improve or rebalance a bipartition");
  r->add_option("--input", refine.input)->required();
  r->add_option("--epsilon", refine.epsilon)->capture_default_str();
  r->add_option("--alpha", refine.alpha, "Terminal fraction per block, default by epsilon");
  auto* initial = r->add_option("--initial-partition", refine.initial_partition);
  auto* baseline = r->add_flag("--baseline", refine.baseline, "Start from the built-in partitioner");
  initial->excludes(baseline);
  r->add_option("--pairs", refine.pairs, "Interleaved runs")->capture_default_str();
  r->add_option("--seed", refine.seed)->capture_default_str();
  r->add_option("--time-limit", refine.time_limit)->capture_default_str();
  r->add_option("--output-partition", refine.output_partition);
  r->add_option("--output-metrics", refine.output_metrics);
  r->add_flag("--timing", refine.timing);

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Run algorithms on a directory of instances");
  b->add_option("--instances", bench.instances)->required()->check(CLI::ExistingDirectory);
  b->add_option("--algorithms", bench.algorithms, "Comma-separated: hfc-<q>, hfc-waves, baseline, rebahfc")
      ->capture_default_str();
  b->add_option("--seeds", bench.seeds, "Runs per instance and algorithm")->capture_default_str();
  b->add_option("--seed", bench.seed, "First seed")->capture_default_str();
  b->add_option("--epsilon", bench.epsilon)->capture_default_str();
  b->add_option("--time-limit", bench.time_limit)->capture_default_str();
  b->add_option("--threads", bench.threads)->capture_default_str();
  b->add_option("--output-dir", bench.output_dir)->required();
  b->add_flag("--timing", bench.timing);

  EvaluateArgs evaluate;
  auto* e = app.add_subcommand("evaluate", "Report metrics of a partition file");
  e->add_option("--input", evaluate.input)->required();
  e->add_option("--partition", evaluate.partition)->required();
  e->add_option("--epsilon", evaluate.epsilon)->capture_default_str();

  std::vector<std::string> argv_storage{"hfc"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& error) {
    const int code = app.exit(error, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*p) return cmd_partition(partition, out, err);
    if (*r) return cmd_refine(refine, out, err);
    if (*b) return cmd_bench(bench, out, err);
    return cmd_evaluate(evaluate, out, err);
  } catch (const UsageError& error) {
    err << "error: " << error.what() << '\n';
    return kUsage;
  } catch (const InputError& error) {
    err << "error: " << error.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& error) {
    err << "error: " << error.what() << '\n';
    return kUsage;
  } catch (const std::filesystem::filesystem_error& error) {
    err << "error: " << error.what() << '\n';
    return kUsage;
  }
}

}  // namespace hfc::cli
