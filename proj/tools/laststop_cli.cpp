// Command-line front end: threshold computation, simulation, path dumps,
// the bandit demo, and the self-verification suite.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "laststop/laststop.hpp"

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20260816;

// Every report carries the flags that produced it.
json config_echo(const std::string& subcommand) {
  json config;
  config["subcommand"] = subcommand;
  return config;
}

void print_csv_config(const json& config) {
  for (const auto& [key, value] : config.items()) {
    if (value.is_string())
      std::printf("# %s=%s\n", key.c_str(), value.get<std::string>().c_str());
    else
      std::printf("# %s=%s\n", key.c_str(), value.dump().c_str());
  }
}

void print_json_report(json report) { std::printf("%s\n", report.dump(2).c_str()); }

std::vector<double> load_probabilities(const std::string& input,
                                       const std::vector<double>& inline_values,
                                       std::vector<int>* line_numbers) {
  if (!inline_values.empty() && !input.empty())
    throw laststop::validation_error("give probabilities either inline or by file, not both");
  if (!inline_values.empty()) return inline_values;
  if (input.empty())
    throw laststop::validation_error("no probabilities given; use --input or --p");
  if (input == "-") return laststop::read_probability_csv(std::cin, line_numbers);
  return laststop::read_probability_csv_file(input, line_numbers);
}

// Range errors name the source line when the values came from a file.
laststop::OddsProblem build_problem(const std::vector<double>& values,
                                    const std::vector<int>& line_numbers) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !(values[i] < 1.0)) {
      std::string where = i < line_numbers.size()
                              ? "line " + std::to_string(line_numbers[i])
                              : "value " + std::to_string(i + 1);
      throw laststop::validation_error(where + ": probability " +
                                       laststop::format_double(values[i]) +
                                       " must lie in [0, 1)");
    }
  }
  return laststop::OddsProblem(values);
}

// ---- odds -----------------------------------------------------------------

struct OddsOpts {
  std::string input;
  std::vector<double> inline_p;
  std::string output = "json";
};

int run_odds(const OddsOpts& opts) {
  std::vector<int> lines;
  std::vector<double> values = load_probabilities(opts.input, opts.inline_p, &lines);
  laststop::OddsProblem problem = build_problem(values, lines);
  laststop::ThresholdResult result = laststop::solve(problem);

  json config = config_echo("odds");
  config["input"] = opts.input.empty() ? "inline" : opts.input;
  config["n"] = problem.size();
  config["output"] = opts.output;
  if (opts.output == "csv") {
    print_csv_config(config);
    std::printf("n,s,s_prime,tail_odds_at_s,win_probability,tie_diagnostic\n");
    std::printf("%d,%d,%d,%s,%s,%d\n", problem.size(), result.s, result.s_prime,
                laststop::format_double(result.tail_odds_at_s).c_str(),
                laststop::format_double(result.win_probability).c_str(),
                result.tie_diagnostic ? 1 : 0);
  } else {
    json report = laststop::threshold_result_to_json(result);
    report["n"] = problem.size();
    report["config"] = config;
    print_json_report(report);
  }
  return 0;
}

// ---- odds-delayed ---------------------------------------------------------

struct DelayedOpts {
  std::string input;
  std::vector<double> inline_p;
  int w = 1;
  std::string output = "json";
};

int run_odds_delayed(const DelayedOpts& opts) {
  std::vector<int> lines;
  std::vector<double> values = load_probabilities(opts.input, opts.inline_p, &lines);
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0) || !(values[i] < 1.0)) {
      std::string where = i < lines.size() ? "line " + std::to_string(lines[i])
                                           : "value " + std::to_string(i + 1);
      throw laststop::validation_error(where + ": probability must lie in [0, 1)");
    }
  }
  int n = opts.w - 1 + static_cast<int>(values.size());
  laststop::DelayedOddsProblem problem(n, opts.w, values);
  laststop::DelayedRule rule = laststop::delayed_threshold(problem);

  json config = config_echo("odds-delayed");
  config["input"] = opts.input.empty() ? "inline" : opts.input;
  config["n"] = n;
  config["w"] = opts.w;
  config["output"] = opts.output;
  if (opts.output == "csv") {
    print_csv_config(config);
    std::printf("n,w,threshold,tail_odds_past_threshold\n");
    std::printf("%d,%d,%d,%s\n", n, opts.w, rule.threshold,
                laststop::format_double(rule.tail_odds_past_threshold).c_str());
  } else {
    json report;
    report["n"] = n;
    report["w"] = opts.w;
    report["threshold"] = rule.threshold;
    report["tail_odds_past_threshold"] = rule.tail_odds_past_threshold;
    report["config"] = config;
    print_json_report(report);
  }
  return 0;
}

// ---- continuous -----------------------------------------------------------

struct ContinuousOpts {
  std::string input;
  double from = -1.0;  // negative means the support start
  std::string output = "json";
};

int run_continuous(const ContinuousOpts& opts) {
  if (opts.input.empty())
    throw laststop::validation_error("an intensity JSON file is required; use --input");
  laststop::IntensityFunction intensity =
      opts.input == "-" ? laststop::intensity_from_json(json::parse(std::cin))
                        : laststop::intensity_from_json_file(opts.input);
  double from = opts.from < 0.0 ? intensity.support_begin() : opts.from;
  if (from < 0.0 || from >= 1.0)
    throw laststop::validation_error("--from must lie in [0, 1)");
  double t_star = laststop::continuous_threshold(intensity, from);

  json config = config_echo("continuous");
  config["input"] = opts.input;
  config["from"] = from;
  config["output"] = opts.output;

  json diagnostics = json::array();
  for (int cells : {10, 100, 1000}) {
    json row;
    row["cells"] = cells;
    double width = (1.0 - from) / static_cast<double>(cells);
    row["cell_width"] = width;
    try {
      laststop::PartitionOddsSum sum = laststop::partition_odds_sum(intensity, from, cells);
      double threshold_time = laststop::discretized_threshold_time(intensity, from, cells);
      row["threshold_time"] = threshold_time;
      row["odds_sum"] = sum.odds_sum;
      row["max_cell_prob"] = sum.max_cell_prob;
      row["gap_to_t_star"] = std::fabs(threshold_time - t_star);
      row["within_one_cell"] = std::fabs(threshold_time - t_star) <= width + 1e-12;
    } catch (const laststop::numerical_error& e) {
      row["error"] = e.what();
    }
    diagnostics.push_back(row);
  }

  if (opts.output == "csv") {
    config["t_star"] = t_star;
    config["tail_integral_at_t_star"] = intensity.tail_integral(t_star);
    print_csv_config(config);
    std::printf("cells,cell_width,threshold_time,odds_sum,max_cell_prob,gap_to_t_star,within_one_cell,error\n");
    for (const auto& row : diagnostics) {
      if (row.contains("error")) {
        std::printf("%d,%s,,,,,,\"%s\"\n", row["cells"].get<int>(),
                    laststop::format_double(row["cell_width"].get<double>()).c_str(),
                    row["error"].get<std::string>().c_str());
      } else {
        std::printf("%d,%s,%s,%s,%s,%s,%d,\n", row["cells"].get<int>(),
                    laststop::format_double(row["cell_width"].get<double>()).c_str(),
                    laststop::format_double(row["threshold_time"].get<double>()).c_str(),
                    laststop::format_double(row["odds_sum"].get<double>()).c_str(),
                    laststop::format_double(row["max_cell_prob"].get<double>()).c_str(),
                    laststop::format_double(row["gap_to_t_star"].get<double>()).c_str(),
                    row["within_one_cell"].get<bool>() ? 1 : 0);
      }
    }
  } else {
    json report;
    report["intensity"] = laststop::intensity_to_json(intensity);
    report["from"] = from;
    report["t_star"] = t_star;
    report["tail_integral_at_t_star"] = intensity.tail_integral(t_star);
    report["diagnostics"] = diagnostics;
    report["config"] = config;
    print_json_report(report);
  }
  return 0;
}

// ---- thresholds -----------------------------------------------------------

struct ThresholdsOpts {
  long n_max = 50;
  std::string output = "csv";
};

int run_thresholds(const ThresholdsOpts& opts) {
  if (opts.n_max < 1) throw laststop::validation_error("--n must be at least 1");
  std::vector<laststop::ThresholdTableRow> rows = laststop::threshold_table(opts.n_max);

  json config = config_echo("thresholds");
  config["n"] = opts.n_max;
  config["output"] = opts.output;
  if (opts.output == "json") {
    json report;
    json list = json::array();
    for (const auto& row : rows) {
      json entry;
      entry["n"] = row.n;
      entry["x_n"] = row.x_n;
      entry["p_at_x_n"] = row.p_at_xn;
      entry["p_at_inv_e"] = row.p_at_inv_e;
      list.push_back(entry);
    }
    report["rows"] = list;
    report["config"] = config;
    print_json_report(report);
  } else {
    print_csv_config(config);
    std::printf("n,x_n,p_at_x_n,p_at_inv_e\n");
    for (const auto& row : rows)
      std::printf("%ld,%s,%s,%s\n", row.n, laststop::format_double(row.x_n).c_str(),
                  laststop::format_double(row.p_at_xn).c_str(),
                  laststop::format_double(row.p_at_inv_e).c_str());
  }
  return 0;
}

// ---- simulate -------------------------------------------------------------

struct SimulateOpts {
  std::string strategy;
  double x = -1.0;  // negative means unset
  long n = 10;
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  std::string output = "json";
};

int run_simulate(const SimulateOpts& opts) {
  if (opts.n < 1) throw laststop::validation_error("--n must be at least 1");
  laststop::SimulationConfig config;
  config.trials = opts.trials;
  config.n = static_cast<int>(opts.n);
  config.master_seed = opts.seed;
  config.workers = opts.workers > 0 ? opts.workers : laststop::default_workers();

  // The strategy is either a wait fraction ("x=0.36788") or a one-based
  // index cutoff ("cutoff=4").
  bool use_cutoff = false;
  int cutoff = 0;
  double x = opts.x;
  std::string strategy_label;
  if (!opts.strategy.empty()) {
    std::size_t eq = opts.strategy.find('=');
    std::string kind = opts.strategy.substr(0, eq == std::string::npos ? opts.strategy.size() : eq);
    std::string value = eq == std::string::npos ? "" : opts.strategy.substr(eq + 1);
    if (kind == "x" && !value.empty()) {
      x = laststop::parse_double(value, 0);
      strategy_label = "x=" + laststop::format_double(x);
    } else if (kind == "cutoff" && !value.empty()) {
      try {
        std::size_t used = 0;
        long parsed = std::stol(value, &used);
        if (used != value.size() || parsed < 1 || parsed > opts.n + 1)
          throw std::invalid_argument("range");
        cutoff = static_cast<int>(parsed);
      } catch (const std::exception&) {
        throw laststop::validation_error("cutoff must be an integer in 1..n+1");
      }
      use_cutoff = true;
      strategy_label = "cutoff=" + std::to_string(cutoff);
    } else {
      throw laststop::validation_error(
          "--strategy must look like x=<fraction> or cutoff=<index>");
    }
  } else {
    if (x < 0.0) x = std::exp(-1.0);
    strategy_label = "x=" + laststop::format_double(x);
  }
  if (!use_cutoff && (x < 0.0 || x > 1.0))
    throw laststop::validation_error("the wait fraction must lie in [0, 1]");

  laststop::SimulationReport report = use_cutoff
                                          ? laststop::evaluate_index_rule(config, cutoff)
                                          : laststop::evaluate_x_strategy(config, x);

  json echo = config_echo("simulate");
  echo["strategy"] = strategy_label;
  echo["n"] = opts.n;
  echo["trials"] = opts.trials;
  echo["seed"] = opts.seed;
  echo["workers"] = config.workers;
  echo["output"] = opts.output;

  double closed_form = use_cutoff ? -1.0 : laststop::success_probability(opts.n, x);
  if (opts.output == "csv") {
    print_csv_config(echo);
    std::printf("estimate,std_error,trials,success,wrong_pick,no_pick%s\n",
                use_cutoff ? "" : ",closed_form");
    std::printf("%s,%s,%llu,%llu,%llu,%llu",
                laststop::format_double(report.estimate).c_str(),
                laststop::format_double(report.std_error).c_str(),
                static_cast<unsigned long long>(report.trials),
                static_cast<unsigned long long>(report.outcome_counts.success),
                static_cast<unsigned long long>(report.outcome_counts.wrong_pick),
                static_cast<unsigned long long>(report.outcome_counts.no_pick));
    if (!use_cutoff) std::printf(",%s", laststop::format_double(closed_form).c_str());
    std::printf("\n");
  } else {
    json out;
    out["estimate"] = report.estimate;
    out["std_error"] = report.std_error;
    out["trials"] = report.trials;
    out["outcome_counts"] = {{"success", report.outcome_counts.success},
                             {"wrong_pick", report.outcome_counts.wrong_pick},
                             {"no_pick", report.outcome_counts.no_pick}};
    if (!use_cutoff) out["closed_form"] = closed_form;
    out["config"] = echo;
    print_json_report(out);
  }
  return 0;
}

// ---- pi-process -----------------------------------------------------------

struct PiProcessOpts {
  double t1 = 0.05;
  long k = 1;
  std::uint64_t paths = 10;
  std::uint64_t seed = kDefaultSeed;
};

int run_pi_process(const PiProcessOpts& opts) {
  if (!(opts.t1 > 0.0) || !(opts.t1 < 1.0))
    throw laststop::validation_error("--t1 must lie in (0, 1)");
  if (opts.k < 1) throw laststop::validation_error("--k must be at least 1");

  // Line-oriented output: one JSON object per path on stdout, config on
  // stderr so the stream stays filter-friendly.
  json config = config_echo("pi-process");
  config["t1"] = opts.t1;
  config["k"] = opts.k;
  config["paths"] = opts.paths;
  config["seed"] = opts.seed;
  std::fprintf(stderr, "%s\n", config.dump().c_str());

  for (std::uint64_t index = 0; index < opts.paths; ++index) {
    laststop::Xoshiro256 rng(laststop::derive_stream_seed(opts.seed, index));
    laststop::PiProcessPath path =
        laststop::simulate_pi_process_from(opts.t1, opts.k, rng);
    laststop::RecordMask mask = laststop::thin_records(path, rng);
    json line;
    line["seed_time"] = path.seed_time;
    json jumps = json::array();
    for (double t : path.jump_times) jumps.push_back(t);
    json records = json::array();
    if (mask.retained.at(0)) records.push_back(path.seed_time);
    for (std::size_t j = 0; j < path.jump_times.size(); ++j)
      if (mask.retained.at(j + 1)) records.push_back(path.jump_times[j]);
    line["jumps"] = jumps;
    line["records"] = records;
    std::printf("%s\n", line.dump().c_str());
  }
  return 0;
}

// ---- records --------------------------------------------------------------

struct RecordsOpts {
  long n = 0;   // record-probability table size
  long k = -1;  // prior candidate count
  long j = -1;  // further arrivals
  double u = -1.0;
  std::string output = "json";
};

int run_records(const RecordsOpts& opts) {
  json config = config_echo("records");
  config["output"] = opts.output;
  bool table_mode = opts.n > 0 || (opts.k < 0 && opts.j < 0 && opts.u < 0.0);
  long n = opts.n > 0 ? opts.n : 10;

  json report;
  if (table_mode) {
    config["n"] = n;
    json rows = json::array();
    for (long position = 1; position <= n; ++position) {
      json row;
      row["position"] = position;
      row["probability"] = 1.0 / static_cast<double>(position);
      rows.push_back(row);
    }
    report["record_probabilities"] = rows;
  }
  if (opts.k >= 0 && opts.j >= 0) {
    config["k"] = opts.k;
    config["j"] = opts.j;
    report["expected_records"] =
        laststop::expected_records_in_interval(opts.k, opts.j);
  }
  if (opts.u >= 0.0) {
    if (opts.k < 1)
      throw laststop::validation_error("--u needs a prior count --k of at least 1");
    config["k"] = opts.k;
    config["u"] = opts.u;
    report["record_intensity"] = laststop::record_intensity(opts.k, opts.u);
  }

  if (opts.output == "csv") {
    print_csv_config(config);
    if (table_mode) {
      std::printf("position,probability\n");
      for (long position = 1; position <= n; ++position)
        std::printf("%ld,%s\n", position,
                    laststop::format_double(1.0 / static_cast<double>(position)).c_str());
    }
    if (report.contains("expected_records"))
      std::printf("expected_records,%s\n",
                  laststop::format_double(report["expected_records"].get<double>()).c_str());
    if (report.contains("record_intensity"))
      std::printf("record_intensity,%s\n",
                  laststop::format_double(report["record_intensity"].get<double>()).c_str());
  } else {
    report["config"] = config;
    print_json_report(report);
  }
  return 0;
}

// ---- bandit ---------------------------------------------------------------

struct BanditOpts {
  std::string input;
  std::vector<double> deltas;
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  std::string model = "expected";
  std::string output = "json";
};

int run_bandit(const BanditOpts& opts) {
  laststop::TwoLineInstance instance =
      opts.input.empty()
          ? laststop::TwoLineInstance(std::vector<double>(10, 0.2),
                                      std::vector<double>(10, 0.8))
          : (opts.input == "-" ? laststop::read_two_line_csv(std::cin)
                               : laststop::read_two_line_csv_file(opts.input));
  std::vector<double> deltas = opts.deltas.empty() ? std::vector<double>{0.1} : opts.deltas;
  for (double delta : deltas)
    if (delta < 0.0 || delta > 1.0)
      throw laststop::validation_error("--delta must lie in [0, 1]");

  laststop::RewardModel model;
  if (opts.model == "expected")
    model = laststop::RewardModel::expected;
  else if (opts.model == "independent")
    model = laststop::RewardModel::sampled_independent;
  else if (opts.model == "comonotone")
    model = laststop::RewardModel::sampled_comonotone;
  else
    throw laststop::validation_error("--model must be expected, independent, or comonotone");

  unsigned workers = opts.workers > 0 ? opts.workers : laststop::default_workers();
  int n = instance.size();
  double divergence = laststop::l_divergence(instance, n);

  json config = config_echo("bandit");
  config["input"] = opts.input.empty() ? "built-in" : opts.input;
  config["delta"] = deltas;
  config["trials"] = opts.trials;
  config["seed"] = opts.seed;
  config["workers"] = workers;
  config["model"] = opts.model;
  config["output"] = opts.output;

  json results = json::array();
  if (deltas.size() == 1) {
    laststop::GapEstimate gap = laststop::simulate_red_light(
        instance, deltas.front(), opts.trials, opts.seed, model, workers);
    json row;
    row["delta"] = deltas.front();
    row["gap"] = gap.gap;
    row["std_error"] = gap.std_error;
    row["bound"] = deltas.front() * divergence;
    results.push_back(row);
  } else {
    // A shared blocking draw per step makes the estimated gaps comparable
    // across the grid; the expected-reward bookkeeping is implied.
    if (model != laststop::RewardModel::expected)
      throw laststop::validation_error("grid runs support only --model expected");
    auto gaps =
        laststop::simulate_red_light_grid(instance, deltas, opts.trials, opts.seed, workers);
    for (std::size_t g = 0; g < deltas.size(); ++g) {
      json row;
      row["delta"] = deltas[g];
      row["gap"] = gaps[g].gap;
      row["std_error"] = gaps[g].std_error;
      row["bound"] = deltas[g] * divergence;
      results.push_back(row);
    }
  }

  if (opts.output == "csv") {
    print_csv_config(config);
    std::printf("delta,gap,std_error,bound\n");
    for (const auto& row : results)
      std::printf("%s,%s,%s,%s\n",
                  laststop::format_double(row["delta"].get<double>()).c_str(),
                  laststop::format_double(row["gap"].get<double>()).c_str(),
                  laststop::format_double(row["std_error"].get<double>()).c_str(),
                  laststop::format_double(row["bound"].get<double>()).c_str());
  } else {
    json report;
    report["instance"] = {{"steps", n},
                          {"accumulated_max", laststop::accumulated_max(instance, n)},
                          {"l_divergence", divergence}};
    report["results"] = results;
    report["config"] = config;
    print_json_report(report);
  }
  return 0;
}

// ---- verify ---------------------------------------------------------------

struct VerifyCliOpts {
  std::string property;
  std::uint64_t trials = 0;
  double sigma = 0.0;
  double tolerance = 1e-12;
  std::uint64_t seed = kDefaultSeed;
  unsigned workers = 0;
  std::string output = "text";
};

int run_verify(const VerifyCliOpts& opts) {
  laststop::VerifyOptions options;
  options.trials = opts.trials;
  options.sigma = opts.sigma;
  options.tolerance = opts.tolerance;
  options.seed = opts.seed;
  options.workers = opts.workers;
  options.filter = opts.property;

  std::vector<laststop::PropertyResult> results = laststop::run_verification(options);
  if (!opts.property.empty() && results.empty())
    throw laststop::validation_error("no property matches '" + opts.property + "'");

  int passed = 0;
  int failed = 0;
  int inconclusive = 0;
  for (const auto& result : results) {
    if (result.status == laststop::PropertyStatus::pass)
      ++passed;
    else if (result.status == laststop::PropertyStatus::fail)
      ++failed;
    else
      ++inconclusive;
  }

  json config = config_echo("verify");
  config["property"] = opts.property.empty() ? "all" : opts.property;
  config["trials"] = opts.trials == 0 ? json("default") : json(opts.trials);
  config["sigma"] = opts.sigma == 0.0 ? json("default") : json(opts.sigma);
  config["tolerance"] = opts.tolerance;
  config["seed"] = opts.seed;
  config["workers"] = opts.workers == 0 ? laststop::default_workers() : opts.workers;

  if (opts.output == "json") {
    json report;
    json list = json::array();
    for (const auto& result : results) {
      json row;
      row["name"] = result.name;
      row["status"] = result.status == laststop::PropertyStatus::pass ? "pass"
                      : result.status == laststop::PropertyStatus::fail ? "fail"
                                                                        : "inconclusive";
      row["detail"] = result.detail;
      list.push_back(row);
    }
    report["results"] = list;
    report["summary"] = {{"passed", passed}, {"failed", failed},
                         {"inconclusive", inconclusive}};
    report["config"] = config;
    print_json_report(report);
  } else if (opts.output == "csv") {
    print_csv_config(config);
    std::printf("name,status,detail\n");
    for (const auto& result : results) {
      const char* status = result.status == laststop::PropertyStatus::pass ? "pass"
                           : result.status == laststop::PropertyStatus::fail
                               ? "fail"
                               : "inconclusive";
      std::printf("%s,%s,\"%s\"\n", result.name.c_str(), status, result.detail.c_str());
    }
  } else {
    print_csv_config(config);
    for (const auto& result : results) {
      const char* status = result.status == laststop::PropertyStatus::pass ? "PASS"
                           : result.status == laststop::PropertyStatus::fail
                               ? "FAIL"
                               : "INCONCLUSIVE";
      std::printf("%-13s %-28s %s\n", status, result.name.c_str(), result.detail.c_str());
    }
    std::printf("summary: %d passed, %d failed, %d inconclusive\n", passed, failed,
                inconclusive);
  }
  return failed > 0 ? 3 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal stopping toolkit: odds-algorithm thresholds, best-choice "
               "strategies, record processes, and a two-line bandit demo"};
  app.require_subcommand(1);

  OddsOpts odds_opts;
  CLI::App* odds = app.add_subcommand("odds", "Last-success stopping rule for a "
                                              "sequence of independent events");
  odds->add_option("--input", odds_opts.input,
                   "CSV of probabilities, one per line ('-' for stdin)");
  odds->add_option("--p", odds_opts.inline_p, "inline probabilities (repeatable)");
  odds->add_option("--output", odds_opts.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  DelayedOpts delayed_opts;
  CLI::App* delayed = app.add_subcommand(
      "odds-delayed", "Stopping rule when observation starts at index w");
  delayed->add_option("--input", delayed_opts.input,
                      "CSV of conditional probabilities for indices w..n");
  delayed->add_option("--p", delayed_opts.inline_p, "inline probabilities (repeatable)");
  delayed->add_option("--w", delayed_opts.w, "first observable index (default 1)")
      ->check(CLI::PositiveNumber);
  delayed->add_option("--output", delayed_opts.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  ContinuousOpts continuous_opts;
  CLI::App* continuous = app.add_subcommand(
      "continuous", "Threshold time for an inhomogeneous arrival intensity");
  continuous->add_option("--input", continuous_opts.input,
                         "intensity JSON file ('-' for stdin)");
  continuous->add_option("--from", continuous_opts.from,
                         "earliest stopping time (default: support start)");
  continuous->add_option("--output", continuous_opts.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  ThresholdsOpts thresholds_opts;
  CLI::App* thresholds = app.add_subcommand(
      "thresholds", "Optimal wait fractions and success probabilities up to a horizon");
  thresholds->add_option("--n", thresholds_opts.n_max, "largest horizon (default 50)");
  thresholds->add_option("--output", thresholds_opts.output, "csv or json")
      ->check(CLI::IsMember({"json", "csv"}));

  SimulateOpts simulate_opts;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Monte Carlo evaluation of a best-choice strategy");
  simulate->add_option("--strategy", simulate_opts.strategy,
                       "x=<fraction> or cutoff=<index> (default x=1/e)");
  simulate->add_option("--x", simulate_opts.x, "wait fraction shorthand");
  simulate->add_option("--n", simulate_opts.n, "number of candidates (default 10)");
  simulate->add_option("--trials", simulate_opts.trials, "trial count (default 100000)");
  simulate->add_option("--seed", simulate_opts.seed, "master seed");
  simulate->add_option("--workers", simulate_opts.workers, "worker threads (0 = auto)");
  simulate->add_option("--output", simulate_opts.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  PiProcessOpts pi_opts;
  CLI::App* pi = app.add_subcommand(
      "pi-process", "Dump proportional-increments paths as JSON lines");
  pi->add_option("--t1", pi_opts.t1, "seed time in (0,1) (default 0.05)");
  pi->add_option("--k", pi_opts.k, "candidate count at the seed time (default 1)");
  pi->add_option("--paths", pi_opts.paths, "number of paths (default 10)");
  pi->add_option("--seed", pi_opts.seed, "master seed");

  RecordsOpts records_opts;
  CLI::App* records = app.add_subcommand(
      "records", "Record probabilities, interval expectations, and intensities");
  records->add_option("--n", records_opts.n, "record-probability table size");
  records->add_option("--k", records_opts.k, "candidates seen so far");
  records->add_option("--j", records_opts.j, "further arrivals in the interval");
  records->add_option("--u", records_opts.u, "time at which to evaluate the intensity");
  records->add_option("--output", records_opts.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  BanditOpts bandit_opts;
  CLI::App* bandit = app.add_subcommand(
      "bandit", "Loss from red-light blocking on a two-line bandit");
  bandit->add_option("--input", bandit_opts.input,
                     "CSV with columns p1,p2 ('-' for stdin; default: built-in demo)");
  bandit->add_option("--delta", bandit_opts.deltas,
                     "blocking probability (repeat for a shared-draw grid)");
  bandit->add_option("--trials", bandit_opts.trials, "trial count (default 100000)");
  bandit->add_option("--seed", bandit_opts.seed, "master seed");
  bandit->add_option("--workers", bandit_opts.workers, "worker threads (0 = auto)");
  bandit->add_option("--model", bandit_opts.model,
                     "reward bookkeeping: expected, independent, or comonotone");
  bandit->add_option("--output", bandit_opts.output, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));

  VerifyCliOpts verify_opts;
  CLI::App* verify = app.add_subcommand(
      "verify", "Run the self-verification property suite");
  verify->add_option("--property", verify_opts.property,
                     "run only properties whose name contains this");
  verify->add_option("--trials", verify_opts.trials,
                     "override statistical trial counts (0 = per-property default)");
  verify->add_option("--sigma", verify_opts.sigma,
                     "override the z multiplier (0 = per-check default)");
  verify->add_option("--tolerance", verify_opts.tolerance,
                     "analytic comparison tolerance (default 1e-12)");
  verify->add_option("--seed", verify_opts.seed, "master seed");
  verify->add_option("--workers", verify_opts.workers, "worker threads (0 = auto)");
  verify->add_option("--output", verify_opts.output, "text, json, or csv")
      ->check(CLI::IsMember({"text", "json", "csv"}));

  int exit_code = 0;
  odds->callback([&]() { exit_code = run_odds(odds_opts); });
  delayed->callback([&]() { exit_code = run_odds_delayed(delayed_opts); });
  continuous->callback([&]() { exit_code = run_continuous(continuous_opts); });
  thresholds->callback([&]() { exit_code = run_thresholds(thresholds_opts); });
  simulate->callback([&]() { exit_code = run_simulate(simulate_opts); });
  pi->callback([&]() { exit_code = run_pi_process(pi_opts); });
  records->callback([&]() { exit_code = run_records(records_opts); });
  bandit->callback([&]() { exit_code = run_bandit(bandit_opts); });
  verify->callback([&]() { exit_code = run_verify(verify_opts); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const laststop::validation_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const laststop::numerical_error& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return exit_code;
}
