// gridlogic: generate, solve, profile, and grade logic grid puzzles, and run
// model evaluations against a chat-completions endpoint.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gridlogic/brute_force.hpp"
#include "gridlogic/catalog_io.hpp"
#include "gridlogic/complexity.hpp"
#include "gridlogic/dataset.hpp"
#include "gridlogic/errors.hpp"
#include "gridlogic/eval/chat_client.hpp"
#include "gridlogic/eval/harness.hpp"
#include "gridlogic/pipeline.hpp"
#include "gridlogic/render.hpp"
#include "gridlogic/solver.hpp"

namespace gl = gridlogic;

namespace {

enum Exit : int { kOk = 0, kUsage = 2, kIo = 3, kInvalid = 4, kNetwork = 5 };

struct Globals {
  std::uint64_t seed = 0;
  bool verbose = false;
};

void log(const Globals& g, const std::string& msg) {
  if (g.verbose) std::cerr << "[gridlogic] " << msg << '\n';
}

std::size_t default_jobs() { return std::max(1U, std::thread::hardware_concurrency()); }

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw gl::IoError("cannot open " + path + " for writing");
    path_ = path;
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }
  void close() {
    if (!file_) return;
    file_->close();
    if (!*file_) throw gl::IoError("write to " + path_ + " failed");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::string path_;
};

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw gl::IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A .jsonl dataset, a single dataset record, or a bare puzzle object.
std::vector<gl::Puzzle> load_puzzles(const std::string& path) {
  if (ends_with(path, ".jsonl")) {
    std::vector<gl::Puzzle> out;
    for (const auto& r : gl::read_dataset(path)) out.push_back(r.puzzle());
    return out;
  }
  auto j = gl::ojson::parse(read_file(path), nullptr, false);
  if (j.is_discarded()) throw gl::SchemaError(path + ": malformed JSON");
  try {
    if (j.is_object() && j.contains("puzzle_text")) return {gl::record_from_json(j).puzzle()};
    return {gl::puzzle_from_json(j, false)};
  } catch (const nlohmann::json::exception& e) {
    throw gl::SchemaError(path + ": " + e.what());
  }
}

gl::Puzzle select_puzzle(const std::vector<gl::Puzzle>& puzzles, const std::string& id, const std::string& path) {
  if (!id.empty()) {
    for (const auto& p : puzzles) {
      if (p.id == id) return p;
    }
    throw gl::ConsistencyError("no puzzle with id " + id + " in " + path);
  }
  if (puzzles.size() != 1) throw gl::ConfigError(path + " holds several puzzles; pick one with --id");
  return puzzles.front();
}

void print_grid(std::ostream& out, const gl::SolutionGrid& grid) {
  std::vector<std::vector<std::string>> table;
  table.push_back({""});
  for (const auto& a : grid.attributes()) table.back().push_back(a);
  for (int k = 1; k <= grid.n_houses(); ++k) {
    std::vector<std::string> line{gl::house_key(k)};
    for (std::size_t a = 0; a < grid.n_attributes(); ++a) line.push_back(grid.at(k, a));
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  for (const auto& line : table) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      text += (i == 0 ? "" : " | ") + line[i] + std::string(width[i] - line[i].size(), ' ');
    }
    while (!text.empty() && text.back() == ' ') text.pop_back();
    out << text << '\n';
  }
}

std::vector<std::vector<std::string>> grid_key(const gl::SolutionGrid& g) {
  std::vector<std::vector<std::string>> rows;
  for (std::size_t a = 0; a < g.n_attributes(); ++a) rows.push_back(g.row(a));
  return rows;
}

std::string fixed(double v, int digits) {
  std::ostringstream ss;
  ss << std::fixed << std::setprecision(digits) << v;
  return ss.str();
}

// ---- generate ---------------------------------------------------------------

struct GenerateOpts {
  std::string sizes = "2x2..6x6";
  std::size_t per_size = 40;
  std::string output = "-";
  std::size_t jobs = default_jobs();
  std::size_t runs = gl::kDefaultProfileRuns;
  std::string catalog;
};

int cmd_generate(const Globals& g, const GenerateOpts& o) {
  gl::DatasetConfig cfg;
  cfg.sizes = gl::parse_sizes(o.sizes);
  cfg.per_size = o.per_size;
  cfg.seed = g.seed;
  cfg.jobs = o.jobs;
  cfg.profile_runs = o.runs;
  if (!o.catalog.empty()) cfg.catalog = gl::load_catalog(o.catalog);
  if (cfg.per_size == 0) throw gl::ConfigError("--per-size must be at least 1");

  const auto start = std::chrono::steady_clock::now();
  log(g, "generating " + std::to_string(cfg.sizes.size() * cfg.per_size) + " puzzles with " +
             std::to_string(cfg.jobs) + " jobs");
  const auto records = gl::generate_dataset(cfg);
  Output out(o.output);
  gl::write_dataset(out.stream(), records);
  out.close();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  log(g, "wrote " + std::to_string(records.size()) + " records in " + fixed(secs, 1) + " s");
  return kOk;
}

// ---- solve --------------------------------------------------------------------

struct SolveOpts {
  std::string input;
  std::string id;
  bool brute_force = false;
  std::size_t cap = 2;
};

int cmd_solve(const Globals& g, const SolveOpts& o) {
  const gl::Puzzle p = select_puzzle(load_puzzles(o.input), o.id, o.input);
  gl::SolveConfig cfg;
  cfg.cap_solutions = o.cap;
  cfg.seed = g.seed;
  const auto start = std::chrono::steady_clock::now();
  const auto r = gl::solve(p.clues, p.background, cfg);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  auto& out = std::cout;
  if (!p.id.empty()) out << "puzzle: " << p.id << '\n';
  out << "status: " << gl::to_string(r.status) << '\n';
  out << "solutions: " << r.solutions_found << " (cap " << o.cap << ")\n";
  out << "conflicts: " << r.conflicts << "  decisions: " << r.decisions << "  propagations: " << r.propagations
      << '\n';
  log(g, "solved in " + fixed(ms, 3) + " ms");
  if (r.first_solution) {
    out << '\n';
    if (r.status == gl::SolveStatus::Multiple) out << "first of several solutions:\n";
    print_grid(out, *r.first_solution);
    if (p.solution.n_attributes() > 0 && r.status == gl::SolveStatus::Unique) {
      out << "\nmatches stored solution: " << (*r.first_solution == p.solution ? "yes" : "no") << '\n';
    }
  }

  bool agree = true;
  if (o.brute_force) {
    auto oracle = gl::enumerate_brute_force(p.clues, p.background, std::numeric_limits<std::size_t>::max());
    auto mine = gl::enumerate_solutions(p.clues, p.background, oracle.size() + 1);
    std::vector<std::vector<std::vector<std::string>>> a, b;
    for (const auto& s : oracle) a.push_back(grid_key(s));
    for (const auto& s : mine) b.push_back(grid_key(s));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    agree = a == b;
    out << "\noracle agreement: " << (agree ? "yes" : "no") << '\n';
    out << "oracle solutions: " << a.size() << "  solver solutions: " << b.size() << '\n';
  }
  if (r.status != gl::SolveStatus::Unique) {
    std::cerr << "error: puzzle is not uniquely solvable (status " << gl::to_string(r.status) << ")\n";
    return kInvalid;
  }
  return agree ? kOk : kInvalid;
}

// ---- profile ------------------------------------------------------------------

struct ProfileOpts {
  std::string input;
  std::size_t runs = gl::kDefaultProfileRuns;
  std::optional<std::uint64_t> base_seed;
  bool json = false;
};

int cmd_profile(const Globals& g, const ProfileOpts& o) {
  const auto puzzles = load_puzzles(o.input);
  if (o.json) {
    for (const auto& p : puzzles) {
      const auto prof = gl::profile_conflicts(p, o.runs, o.base_seed.value_or(gl::profile_seed(p.seed)));
      std::cout << gl::ojson{{"id", p.id},
                             {"size", gl::size_label(p.background.n_houses, p.background.n_attributes())},
                             {"search_space", prof.search_space.str()},
                             {"search_space_log10", prof.search_space_log10},
                             {"bucket", std::string(gl::to_string(prof.bucket))},
                             {"mean_conflicts", prof.mean_conflicts},
                             {"runs", prof.runs},
                             {"per_run_conflicts", prof.per_run_conflicts}}
                       .dump()
                << '\n';
    }
    return kOk;
  }
  std::cout << std::left << std::setw(24) << "id" << std::setw(6) << "size" << std::setw(9) << "bucket"
            << std::right << std::setw(8) << "log10" << std::setw(16) << "mean_conflicts" << '\n';
  for (const auto& p : puzzles) {
    const auto prof = gl::profile_conflicts(p, o.runs, o.base_seed.value_or(gl::profile_seed(p.seed)));
    std::cout << std::left << std::setw(24) << p.id << std::setw(6)
              << gl::size_label(p.background.n_houses, p.background.n_attributes()) << std::setw(9)
              << gl::to_string(prof.bucket) << std::right << std::setw(8) << fixed(prof.search_space_log10, 2)
              << std::setw(16) << fixed(prof.mean_conflicts, 3) << '\n';
  }
  log(g, "profiled " + std::to_string(puzzles.size()) + " puzzles with " + std::to_string(o.runs) + " runs each");
  return kOk;
}

// ---- grade --------------------------------------------------------------------

struct GradeOpts {
  std::string predictions;
  std::string dataset;
  std::string summary;
};

int cmd_grade(const Globals& g, const GradeOpts& o) {
  const auto dataset = gl::read_dataset(o.dataset);
  const auto preds = gl::read_predictions(o.predictions);
  const auto outcome = gl::grade_predictions(dataset, preds);
  for (const auto& id : outcome.unknown_ids) std::cerr << "warning: prediction for unknown puzzle " << id << '\n';
  if (outcome.unpredicted > 0) {
    std::cerr << "note: " << outcome.unpredicted << " dataset puzzles have no prediction and were not scored\n";
  }
  std::cout << gl::format_report(outcome.report);

  const std::string path = o.summary.empty() ? o.predictions + ".summary.json" : o.summary;
  auto j = gl::to_json(outcome.report);
  j["unknown_ids"] = outcome.unknown_ids;
  j["unpredicted"] = outcome.unpredicted;
  Output out(path);
  out.stream() << j.dump(2) << '\n';
  out.close();
  log(g, "summary written to " + path);
  return kOk;
}

// ---- eval ---------------------------------------------------------------------

struct EvalOpts {
  std::string dataset;
  std::string endpoint = "http://127.0.0.1:8000/v1/chat/completions";
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  std::size_t samples = 1;
  std::vector<std::string> aggregate;
  std::vector<std::size_t> k;
  std::string self_verify = "none";
  int rounds = 0;
  std::optional<double> temperature;
  int max_tokens = 4096;
  std::size_t concurrency = 4;
  double timeout = 300;
  int retries = 5;
  std::size_t limit = 0;
  std::string records = "eval_records.jsonl";
  std::string report;
  std::string from_records;
  bool dry_run = false;
};

gl::EvalPlan plan_from(const EvalOpts& o) {
  gl::EvalPlan plan;
  plan.samples = o.samples;
  plan.concurrency = o.concurrency;
  plan.temperature = o.temperature;
  plan.max_tokens = o.max_tokens;
  auto mode = gl::verify_mode_from_string(o.self_verify);
  if (!mode) throw gl::ConfigError("--self-verify must be none, plain, or oracle");
  plan.verify = *mode;
  plan.rounds = o.rounds > 0 ? o.rounds : (plan.verify == gl::VerifyMode::None ? 1 : 2);
  for (const auto& a : o.aggregate) {
    const auto name = gl::canonical(a);
    if (name == "majority") {
      plan.majority = true;
    } else if (name == "oracle" || name == "bon-oracle") {
      plan.bon_oracle = true;
    } else if (name == "pass@k") {
      plan.pass_k = o.k.empty() ? std::vector<std::size_t>{o.samples} : o.k;
    } else {
      throw gl::ConfigError("unknown aggregator \"" + a + "\" (expected pass@k, majority, or oracle)");
    }
  }
  if (!o.k.empty() && plan.pass_k.empty()) plan.pass_k = o.k;
  plan.validate();
  return plan;
}

int cmd_eval(const Globals& g, const EvalOpts& o) {
  auto dataset = gl::read_dataset(o.dataset);
  if (o.limit > 0 && dataset.size() > o.limit) dataset.resize(o.limit);
  if (dataset.empty()) throw gl::ConsistencyError("dataset " + o.dataset + " has no puzzles");
  const gl::EvalPlan plan = plan_from(o);

  if (o.dry_run) {
    std::cout << gl::build_prompt(dataset.front().puzzle_text, dataset.front().background);
    return kOk;
  }

  std::vector<gl::EvalRecord> records;
  if (!o.from_records.empty()) {
    records = gl::read_eval_records(o.from_records);
    log(g, "re-aggregating " + std::to_string(records.size()) + " stored records");
  } else {
    gl::ChatClientConfig cc;
    cc.endpoint = o.endpoint;
    cc.model = o.model;
    if (const char* key = std::getenv(o.api_key_env.c_str())) cc.api_key = key;
    cc.max_tokens = o.max_tokens;
    cc.temperature = plan.effective_temperature();
    cc.timeout = std::chrono::milliseconds(static_cast<std::int64_t>(o.timeout * 1000));
    cc.max_in_flight = o.concurrency;
    cc.retry.max_attempts = o.retries;
    gl::HttpChatClient client(cc);

    Output sink_out(o.records);
    gl::JsonlRecordSink sink(sink_out.stream());
    log(g, "querying " + cc.model + " on " + std::to_string(dataset.size()) + " puzzles");
    records = gl::collect_records(dataset, client, plan, std::ref(sink));
    sink_out.close();
  }

  const auto report = gl::aggregate(dataset, records, plan);
  std::cout << gl::format_report(report);
  if (!o.report.empty()) {
    Output out(o.report);
    out.stream() << gl::to_json(report).dump(2) << '\n';
    out.close();
  }
  if (report.puzzles_evaluated == 0) {
    std::cerr << "error: no puzzle completed\n";
    return kNetwork;
  }
  return kOk;
}

// ---- stats --------------------------------------------------------------------

struct StatsOpts {
  std::string input;
  bool json = false;
};

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 == 1 ? v[h] : (v[h - 1] + v[h]) / 2.0;
}

double mean(const std::vector<double>& v) {
  if (v.empty()) return 0;
  double s = 0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

int cmd_stats(const Globals&, const StatsOpts& o) {
  const auto records = gl::read_dataset(o.input);
  std::vector<double> clue_counts;
  std::map<std::string, std::size_t> per_size;
  std::map<std::string, std::size_t> per_kind;
  std::map<gl::Bucket, std::vector<double>> conflicts;
  for (const auto& r : records) {
    clue_counts.push_back(static_cast<double>(r.clues.size()));
    ++per_size[r.size];
    for (const auto& c : r.clues) ++per_kind[std::string(gl::to_string(c.kind))];
    conflicts[*gl::bucket_from_string(r.bucket)].push_back(r.mean_conflicts);
  }

  gl::ojson j{{"records", records.size()},
              {"clues_mean", mean(clue_counts)},
              {"clues_median", median(clue_counts)},
              {"clues_min", clue_counts.empty() ? 0 : *std::min_element(clue_counts.begin(), clue_counts.end())},
              {"clues_max", clue_counts.empty() ? 0 : *std::max_element(clue_counts.begin(), clue_counts.end())}};
  gl::ojson sizes = gl::ojson::object();
  for (const auto& [k, v] : per_size) sizes[k] = v;
  j["per_size"] = sizes;
  gl::ojson buckets = gl::ojson::object();
  for (auto b : gl::kAllBuckets) {
    const auto& v = conflicts[b];
    buckets[std::string(gl::to_string(b))] = {
        {"puzzles", v.size()}, {"mean_conflicts_mean", mean(v)}, {"mean_conflicts_median", median(v)}};
  }
  j["buckets"] = buckets;
  gl::ojson kinds = gl::ojson::object();
  for (auto k : gl::kAllClueKinds) kinds[std::string(gl::to_string(k))] = per_kind[std::string(gl::to_string(k))];
  j["clue_kinds"] = kinds;

  if (o.json) {
    std::cout << j.dump(2) << '\n';
    return kOk;
  }
  std::cout << "records: " << records.size() << '\n';
  std::cout << "clues per puzzle: mean " << fixed(mean(clue_counts), 2) << ", median " << fixed(median(clue_counts), 1)
            << ", min " << j["clues_min"].get<double>() << ", max " << j["clues_max"].get<double>() << '\n';
  std::cout << "\nsize  puzzles\n";
  for (const auto& [k, v] : per_size) std::cout << std::left << std::setw(6) << k << v << '\n';
  std::cout << "\nbucket   puzzles  median conflicts  mean conflicts\n";
  for (auto b : gl::kAllBuckets) {
    const auto& v = conflicts[b];
    std::cout << std::left << std::setw(9) << gl::to_string(b) << std::right << std::setw(7) << v.size()
              << std::setw(18) << fixed(median(v), 3) << std::setw(16) << fixed(mean(v), 3) << '\n';
  }
  std::cout << "\nclue type      count\n";
  for (auto k : gl::kAllClueKinds) {
    std::cout << std::left << std::setw(14) << gl::to_string(k) << std::right << std::setw(6)
              << per_kind[std::string(gl::to_string(k))] << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logic grid puzzle generator, solver, and evaluation harness", "gridlogic"};
  app.set_config("--config", "", "Read options from a TOML config file; command-line flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "Base seed for every random choice")->default_val(0);
  app.add_flag("-v,--verbose", g.verbose, "Log progress to stderr");

  GenerateOpts gen;
  auto* generate = app.add_subcommand("generate", "Generate a puzzle dataset as JSONL");
  generate->add_option("--sizes", gen.sizes, "Sizes as NxM, a range AxB..CxD, or a comma list")
      ->capture_default_str();
  generate->add_option("--per-size", gen.per_size, "Puzzles per size")->capture_default_str();
  generate->add_option("-o,--output", gen.output, "Output file, - for stdout")->capture_default_str();
  generate->add_option("-j,--jobs", gen.jobs, "Worker threads")->default_str("all cores");
  generate->add_option("--runs", gen.runs, "Solver runs per complexity profile")->capture_default_str();
  generate->add_option("--catalog", gen.catalog, "Attribute catalog JSON (default: built in)")
      ->check(CLI::ExistingFile);

  SolveOpts sol;
  auto* solve = app.add_subcommand("solve", "Solve one puzzle and print the grid and search statistics");
  solve->add_option("input", sol.input, "Puzzle .json file or dataset .jsonl file")->required();
  solve->add_option("--id", sol.id, "Puzzle id inside a dataset file");
  solve->add_flag("--brute-force", sol.brute_force, "Cross-check the solution set against exhaustive enumeration");
  solve->add_option("--cap", sol.cap, "Stop after this many solutions")->capture_default_str()->check(
      CLI::PositiveNumber);

  ProfileOpts prof;
  auto* profile = app.add_subcommand("profile", "Measure search space and mean solver conflicts");
  profile->add_option("input", prof.input, "Puzzle .json file or dataset .jsonl file")->required();
  profile->add_option("--runs", prof.runs, "Randomized solver runs per puzzle")->capture_default_str()->check(
      CLI::PositiveNumber);
  profile->add_option("--base-seed", prof.base_seed, "Seed of the run sequence (default: derived from the puzzle)");
  profile->add_flag("--json", prof.json, "Emit one JSON object per puzzle");

  GradeOpts gr;
  auto* grade = app.add_subcommand("grade", "Grade a predictions file against a dataset");
  grade->add_option("predictions", gr.predictions, "Predictions JSONL (id plus solution or output)")->required();
  grade->add_option("dataset", gr.dataset, "Dataset JSONL")->required();
  grade->add_option("--summary", gr.summary, "Summary JSON path (default: <predictions>.summary.json)");

  EvalOpts ev;
  auto* eval = app.add_subcommand("eval", "Evaluate a chat model on a dataset");
  eval->add_option("dataset", ev.dataset, "Dataset JSONL")->required();
  eval->add_option("--endpoint", ev.endpoint, "Chat-completions URL")->capture_default_str();
  eval->add_option("--model", ev.model, "Model name sent with each request");
  eval->add_option("--api-key-env", ev.api_key_env, "Environment variable holding the API key")
      ->capture_default_str();
  eval->add_option("--samples", ev.samples, "Samples per puzzle")->capture_default_str()->check(
      CLI::PositiveNumber);
  eval->add_option("--aggregate", ev.aggregate, "Aggregators: pass@k, majority, oracle")->delimiter(',');
  eval->add_option("--k", ev.k, "k values for pass@k (default: the sample count)")->delimiter(',');
  eval->add_option("--self-verify", ev.self_verify, "Verification turns: none, plain, or oracle")
      ->capture_default_str();
  eval->add_option("--rounds", ev.rounds, "Answers per dialogue, counting the first (default 2 with --self-verify)");
  eval->add_option("--temperature", ev.temperature, "Sampling temperature (default 0 for one sample, else 1)");
  eval->add_option("--max-tokens", ev.max_tokens, "Output token limit")->capture_default_str();
  eval->add_option("--concurrency", ev.concurrency, "Requests in flight")->capture_default_str()->check(
      CLI::PositiveNumber);
  eval->add_option("--timeout", ev.timeout, "Request timeout in seconds")->capture_default_str()->check(
      CLI::PositiveNumber);
  eval->add_option("--retries", ev.retries, "Attempts per request")->capture_default_str()->check(
      CLI::PositiveNumber);
  eval->add_option("--limit", ev.limit, "Evaluate only the first N puzzles");
  eval->add_option("--records", ev.records, "Write raw records to this JSONL file")->capture_default_str();
  eval->add_option("--report", ev.report, "Write the report as JSON");
  eval->add_option("--from-records", ev.from_records, "Re-aggregate stored records instead of querying")
      ->check(CLI::ExistingFile);
  eval->add_flag("--dry-run", ev.dry_run, "Print the first prompt and exit without network use");

  StatsOpts st;
  auto* stats = app.add_subcommand("stats", "Summarize a dataset");
  stats->add_option("input", st.input, "Dataset JSONL")->required();
  stats->add_flag("--json", st.json, "Emit JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate) return cmd_generate(g, gen);
    if (*solve) return cmd_solve(g, sol);
    if (*profile) return cmd_profile(g, prof);
    if (*grade) return cmd_grade(g, gr);
    if (*eval) return cmd_eval(g, ev);
    if (*stats) return cmd_stats(g, st);
  } catch (const gl::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const gl::SchemaError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const gl::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const gl::TransportError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNetwork;
  } catch (const gl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
  return kUsage;
}
