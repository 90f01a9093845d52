#pragma once

// Dataset-level workflows shared by the command-line tool and the tests:
// size-spec parsing, parallel corpus generation, and prediction-file grading.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "gridlogic/catalog_io.hpp"
#include "gridlogic/complexity.hpp"
#include "gridlogic/dataset.hpp"
#include "gridlogic/errors.hpp"
#include "gridlogic/eval/harness.hpp"
#include "gridlogic/generator.hpp"
#include "gridlogic/rng.hpp"

namespace gridlogic {

struct PuzzleSize {
  int n_houses = 0;
  int n_attributes = 0;
  bool operator==(const PuzzleSize&) const = default;
};

namespace detail {

inline PuzzleSize parse_one_size(std::string_view s) {
  s = trim(s);
  const auto x = s.find_first_of("xX*");
  auto number = [&](std::string_view part) {
    int v = 0;
    auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
    if (ec != std::errc() || ptr != part.data() + part.size() || v < 1) {
      throw ConfigError("bad size \"" + std::string(s) + "\" (expected NxM)");
    }
    return v;
  };
  if (x == std::string_view::npos) throw ConfigError("bad size \"" + std::string(s) + "\" (expected NxM)");
  return {number(s.substr(0, x)), number(s.substr(x + 1))};
}

}  // namespace detail

// "3x4", "2x2..6x6" (every N in 2..6 and M in 2..6, N-major), or a comma list of either.
inline std::vector<PuzzleSize> parse_sizes(std::string_view spec) {
  std::vector<PuzzleSize> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const auto part = trim(spec.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (part.empty()) throw ConfigError("empty entry in size list");
    if (const auto dots = part.find(".."); dots != std::string_view::npos) {
      const auto lo = detail::parse_one_size(part.substr(0, dots));
      const auto hi = detail::parse_one_size(part.substr(dots + 2));
      if (lo.n_houses > hi.n_houses || lo.n_attributes > hi.n_attributes) {
        throw ConfigError("empty size range \"" + std::string(part) + "\"");
      }
      for (int n = lo.n_houses; n <= hi.n_houses; ++n) {
        for (int m = lo.n_attributes; m <= hi.n_attributes; ++m) out.push_back({n, m});
      }
    } else {
      out.push_back(detail::parse_one_size(part));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

struct DatasetConfig {
  std::vector<PuzzleSize> sizes = parse_sizes("2x2..6x6");
  std::size_t per_size = 40;
  std::uint64_t seed = 0;
  std::size_t profile_runs = kDefaultProfileRuns;
  std::size_t jobs = 1;
  RemovalWeights removal_weights = RemovalWeights::defaults();
  CatalogBundle catalog = default_catalog();
};

// Seed of the i-th puzzle of one size. Independent of which other sizes are requested.
inline std::uint64_t puzzle_seed(std::uint64_t base, PuzzleSize size, std::size_t i) {
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(size.n_houses) * 1000 +
                                          static_cast<std::uint64_t>(size.n_attributes)),
                     i);
}

inline std::uint64_t profile_seed(std::uint64_t puzzle_seed) { return mix_seed(puzzle_seed); }

// Generates and profiles every requested puzzle. The output order and content
// depend only on the config, never on the number of jobs.
inline std::vector<DatasetRecord> generate_dataset(const DatasetConfig& cfg) {
  if (cfg.jobs == 0) throw ConfigError("jobs must be at least 1");
  if (cfg.profile_runs == 0) throw ConfigError("profile runs must be at least 1");
  std::vector<GeneratorConfig> plans;
  for (const auto& size : cfg.sizes) {
    for (std::size_t i = 0; i < cfg.per_size; ++i) {
      GeneratorConfig g;
      g.n_houses = size.n_houses;
      g.n_attributes = size.n_attributes;
      g.seed = puzzle_seed(cfg.seed, size, i);
      g.removal_weights = cfg.removal_weights;
      g.catalog = cfg.catalog.catalog;
      g.validate();
      plans.push_back(std::move(g));
    }
  }

  std::vector<DatasetRecord> out(plans.size());
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < plans.size(); i = next++) {
      try {
        const Puzzle p = generate_puzzle(plans[i]);
        out[i] = make_record(p, profile_conflicts(p, cfg.profile_runs, profile_seed(p.seed)), cfg.catalog.phrases);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = plans.size();
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(cfg.jobs, plans.size()); ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// ---- prediction files ---------------------------------------------------------

struct Prediction {
  std::string id;
  std::string output;  // free-form model output, or a serialized answer object
};

// JSONL lines carrying "id" (or "puzzle_id") and either a "solution" object or
// the raw text in "output" / "raw_output".
inline std::vector<Prediction> read_predictions(std::istream& in) {
  std::vector<Prediction> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto j = ojson::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object()) throw SchemaError("prediction must be a JSON object", line_no);
    Prediction p;
    for (const char* key : {"id", "puzzle_id"}) {
      if (auto it = j.find(key); it != j.end() && it->is_string()) {
        p.id = it->get<std::string>();
        break;
      }
    }
    if (p.id.empty()) throw SchemaError("prediction lacks an id", line_no);
    if (auto it = j.find("solution"); it != j.end()) {
      p.output = ojson{{"solution", *it}}.dump();
    } else if (auto o = j.find("output"); o != j.end() && o->is_string()) {
      p.output = o->get<std::string>();
    } else if (auto r = j.find("raw_output"); r != j.end() && r->is_string()) {
      p.output = r->get<std::string>();
    } else {
      throw SchemaError("prediction lacks solution, output, or raw_output", line_no);
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline std::vector<Prediction> read_predictions(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_predictions(in);
}

struct GradeOutcome {
  EvalReport report;
  std::vector<std::string> unknown_ids;       // predicted but absent from the dataset
  std::size_t unpredicted = 0;                // dataset puzzles without a prediction
};

// Grades one prediction per puzzle. Only puzzles with a prediction are scored.
inline GradeOutcome grade_predictions(const std::vector<DatasetRecord>& dataset,
                                      const std::vector<Prediction>& predictions) {
  if (predictions.empty()) throw ConsistencyError("prediction file is empty");
  std::map<std::string, const DatasetRecord*> by_id;
  for (const auto& r : dataset) by_id.emplace(r.id, &r);

  GradeOutcome out;
  std::map<std::string, bool> seen;
  std::vector<EvalRecord> records;
  std::vector<DatasetRecord> scored;
  for (const auto& p : predictions) {
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      out.unknown_ids.push_back(p.id);
      continue;
    }
    if (seen[p.id]) throw ConsistencyError("duplicate prediction for " + p.id);
    seen[p.id] = true;
    EvalRecord rec;
    rec.puzzle_id = p.id;
    rec.raw_output = p.output;
    rec.parsed = parse_answer(p.output, it->second->background);
    rec.grade = grade(rec.parsed, it->second->solution);
    records.push_back(std::move(rec));
  }
  if (records.empty()) throw ConsistencyError("no prediction matches a dataset id");
  for (const auto& r : dataset) {
    if (seen.count(r.id) != 0) {
      scored.push_back(r);
    } else {
      ++out.unpredicted;
    }
  }
  EvalPlan plan;
  plan.label = "Predictions";
  out.report = aggregate(scored, records, plan);
  return out;
}

}  // namespace gridlogic
