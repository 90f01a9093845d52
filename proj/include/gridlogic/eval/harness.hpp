#pragma once

// Evaluation driver: sampling and self-verification dialogues against a chat
// endpoint, persisted per-round records, and pure re-aggregation into a
// bucketed accuracy report.

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "gridlogic/answer.hpp"
#include "gridlogic/complexity.hpp"
#include "gridlogic/dataset.hpp"
#include "gridlogic/errors.hpp"
#include "gridlogic/eval/chat_client.hpp"
#include "gridlogic/eval/grading.hpp"
#include "gridlogic/render.hpp"

namespace gridlogic {

enum class VerifyMode { None, Plain, Oracle };

inline constexpr std::string_view to_string(VerifyMode m) {
  switch (m) {
    case VerifyMode::None: return "none";
    case VerifyMode::Plain: return "plain";
    case VerifyMode::Oracle: return "oracle";
  }
  return "?";
}

inline std::optional<VerifyMode> verify_mode_from_string(std::string_view s) {
  for (auto m : {VerifyMode::None, VerifyMode::Plain, VerifyMode::Oracle}) {
    if (canonical_equal(s, to_string(m))) return m;
  }
  return std::nullopt;
}

inline constexpr std::string_view kPlainVerifyPrompt =
    "Your answer may be incorrect!  Identify any mistakes in your reasoning and answer, if any. Correct them to "
    "ensure they align with the given information.  Present your updated response in the same JSON format "
    "mentioned in the initial prompt.";
inline constexpr std::string_view kOracleIncorrectPrompt =
    "Your answer is incorrect! Re-examine the clues, correct the mistakes, and then provide the revised solution in "
    "the original JSON format.";
inline constexpr std::string_view kOracleCorrectPrompt =
    "Your answer is correct. Please repeat the json-formatted output again.";

// ---- records ----------------------------------------------------------------

struct EvalRecord {
  std::string puzzle_id;
  std::size_t sample_index = 0;
  int round = 0;  // 0 is the initial answer
  std::string raw_output;
  ParsedAnswer parsed = ParseFailure{"no output"};
  GradeResult grade;
  TokenUsage usage;
  std::vector<ChatMessage> transcript;  // every message up to and including this round's reply
  std::optional<std::string> error;     // transport failure or skipped round

  bool operator==(const EvalRecord&) const = default;
};

namespace detail {

inline ojson optional_count(const std::optional<std::int64_t>& v) { return v ? ojson(*v) : ojson(nullptr); }

inline std::optional<std::int64_t> count_from(const ojson& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
    throw SchemaError(std::string(key) + " must be a non-negative integer");
  }
  return it->get<std::int64_t>();
}

inline ojson parsed_to_json(const ParsedAnswer& p) {
  if (const auto* f = std::get_if<ParseFailure>(&p)) return ojson{{"failure", f->reason}};
  const auto& g = std::get<AnswerGrid>(p);
  ojson cells = ojson::array();
  for (const auto& house : g.cells) {
    ojson row = ojson::array();
    for (const auto& c : house) row.push_back(c ? ojson(*c) : ojson(nullptr));
    cells.push_back(std::move(row));
  }
  ojson out{{"n_houses", g.n_houses}, {"attributes", g.attributes}, {"cells", std::move(cells)}};
  if (g.reasoning) out["reasoning"] = *g.reasoning;
  return out;
}

inline ParsedAnswer parsed_from_json(const ojson& j) {
  if (!j.is_object()) throw SchemaError("parsed must be an object");
  if (auto f = j.find("failure"); f != j.end()) return ParseFailure{f->get<std::string>()};
  AnswerGrid g;
  g.n_houses = require(j, "n_houses").get<int>();
  g.attributes = require(j, "attributes").get<std::vector<std::string>>();
  const auto& cells = require(j, "cells");
  if (!cells.is_array() || cells.size() != static_cast<std::size_t>(g.n_houses)) throw SchemaError("bad cells");
  for (const auto& row : cells) {
    if (!row.is_array() || row.size() != g.attributes.size()) throw SchemaError("bad cells row");
    auto& out = g.cells.emplace_back();
    for (const auto& c : row) out.push_back(c.is_null() ? std::nullopt : std::optional<std::string>(c.get<std::string>()));
  }
  if (auto r = j.find("reasoning"); r != j.end()) g.reasoning = r->get<std::string>();
  return g;
}

}  // namespace detail

inline ojson to_json(const EvalRecord& r) {
  ojson transcript = ojson::array();
  for (const auto& m : r.transcript) transcript.push_back({{"role", m.role}, {"content", m.content}});
  return ojson{{"puzzle_id", r.puzzle_id},
               {"sample_index", r.sample_index},
               {"round", r.round},
               {"raw_output", r.raw_output},
               {"parsed", detail::parsed_to_json(r.parsed)},
               {"grade",
                {{"grid_correct", r.grade.grid_correct},
                 {"cell_accuracy", r.grade.cell_accuracy},
                 {"cells_total", r.grade.cells_total},
                 {"cells_correct", r.grade.cells_correct}}},
               {"usage",
                {{"prompt_tokens", detail::optional_count(r.usage.prompt_tokens)},
                 {"completion_tokens", detail::optional_count(r.usage.completion_tokens)},
                 {"reasoning_tokens", detail::optional_count(r.usage.reasoning_tokens)}}},
               {"transcript", std::move(transcript)},
               {"error", r.error ? ojson(*r.error) : ojson(nullptr)}};
}

inline EvalRecord eval_record_from_json(const ojson& j) {
  using detail::require;
  if (!j.is_object()) throw SchemaError("eval record must be an object");
  try {
    EvalRecord r;
    r.puzzle_id = require(j, "puzzle_id").get<std::string>();
    r.sample_index = require(j, "sample_index").get<std::size_t>();
    r.round = require(j, "round").get<int>();
    r.raw_output = require(j, "raw_output").get<std::string>();
    r.parsed = detail::parsed_from_json(require(j, "parsed"));
    const auto& g = require(j, "grade");
    r.grade.grid_correct = require(g, "grid_correct").get<bool>();
    r.grade.cell_accuracy = require(g, "cell_accuracy").get<double>();
    r.grade.cells_total = require(g, "cells_total").get<std::size_t>();
    r.grade.cells_correct = require(g, "cells_correct").get<std::size_t>();
    const auto& u = require(j, "usage");
    r.usage.prompt_tokens = detail::count_from(u, "prompt_tokens");
    r.usage.completion_tokens = detail::count_from(u, "completion_tokens");
    r.usage.reasoning_tokens = detail::count_from(u, "reasoning_tokens");
    for (const auto& m : require(j, "transcript")) {
      r.transcript.push_back({require(m, "role").get<std::string>(), require(m, "content").get<std::string>()});
    }
    if (const auto& e = require(j, "error"); !e.is_null()) r.error = e.get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(e.what());
  }
}

inline void write_eval_records(std::ostream& out, const std::vector<EvalRecord>& records) {
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

inline std::vector<EvalRecord> read_eval_records(std::istream& in) {
  std::vector<EvalRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto j = ojson::parse(line, nullptr, false);
    if (j.is_discarded()) throw SchemaError("malformed JSON", line_no);
    try {
      out.push_back(eval_record_from_json(j));
    } catch (const SchemaError& e) {
      throw SchemaError(e.what(), line_no);
    }
  }
  return out;
}

inline std::vector<EvalRecord> read_eval_records(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_eval_records(in);
}

// ---- dialogue ---------------------------------------------------------------

// One sampled conversation: the initial answer plus rounds - 1 verification
// turns. Returns one record per round. A transport or response-format failure
// ends the dialogue; the failed round and all later ones carry an error.
inline std::vector<EvalRecord> run_dialogue(ChatClient& client, const std::string& puzzle_id,
                                            const std::string& prompt, const Background& bg,
                                            const SolutionGrid& gold, VerifyMode mode, int rounds,
                                            const ChatParams& params, std::size_t sample_index = 0) {
  if (rounds < 1) throw ConfigError("rounds must be at least 1");
  if (mode == VerifyMode::None && rounds != 1) throw ConfigError("more than one round requires a verify mode");

  std::vector<EvalRecord> out;
  std::vector<ChatMessage> messages{{"user", prompt}};
  for (int round = 0; round < rounds; ++round) {
    EvalRecord rec;
    rec.puzzle_id = puzzle_id;
    rec.sample_index = sample_index;
    rec.round = round;
    if (round > 0) {
      const auto& prev = out.back();
      if (prev.error) {
        rec.error = "skipped: round " + std::to_string(prev.round) + " failed";
        rec.grade = grade(rec.parsed, gold);
        out.push_back(std::move(rec));
        continue;
      }
      std::string_view follow_up = kPlainVerifyPrompt;
      if (mode == VerifyMode::Oracle) follow_up = prev.grade.grid_correct ? kOracleCorrectPrompt : kOracleIncorrectPrompt;
      messages.push_back({"user", std::string(follow_up)});
    }
    try {
      ChatResponse resp = client.complete(messages, params);
      rec.raw_output = std::move(resp.text);
      rec.usage = resp.usage;
      rec.parsed = parse_answer(rec.raw_output, bg);
      messages.push_back({"assistant", rec.raw_output});
    } catch (const TransportError& e) {
      rec.error = std::string("transport: ") + e.what();
    } catch (const SchemaError& e) {
      rec.error = std::string("response: ") + e.what();
    }
    rec.grade = grade(rec.parsed, gold);
    rec.transcript = messages;
    out.push_back(std::move(rec));
  }
  return out;
}

inline std::vector<EvalRecord> self_verify_dialogue(ChatClient& client, const Puzzle& puzzle, VerifyMode mode,
                                                    int rounds, const ChatParams& params = {},
                                                    const Phrasebook& phrases = default_catalog().phrases) {
  if (mode == VerifyMode::None) throw ConfigError("self-verification needs the plain or oracle mode");
  return run_dialogue(client, puzzle.id, build_prompt(puzzle, phrases), puzzle.background, puzzle.solution, mode,
                      rounds, params);
}

// ---- plan and collection ------------------------------------------------------

struct EvalPlan {
  std::size_t samples = 1;
  std::vector<std::size_t> pass_k;  // extra pass@k rows, each in [2, samples]
  bool majority = false;
  bool bon_oracle = false;
  std::size_t concurrency = 4;
  VerifyMode verify = VerifyMode::None;
  int rounds = 1;
  std::optional<double> temperature;  // unset: greedy for one sample, 1.0 otherwise
  int max_tokens = 4096;
  std::optional<std::string> label;  // overrides the first row's label

  double effective_temperature() const { return temperature ? *temperature : (samples > 1 ? 1.0 : 0.0); }
  ChatParams params() const { return {effective_temperature(), max_tokens}; }

  void validate() const {
    if (samples < 1) throw ConfigError("samples must be at least 1");
    if (concurrency < 1) throw ConfigError("concurrency must be at least 1");
    if (rounds < 1) throw ConfigError("rounds must be at least 1");
    if (verify == VerifyMode::None && rounds != 1) throw ConfigError("--rounds above 1 requires --self-verify");
    if (max_tokens < 1) throw ConfigError("max tokens must be positive");
    for (auto k : pass_k) {
      if (k < 1 || k > samples) throw ConfigError("pass@" + std::to_string(k) + " needs k between 1 and the sample count");
    }
  }
};

using RecordSink = std::function<void(const std::vector<EvalRecord>&)>;

// Appends each finished dialogue to a JSONL stream; safe to call from workers.
class JsonlRecordSink {
 public:
  explicit JsonlRecordSink(std::ostream& out) : out_(out) {}
  void operator()(const std::vector<EvalRecord>& records) {
    std::lock_guard lock(mu_);
    write_eval_records(out_, records);
    out_.flush();
  }

 private:
  std::ostream& out_;
  std::mutex mu_;
};

// Queries every (puzzle, sample) pair with up to plan.concurrency workers and
// returns all records ordered by dataset position, sample, and round.
inline std::vector<EvalRecord> collect_records(const std::vector<DatasetRecord>& dataset, ChatClient& client,
                                               const EvalPlan& plan, const RecordSink& sink = nullptr) {
  plan.validate();
  const std::size_t units = dataset.size() * plan.samples;
  std::vector<std::vector<EvalRecord>> results(units);
  std::atomic<std::size_t> next{0};
  std::mutex error_mu;
  std::exception_ptr failure;
  const ChatParams params = plan.params();

  auto worker = [&] {
    for (std::size_t u = next++; u < units; u = next++) {
      const auto& rec = dataset[u / plan.samples];
      try {
        results[u] = run_dialogue(client, rec.id, build_prompt(rec.puzzle_text, rec.background), rec.background,
                                  rec.solution, plan.verify, plan.rounds, params, u % plan.samples);
        if (sink) sink(results[u]);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!failure) failure = std::current_exception();
        next = units;
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < std::min(plan.concurrency, units); ++t) pool.emplace_back(worker);
    worker();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<EvalRecord> out;
  for (auto& r : results) std::move(r.begin(), r.end(), std::back_inserter(out));
  return out;
}

// ---- aggregation ----------------------------------------------------------------

struct ReportRow {
  std::string label;
  double overall = 0;
  std::array<std::optional<double>, 4> buckets{};  // Small, Medium, Large, X-Large
  double cell_accuracy = 0;

  bool operator==(const ReportRow&) const = default;
};

struct FailedPuzzle {
  std::string id;
  std::string reason;
  bool operator==(const FailedPuzzle&) const = default;
};

struct EvalReport {
  std::vector<ReportRow> rows;
  std::size_t puzzles_evaluated = 0;
  std::array<std::size_t, 4> bucket_counts{};
  std::vector<FailedPuzzle> failed;

  const ReportRow* row(std::string_view label) const {
    for (const auto& r : rows) {
      if (r.label == label) return &r;
    }
    return nullptr;
  }

  bool operator==(const EvalReport&) const = default;
};

inline std::string verify_row_label(VerifyMode mode, int round) {
  std::string label = mode == VerifyMode::Oracle ? "Self-Verify (Oracle)" : "Self-Verify";
  if (round > 1) label += " (x" + std::to_string(round) + ")";
  return label;
}

inline std::string base_row_label(const EvalPlan& plan) {
  if (plan.label) return *plan.label;
  if (plan.samples == 1) return plan.effective_temperature() == 0.0 ? "Greedy" : "Sample";
  return "pass@1";
}

namespace detail {

// Per-row score of one puzzle: grid-level credit and cell accuracy.
struct RowScore {
  double grid = 0;
  double cell = 0;
};

class RowAccumulator {
 public:
  explicit RowAccumulator(std::string label) : label_(std::move(label)) {}

  void add(Bucket b, RowScore s) {
    auto& slot = per_bucket_[static_cast<std::size_t>(b)];
    slot.first += s.grid;
    ++slot.second;
    grid_sum_ += s.grid;
    cell_sum_ += s.cell;
    ++count_;
  }

  ReportRow finish() const {
    ReportRow row;
    row.label = label_;
    if (count_ == 0) return row;
    row.overall = grid_sum_ / static_cast<double>(count_);
    row.cell_accuracy = cell_sum_ / static_cast<double>(count_);
    for (std::size_t b = 0; b < per_bucket_.size(); ++b) {
      if (per_bucket_[b].second > 0) row.buckets[b] = per_bucket_[b].first / static_cast<double>(per_bucket_[b].second);
    }
    return row;
  }

 private:
  std::string label_;
  std::array<std::pair<double, std::size_t>, 4> per_bucket_{};
  double grid_sum_ = 0;
  double cell_sum_ = 0;
  std::size_t count_ = 0;
};

}  // namespace detail

// Pure function of its inputs: every record is re-parsed and re-graded against
// the dataset, so persisted records re-aggregate to the identical report.
// Puzzles with missing or failed records are excluded and listed.
inline EvalReport aggregate(const std::vector<DatasetRecord>& dataset, const std::vector<EvalRecord>& records,
                            const EvalPlan& plan) {
  plan.validate();
  std::map<std::string, std::vector<const EvalRecord*>> by_puzzle;
  for (const auto& r : records) by_puzzle[r.puzzle_id].push_back(&r);

  const std::size_t n = plan.samples;
  std::vector<detail::RowAccumulator> rows;
  rows.emplace_back(base_row_label(plan));
  std::vector<std::size_t> ks;
  for (auto k : plan.pass_k) {
    if (k > 1 && std::find(ks.begin(), ks.end(), k) == ks.end()) ks.push_back(k);
  }
  std::sort(ks.begin(), ks.end());
  for (auto k : ks) rows.emplace_back("pass@" + std::to_string(k));
  if (plan.majority) rows.emplace_back("Majority-Voting (N=" + std::to_string(n) + ")");
  if (plan.bon_oracle) rows.emplace_back("BoN-Oracle (N=" + std::to_string(n) + ")");
  for (int r = 1; r < plan.rounds; ++r) rows.emplace_back(verify_row_label(plan.verify, r));

  EvalReport report;
  std::set<std::string> seen;
  for (const auto& rec : dataset) {
    if (!seen.insert(rec.id).second) continue;
    auto it = by_puzzle.find(rec.id);
    if (it == by_puzzle.end()) {
      report.failed.push_back({rec.id, "no records"});
      continue;
    }
    // grades[sample][round]
    std::vector<std::vector<std::optional<std::pair<ParsedAnswer, GradeResult>>>> cells(
        n, std::vector<std::optional<std::pair<ParsedAnswer, GradeResult>>>(static_cast<std::size_t>(plan.rounds)));
    std::optional<std::string> problem;
    for (const EvalRecord* r : it->second) {
      if (r->sample_index >= n || r->round < 0 || r->round >= plan.rounds) {
        problem = "record outside the plan (sample " + std::to_string(r->sample_index) + ", round " +
                  std::to_string(r->round) + ")";
        break;
      }
      if (r->error) {
        problem = *r->error;
        break;
      }
      auto parsed = parse_answer(r->raw_output, rec.background);
      auto g = grade(parsed, rec.solution);
      cells[r->sample_index][static_cast<std::size_t>(r->round)] = std::pair{std::move(parsed), g};
    }
    if (!problem) {
      for (std::size_t s = 0; s < n && !problem; ++s) {
        for (int r = 0; r < plan.rounds; ++r) {
          if (!cells[s][static_cast<std::size_t>(r)]) {
            problem = "missing sample " + std::to_string(s) + " round " + std::to_string(r);
            break;
          }
        }
      }
    }
    if (problem) {
      report.failed.push_back({rec.id, *problem});
      continue;
    }

    const Bucket b = bucket_for_size(rec.background.n_houses, static_cast<int>(rec.background.n_attributes()));
    ++report.puzzles_evaluated;
    ++report.bucket_counts[static_cast<std::size_t>(b)];

    auto round_score = [&](int round) {
      std::size_t c = 0;
      double cell = 0;
      for (std::size_t s = 0; s < n; ++s) {
        const auto& g = cells[s][static_cast<std::size_t>(round)]->second;
        c += g.grid_correct;
        cell += g.cell_accuracy;
      }
      return std::pair{c, cell / static_cast<double>(n)};
    };

    std::size_t row = 0;
    const auto [c0, cell0] = round_score(0);
    rows[row++].add(b, {pass_at_k(n, c0, 1), cell0});
    for (auto k : ks) rows[row++].add(b, {pass_at_k(n, c0, k), cell0});
    if (plan.majority) {
      std::vector<VoteCandidate> pool;
      for (std::size_t s = 0; s < n; ++s) {
        if (const auto* g = std::get_if<AnswerGrid>(&cells[s][0]->first)) pool.push_back({s, *g});
      }
      detail::RowScore score;
      if (!pool.empty()) {
        const auto chosen = grade(majority_vote(pool).grid, rec.solution);
        score = {chosen.grid_correct ? 1.0 : 0.0, chosen.cell_accuracy};
      }
      rows[row++].add(b, score);
    }
    if (plan.bon_oracle) {
      std::vector<GradeResult> grades;
      double best_cell = 0;
      for (std::size_t s = 0; s < n; ++s) {
        grades.push_back(cells[s][0]->second);
        best_cell = std::max(best_cell, grades.back().cell_accuracy);
      }
      rows[row++].add(b, {bon_oracle(grades) ? 1.0 : 0.0, best_cell});
    }
    for (int r = 1; r < plan.rounds; ++r) {
      const auto [c, cell] = round_score(r);
      rows[row++].add(b, {static_cast<double>(c) / static_cast<double>(n), cell});
    }
  }
  for (const auto& acc : rows) report.rows.push_back(acc.finish());
  return report;
}

// BoN-Oracle over graded records of one puzzle.
inline bool bon_oracle(const std::vector<EvalRecord>& graded) {
  return std::any_of(graded.begin(), graded.end(), [](const EvalRecord& r) { return r.grade.grid_correct; });
}

struct EvalRun {
  std::vector<EvalRecord> records;
  EvalReport report;
};

inline EvalRun run_evaluation(const std::vector<DatasetRecord>& dataset, ChatClient& client, const EvalPlan& plan,
                              const RecordSink& sink = nullptr) {
  EvalRun run;
  run.records = collect_records(dataset, client, plan, sink);
  run.report = aggregate(dataset, run.records, plan);
  return run;
}

// ---- report output --------------------------------------------------------------

inline std::string percent(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v * 100.0);
  return buf;
}

inline constexpr std::array<std::string_view, 6> kReportColumns = {"Overall", "Small", "Medium", "Large", "X-Large",
                                                                   "Cell Acc"};

inline std::string format_report(const EvalReport& report) {
  std::vector<std::vector<std::string>> table;
  table.push_back({""});
  for (auto c : kReportColumns) table.back().emplace_back(c);
  for (const auto& r : report.rows) {
    std::vector<std::string> line{r.label, percent(r.overall)};
    for (const auto& b : r.buckets) line.push_back(b ? percent(*b) : "-");
    line.push_back(percent(r.cell_accuracy));
    table.push_back(std::move(line));
  }
  std::vector<std::size_t> width(table.front().size(), 0);
  for (const auto& line : table) {
    for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
  }
  std::string out;
  for (const auto& line : table) {
    std::string text;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i == 0) {
        text += line[i] + std::string(width[i] - line[i].size(), ' ');
      } else {
        text += "  " + std::string(width[i] - line[i].size(), ' ') + line[i];
      }
    }
    out += text + "\n";
  }
  out += "puzzles: " + std::to_string(report.puzzles_evaluated);
  for (std::size_t b = 0; b < kAllBuckets.size(); ++b) {
    out += b == 0 ? " (" : ", ";
    out += std::string(to_string(kAllBuckets[b])) + " " + std::to_string(report.bucket_counts[b]);
  }
  out += ")\n";
  if (!report.failed.empty()) {
    out += "failed puzzles: " + std::to_string(report.failed.size()) + "\n";
    for (const auto& f : report.failed) out += "  " + f.id + ": " + f.reason + "\n";
  }
  return out;
}

inline ojson to_json(const EvalReport& report) {
  ojson rows = ojson::array();
  for (const auto& r : report.rows) {
    ojson row{{"label", r.label}, {"overall", r.overall}};
    for (std::size_t b = 0; b < kAllBuckets.size(); ++b) {
      row[std::string(to_string(kAllBuckets[b]))] = r.buckets[b] ? ojson(*r.buckets[b]) : ojson(nullptr);
    }
    row["cell_accuracy"] = r.cell_accuracy;
    rows.push_back(std::move(row));
  }
  ojson counts = ojson::object();
  for (std::size_t b = 0; b < kAllBuckets.size(); ++b) counts[std::string(to_string(kAllBuckets[b]))] = report.bucket_counts[b];
  ojson failed = ojson::array();
  for (const auto& f : report.failed) failed.push_back({{"id", f.id}, {"reason", f.reason}});
  return ojson{{"puzzles_evaluated", report.puzzles_evaluated},
               {"bucket_counts", std::move(counts)},
               {"rows", std::move(rows)},
               {"failed", std::move(failed)}};
}

}  // namespace gridlogic
