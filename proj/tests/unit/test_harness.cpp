#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "gridlogic/eval/harness.hpp"
#include "gridlogic/pipeline.hpp"
#include "support/fixtures.hpp"

using namespace gridlogic;
using gridlogic::testing::ScriptedChatClient;

namespace {

const std::vector<DatasetRecord>& corpus() {
  static const auto records = [] {
    DatasetConfig cfg;
    cfg.sizes = parse_sizes("2x2,3x3,4x3,4x4,5x4,5x5");
    cfg.per_size = 2;
    cfg.seed = 11;
    cfg.profile_runs = 2;
    return generate_dataset(cfg);
  }();
  return records;
}

const DatasetRecord& record_for_prompt(const std::string& prompt) {
  for (const auto& r : corpus()) {
    if (prompt == build_prompt(r.puzzle_text, r.background)) return r;
  }
  throw std::runtime_error("unknown prompt");
}

ChatResponse reply(std::string text) {
  ChatResponse r;
  r.text = std::move(text);
  r.usage.prompt_tokens = 100;
  r.usage.completion_tokens = 20;
  return r;
}

// Answers every prompt correctly when `correct` holds for the puzzle, otherwise with a wrong grid.
ScriptedChatClient::Script answering(std::function<bool(const DatasetRecord&)> correct) {
  return [correct](const std::vector<ChatMessage>& messages) {
    const auto& rec = record_for_prompt(messages.front().content);
    if (correct(rec)) return reply("Here it is:\n" + render_answer(rec.background, rec.solution, "ok"));
    return reply(answer_json(rec.background, "guess", [](int, std::size_t) { return std::string("nobody"); }));
  };
}

}  // namespace

TEST(VerifyPrompts, Texts) {
  EXPECT_EQ(std::string(kOracleCorrectPrompt), "Your answer is correct. Please repeat the json-formatted output again.");
  EXPECT_EQ(std::string(kPlainVerifyPrompt).rfind("Your answer may be incorrect!  Identify any mistakes", 0), 0U);
  EXPECT_EQ(std::string(kOracleIncorrectPrompt).rfind("Your answer is incorrect! Re-examine the clues, ", 0), 0U);
  EXPECT_EQ(verify_mode_from_string("Oracle"), VerifyMode::Oracle);
  EXPECT_FALSE(verify_mode_from_string("maybe").has_value());
}

TEST(Dialogue, OracleCorrectBranch) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  ScriptedChatClient client([&](const auto&) { return reply(render_answer(p.background, p.solution)); });
  const auto recs = self_verify_dialogue(client, p, VerifyMode::Oracle, 2);
  ASSERT_EQ(recs.size(), 2U);
  EXPECT_EQ(recs[0].transcript.size(), 2U);
  ASSERT_EQ(recs[1].transcript.size(), 4U);
  EXPECT_EQ(recs[1].transcript[2].role, "user");
  EXPECT_EQ(recs[1].transcript[2].content, kOracleCorrectPrompt);
  EXPECT_EQ(recs[1].transcript[0].content, build_prompt(p));
  EXPECT_TRUE(recs[1].grade.grid_correct);
  EXPECT_EQ(recs[1].round, 1);
}

TEST(Dialogue, OracleIncorrectBranchIncludingUnparseable) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  int call = 0;
  ScriptedChatClient client([&](const auto&) {
    return reply(call++ == 0 ? "I am not sure." : render_answer(p.background, p.solution));
  });
  const auto recs = self_verify_dialogue(client, p, VerifyMode::Oracle, 3);
  ASSERT_EQ(recs.size(), 3U);
  EXPECT_TRUE(std::holds_alternative<ParseFailure>(recs[0].parsed));
  EXPECT_EQ(recs[2].transcript[2].content, kOracleIncorrectPrompt);
  EXPECT_EQ(recs[2].transcript[4].content, kOracleCorrectPrompt);
  EXPECT_FALSE(recs[0].grade.grid_correct);
  EXPECT_TRUE(recs[2].grade.grid_correct);
}

TEST(Dialogue, PlainTwoRoundsIsOneVerificationTurn) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  ScriptedChatClient client([&](const auto&) { return reply("{}"); });
  const auto recs = self_verify_dialogue(client, p, VerifyMode::Plain, 2);
  ASSERT_EQ(recs.size(), 2U);
  const auto calls = client.calls();
  ASSERT_EQ(calls.size(), 2U);
  EXPECT_EQ(calls[1].size(), 3U);
  EXPECT_EQ(calls[1][2].content, kPlainVerifyPrompt);
  EXPECT_THROW(self_verify_dialogue(client, p, VerifyMode::None, 1), ConfigError);
  EXPECT_THROW(self_verify_dialogue(client, p, VerifyMode::Plain, 0), ConfigError);
}

TEST(Dialogue, TransportFailureSkipsLaterRounds) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  int call = 0;
  ScriptedChatClient client([&](const auto&) -> ChatResponse {
    if (call++ == 1) throw TransportError("connection refused");
    return reply(render_answer(p.background, p.solution));
  });
  const auto recs = self_verify_dialogue(client, p, VerifyMode::Plain, 4);
  ASSERT_EQ(recs.size(), 4U);
  EXPECT_FALSE(recs[0].error.has_value());
  EXPECT_EQ(recs[1].error->rfind("transport: ", 0), 0U);
  EXPECT_EQ(*recs[2].error, "skipped: round 1 failed");
  EXPECT_EQ(*recs[3].error, "skipped: round 2 failed");
  EXPECT_EQ(client.calls().size(), 2U);
  EXPECT_FALSE(recs[3].grade.grid_correct);
}

TEST(Plan, TemperatureDefaultsAndValidation) {
  EvalPlan plan;
  EXPECT_EQ(plan.effective_temperature(), 0.0);
  plan.samples = 4;
  EXPECT_EQ(plan.effective_temperature(), 1.0);
  plan.temperature = 0.3;
  EXPECT_EQ(plan.params().temperature, 0.3);
  plan.pass_k = {5};
  EXPECT_THROW(plan.validate(), ConfigError);
  EvalPlan rounds;
  rounds.rounds = 2;
  EXPECT_THROW(rounds.validate(), ConfigError);
}

TEST(Evaluation, PerfectClientScoresOneEverywhere) {
  ScriptedChatClient client(answering([](const auto&) { return true; }));
  EvalPlan plan;
  plan.concurrency = 3;
  const auto run = run_evaluation(corpus(), client, plan);
  ASSERT_EQ(run.report.rows.size(), 1U);
  const auto& row = run.report.rows[0];
  EXPECT_EQ(row.label, "Greedy");
  EXPECT_EQ(row.overall, 1.0);
  EXPECT_EQ(row.cell_accuracy, 1.0);
  for (const auto& b : row.buckets) {
    ASSERT_TRUE(b.has_value());
    EXPECT_EQ(*b, 1.0);
  }
  EXPECT_EQ(run.report.puzzles_evaluated, corpus().size());
  EXPECT_TRUE(run.report.failed.empty());
  for (const auto& params : client.params()) EXPECT_EQ(params.temperature, 0.0);
  // Records come back in dataset order.
  for (std::size_t i = 0; i < corpus().size(); ++i) EXPECT_EQ(run.records[i].puzzle_id, corpus()[i].id);
}

TEST(Evaluation, SmallOnlyClientRoutesByBucket) {
  ScriptedChatClient client(
      answering([](const DatasetRecord& r) { return r.bucket == to_string(Bucket::Small); }));
  const auto run = run_evaluation(corpus(), client, EvalPlan{});
  const auto& row = run.report.rows[0];
  EXPECT_EQ(*row.buckets[0], 1.0);
  for (std::size_t b = 1; b < 4; ++b) EXPECT_EQ(*row.buckets[b], 0.0);
  for (const auto& r : corpus()) {
    EXPECT_EQ(r.bucket, to_string(bucket_for_size(r.background.n_houses, static_cast<int>(r.background.n_attributes()))));
  }
}

TEST(Evaluation, MultiSampleRowsAndReaggregation) {
  // Sample s of a puzzle is wrong iff (hash of id + s) is divisible by 3.
  std::mutex mu;
  std::map<std::string, int> seen;
  ScriptedChatClient client([&](const std::vector<ChatMessage>& messages) {
    const auto& rec = record_for_prompt(messages.front().content);
    int s;
    {
      std::lock_guard lock(mu);
      s = seen[rec.id]++;
    }
    const bool ok = (std::hash<std::string>{}(rec.id) + static_cast<std::size_t>(s)) % 3 != 0;
    if (ok) return reply(render_answer(rec.background, rec.solution));
    return reply(answer_json(rec.background, "", [](int, std::size_t) { return std::string("x"); }));
  });
  EvalPlan plan;
  plan.samples = 5;
  plan.pass_k = {3, 5};
  plan.majority = true;
  plan.bon_oracle = true;
  const auto run = run_evaluation(corpus(), client, plan);
  std::vector<std::string> labels;
  for (const auto& r : run.report.rows) labels.push_back(r.label);
  EXPECT_EQ(labels, (std::vector<std::string>{"pass@1", "pass@3", "pass@5", "Majority-Voting (N=5)",
                                              "BoN-Oracle (N=5)"}));
  EXPECT_LE(run.report.row("pass@1")->overall, run.report.row("pass@3")->overall);
  EXPECT_LE(run.report.row("pass@3")->overall, run.report.row("pass@5")->overall);
  EXPECT_EQ(run.report.row("pass@5")->overall, run.report.row("BoN-Oracle (N=5)")->overall);
  for (const auto& params : client.params()) EXPECT_EQ(params.temperature, 1.0);

  std::stringstream store;
  write_eval_records(store, run.records);
  const auto reread = read_eval_records(store);
  EXPECT_EQ(reread, run.records);
  const auto again = aggregate(corpus(), reread, plan);
  EXPECT_EQ(again, run.report);
  EXPECT_EQ(to_json(again).dump(), to_json(run.report).dump());
  EXPECT_EQ(format_report(again), format_report(run.report));
}

TEST(Evaluation, SelfVerifyRowsPerRound) {
  ScriptedChatClient client([&](const std::vector<ChatMessage>& messages) {
    const auto& rec = record_for_prompt(messages.front().content);
    // Wrong first, right after any follow-up.
    if (messages.size() == 1) return reply("no idea");
    return reply(render_answer(rec.background, rec.solution));
  });
  EvalPlan plan;
  plan.verify = VerifyMode::Oracle;
  plan.rounds = 3;
  const auto run = run_evaluation(corpus(), client, plan);
  ASSERT_EQ(run.report.rows.size(), 3U);
  EXPECT_EQ(run.report.rows[0].overall, 0.0);
  EXPECT_EQ(run.report.rows[1].label, "Self-Verify (Oracle)");
  EXPECT_EQ(run.report.rows[1].overall, 1.0);
  EXPECT_EQ(run.report.rows[2].label, "Self-Verify (Oracle) (x2)");
  EXPECT_EQ(run.records.size(), corpus().size() * 3);
  const auto& last = run.records[2];
  EXPECT_EQ(last.transcript[2].content, kOracleIncorrectPrompt);
  EXPECT_EQ(last.transcript[4].content, kOracleCorrectPrompt);
}

TEST(Evaluation, FailedPuzzlesAreListedAndExcluded) {
  const std::string victim = corpus()[1].id;
  ScriptedChatClient client([&](const std::vector<ChatMessage>& messages) -> ChatResponse {
    const auto& rec = record_for_prompt(messages.front().content);
    if (rec.id == victim) throw TransportError("giving up after 5 attempts: HTTP 503");
    return reply(render_answer(rec.background, rec.solution));
  });
  std::ostringstream sink_out;
  JsonlRecordSink sink(sink_out);
  const auto run = run_evaluation(corpus(), client, EvalPlan{}, std::ref(sink));
  ASSERT_EQ(run.report.failed.size(), 1U);
  EXPECT_EQ(run.report.failed[0].id, victim);
  EXPECT_NE(run.report.failed[0].reason.find("HTTP 503"), std::string::npos);
  EXPECT_EQ(run.report.puzzles_evaluated, corpus().size() - 1);
  EXPECT_EQ(run.report.rows[0].overall, 1.0);
  EXPECT_NE(format_report(run.report).find("failed puzzles: 1"), std::string::npos);
  std::istringstream in(sink_out.str());
  EXPECT_EQ(read_eval_records(in).size(), corpus().size());
}

TEST(Evaluation, MissingRecordsAreFailures) {
  EvalPlan plan;
  const auto report = aggregate(corpus(), {}, plan);
  EXPECT_EQ(report.puzzles_evaluated, 0U);
  EXPECT_EQ(report.failed.size(), corpus().size());
  EXPECT_EQ(report.rows[0].overall, 0.0);
  EXPECT_FALSE(report.rows[0].buckets[0].has_value());
}

TEST(Records, JsonRoundTrip) {
  EvalRecord r;
  r.puzzle_id = "p";
  r.sample_index = 3;
  r.round = 1;
  r.raw_output = "text {";
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  r.parsed = parse_answer(render_answer(p.background, p.solution, "why"), p.background);
  r.grade = grade(r.parsed, p.solution);
  r.usage.prompt_tokens = 7;
  r.usage.reasoning_tokens = 0;
  r.transcript = {{"user", "q"}, {"assistant", "a"}};
  r.error = "skipped: round 0 failed";
  std::stringstream ss;
  write_eval_records(ss, {r, EvalRecord{}});
  const auto back = read_eval_records(ss);
  ASSERT_EQ(back.size(), 2U);
  EXPECT_EQ(back[0], r);
  EXPECT_EQ(back[1], EvalRecord{});
  std::istringstream bad("{\"puzzle_id\": 3}\n");
  EXPECT_THROW(read_eval_records(bad), SchemaError);
}

TEST(Report, TableColumnsInOrder) {
  ScriptedChatClient client(answering([](const auto&) { return true; }));
  const auto run = run_evaluation(corpus(), client, EvalPlan{});
  const std::string table = format_report(run.report);
  std::istringstream in(table);
  std::string header;
  std::getline(in, header);
  std::size_t last = 0;
  for (auto col : kReportColumns) {
    const auto pos = header.find(col, last);
    ASSERT_NE(pos, std::string::npos) << col;
    last = pos + col.size();
  }
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("Greedy", 0), 0U);
  EXPECT_NE(line.find("100.0"), std::string::npos);
  EXPECT_NE(table.find("puzzles: 12 (Small "), std::string::npos);
}
