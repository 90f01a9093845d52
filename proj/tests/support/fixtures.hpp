#pragma once

#include <atomic>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>

#include "gridlogic/dataset.hpp"
#include "gridlogic/eval/chat_client.hpp"

namespace gridlogic::testing {

inline std::string data_path(const std::string& rel) { return std::string(GRIDLOGIC_SOURCE_DIR) + "/" + rel; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Puzzle load_puzzle(const std::string& file) {
  return puzzle_from_json(ojson::parse(slurp(data_path("data/puzzles/" + file))));
}

// Three houses with Name, Drink, Hobby and six clues.
inline Puzzle hobbies_puzzle() { return load_puzzle("three_house_hobbies.json"); }

// Three houses with Name and Drink, solved in the prompt's worked example.
inline Puzzle one_shot_puzzle() { return load_puzzle("one_shot_example.json"); }

inline SolutionGrid grid_of(std::vector<std::string> attrs, std::vector<std::vector<std::string>> rows) {
  return SolutionGrid(std::move(attrs), std::move(rows));
}

// Chat client answering from a script; safe for concurrent use.
class ScriptedChatClient : public ChatClient {
 public:
  using Script = std::function<ChatResponse(const std::vector<ChatMessage>&)>;
  explicit ScriptedChatClient(Script script) : script_(std::move(script)) {}

  ChatResponse complete(const std::vector<ChatMessage>& messages, const ChatParams& params) override {
    {
      std::lock_guard lock(mu_);
      calls_.push_back(messages);
      params_.push_back(params);
    }
    return script_(messages);
  }

  std::vector<std::vector<ChatMessage>> calls() const {
    std::lock_guard lock(mu_);
    return calls_;
  }
  std::vector<ChatParams> params() const {
    std::lock_guard lock(mu_);
    return params_;
  }

 private:
  Script script_;
  mutable std::mutex mu_;
  std::vector<std::vector<ChatMessage>> calls_;
  std::vector<ChatParams> params_;
};

// HTTP server on an ephemeral loopback port, torn down on destruction.
class LoopbackServer {
 public:
  explicit LoopbackServer(std::function<void(const httplib::Request&, httplib::Response&)> handler) {
    server_.Post("/v1/chat/completions", std::move(handler));
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~LoopbackServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  LoopbackServer(const LoopbackServer&) = delete;
  LoopbackServer& operator=(const LoopbackServer&) = delete;

  std::string url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1/chat/completions"; }

 private:
  httplib::Server server_;
  int port_ = 0;
  std::thread thread_;
};

inline std::string chat_body(const std::string& text, int prompt_tokens = 10, int completion_tokens = 5) {
  nlohmann::json j = {{"choices", {{{"index", 0}, {"message", {{"role", "assistant"}, {"content", text}}}}}},
                      {"usage", {{"prompt_tokens", prompt_tokens}, {"completion_tokens", completion_tokens}}}};
  return j.dump();
}

}  // namespace gridlogic::testing
