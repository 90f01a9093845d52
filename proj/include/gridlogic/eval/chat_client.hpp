#pragma once

// Chat-completions client: one request per call, exponential backoff on
// transient failures (429, 5xx, connection errors), and a process-wide cap on
// concurrent requests.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <semaphore>
#include <string>
#include <thread>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "gridlogic/errors.hpp"

namespace gridlogic {

struct ChatMessage {
  std::string role;
  std::string content;

  bool operator==(const ChatMessage&) const = default;
};

struct TokenUsage {
  std::optional<std::int64_t> prompt_tokens;
  std::optional<std::int64_t> completion_tokens;
  std::optional<std::int64_t> reasoning_tokens;

  bool operator==(const TokenUsage&) const = default;
};

struct ChatResponse {
  std::string text;
  TokenUsage usage;
};

struct ChatParams {
  double temperature = 0.0;
  int max_tokens = 4096;
};

class ChatClient {
 public:
  virtual ~ChatClient() = default;
  // Must be safe to call from several threads at once.
  virtual ChatResponse complete(const std::vector<ChatMessage>& messages, const ChatParams& params) = 0;
};

struct RetryPolicy {
  int max_attempts = 5;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
  std::chrono::milliseconds max_backoff{60000};

  std::chrono::milliseconds delay_before(int attempt) const {  // attempt >= 2
    const double ms = static_cast<double>(initial_backoff.count()) * std::pow(multiplier, attempt - 2);
    return std::chrono::milliseconds(
        static_cast<std::int64_t>(std::min(ms, static_cast<double>(max_backoff.count()))));
  }
};

struct ChatClientConfig {
  std::string endpoint;  // full URL of the chat-completions route
  std::string model;
  std::string api_key;
  double temperature = 0.0;
  int max_tokens = 4096;
  std::chrono::milliseconds timeout{std::chrono::seconds(300)};
  std::size_t max_in_flight = 8;
  RetryPolicy retry;

  void validate() const {
    if (endpoint.empty()) throw ConfigError("chat endpoint URL is required");
    if (model.empty()) throw ConfigError("model name is required");
    if (max_tokens <= 0) throw ConfigError("max tokens must be positive");
    if (timeout.count() <= 0) throw ConfigError("timeout must be positive");
    if (max_in_flight == 0) throw ConfigError("max in-flight requests must be positive");
    if (retry.max_attempts < 1) throw ConfigError("retry attempts must be at least 1");
    if (retry.initial_backoff.count() < 0 || retry.multiplier < 1.0) throw ConfigError("invalid backoff");
  }
};

struct ParsedUrl {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

inline ParsedUrl split_url(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint must be an absolute URL: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

inline std::string chat_request_body(const std::string& model, const std::vector<ChatMessage>& messages,
                                     const ChatParams& params) {
  nlohmann::ordered_json msgs = nlohmann::ordered_json::array();
  for (const auto& m : messages) msgs.push_back({{"role", m.role}, {"content", m.content}});
  nlohmann::ordered_json body = {{"model", model},
                                 {"messages", std::move(msgs)},
                                 {"temperature", params.temperature},
                                 {"max_tokens", params.max_tokens}};
  return body.dump();
}

// Assistant text and usage from a chat-completions response body.
inline ChatResponse parse_chat_response(const std::string& body) {
  auto j = nlohmann::json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw SchemaError("response body is not a JSON object");
  auto choices = j.find("choices");
  if (choices == j.end() || !choices->is_array() || choices->empty()) throw SchemaError("response has no choices");
  const auto& first = (*choices)[0];
  if (!first.is_object() || !first.contains("message") || !first["message"].is_object()) {
    throw SchemaError("response choice has no message");
  }
  const auto& content = first["message"].value("content", nlohmann::json());
  if (!content.is_string()) throw SchemaError("response message has no text content");

  ChatResponse out;
  out.text = content.get<std::string>();
  if (auto u = j.find("usage"); u != j.end() && u->is_object()) {
    auto count = [](const nlohmann::json& obj, const char* key) -> std::optional<std::int64_t> {
      auto it = obj.find(key);
      if (it == obj.end() || !it->is_number_integer() || it->get<std::int64_t>() < 0) return std::nullopt;
      return it->get<std::int64_t>();
    };
    out.usage.prompt_tokens = count(*u, "prompt_tokens");
    out.usage.completion_tokens = count(*u, "completion_tokens");
    if (auto d = u->find("completion_tokens_details"); d != u->end() && d->is_object()) {
      out.usage.reasoning_tokens = count(*d, "reasoning_tokens");
    }
  }
  return out;
}

inline bool is_transient_status(int status) { return status == 429 || (status >= 500 && status <= 599); }

class HttpChatClient : public ChatClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  explicit HttpChatClient(ChatClientConfig cfg, Sleeper sleeper = nullptr)
      : cfg_(std::move(cfg)), url_(split_url(cfg_.endpoint)),
        slots_(std::make_unique<std::counting_semaphore<4096>>(
            static_cast<std::ptrdiff_t>(std::min<std::size_t>(cfg_.max_in_flight, 4096)))),
        sleep_(sleeper ? std::move(sleeper) : [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); }) {
    cfg_.validate();
  }

  const ChatClientConfig& config() const { return cfg_; }

  // Number of HTTP attempts made so far, across all calls.
  std::size_t attempts() const { return attempts_.load(); }

  ChatResponse complete(const std::vector<ChatMessage>& messages, const ChatParams& params) override {
    if (messages.empty()) throw ConfigError("chat request needs at least one message");
    const std::string body = chat_request_body(cfg_.model, messages, params);
    std::string last_error;
    std::chrono::milliseconds retry_after{0};
    for (int attempt = 1; attempt <= cfg_.retry.max_attempts; ++attempt) {
      std::chrono::milliseconds wait{0};
      if (attempt > 1) wait = std::max(cfg_.retry.delay_before(attempt), retry_after);
      if (wait.count() > 0) sleep_(wait);
      retry_after = std::chrono::milliseconds{0};

      auto result = send(body);
      ++attempts_;
      if (!result) {
        last_error = "request failed: " + httplib::to_string(result.error());
        continue;
      }
      if (result->status == 200) return parse_chat_response(result->body);
      last_error = "HTTP " + std::to_string(result->status);
      if (!is_transient_status(result->status)) throw TransportError(last_error + ": " + result->body);
      if (result->has_header("Retry-After")) {
        try {
          retry_after = std::min(cfg_.retry.max_backoff,
                                  std::chrono::milliseconds(std::stoll(result->get_header_value("Retry-After")) * 1000));
        } catch (const std::exception&) {
          // HTTP-date form; fall back to the policy's own delay.
        }
      }
    }
    throw TransportError("giving up after " + std::to_string(cfg_.retry.max_attempts) + " attempts: " + last_error);
  }

 private:
  httplib::Result send(const std::string& body) {
    slots_->acquire();
    struct Release {
      std::counting_semaphore<4096>* s;
      ~Release() { s->release(); }
    } release{slots_.get()};

    httplib::Client client(url_.origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(cfg_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(cfg_.timeout - secs);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    httplib::Headers headers;
    if (!cfg_.api_key.empty()) headers.emplace("Authorization", "Bearer " + cfg_.api_key);
    return client.Post(url_.path, headers, body, "application/json");
  }

  ChatClientConfig cfg_;
  ParsedUrl url_;
  std::unique_ptr<std::counting_semaphore<4096>> slots_;
  Sleeper sleep_;
  std::atomic<std::size_t> attempts_{0};
};

}  // namespace gridlogic
