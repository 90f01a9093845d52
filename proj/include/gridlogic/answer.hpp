#pragma once

// Extraction of a solution grid from free-form model output.

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "gridlogic/core.hpp"
#include "gridlogic/text_util.hpp"

namespace gridlogic {

// A (possibly incomplete) predicted grid aligned with a background.
// Values are stored canonicalized (trimmed, case-folded).
struct AnswerGrid {
  int n_houses = 0;
  std::vector<std::string> attributes;
  std::vector<std::vector<std::optional<std::string>>> cells;  // [house - 1][attribute]
  std::optional<std::string> reasoning;

  AnswerGrid() = default;
  explicit AnswerGrid(const Background& bg)
      : n_houses(bg.n_houses),
        cells(static_cast<std::size_t>(bg.n_houses), std::vector<std::optional<std::string>>(bg.attributes.size())) {
    for (const auto& a : bg.attributes) attributes.push_back(a.name);
  }

  const std::optional<std::string>& cell(int house, std::size_t attribute) const {
    return cells.at(static_cast<std::size_t>(house - 1)).at(attribute);
  }

  std::size_t filled() const {
    std::size_t n = 0;
    for (const auto& h : cells) {
      for (const auto& c : h) n += c.has_value();
    }
    return n;
  }

  bool operator==(const AnswerGrid&) const = default;
};

struct ParseFailure {
  std::string reason;
  bool operator==(const ParseFailure&) const = default;
};

using ParsedAnswer = std::variant<AnswerGrid, ParseFailure>;

inline AnswerGrid answer_from_solution(const Background& bg, const SolutionGrid& grid) {
  AnswerGrid out(bg);
  for (int k = 1; k <= bg.n_houses; ++k) {
    for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
      out.cells[static_cast<std::size_t>(k - 1)][a] = canonical(grid.at(k, bg.attributes[a].name));
    }
  }
  return out;
}

namespace detail {

// "House 3", "house3", " 3 " -> 3.
inline std::optional<int> house_number(std::string_view key) {
  std::string k = canonical(key);
  std::string_view v = k;
  if (v.starts_with("house")) v.remove_prefix(5);
  v = trim(v);
  int n = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
  if (ec != std::errc() || ptr != v.data() + v.size()) return std::nullopt;
  return n;
}

// End (exclusive) of the brace-balanced object starting at `open`, skipping string literals.
inline std::optional<std::size_t> object_end(std::string_view text, std::size_t open) {
  int depth = 0;
  bool in_string = false;
  for (std::size_t i = open; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      if (c == '\\') {
        ++i;
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
    } else if (c == '{') {
      ++depth;
    } else if (c == '}' && --depth == 0) {
      return i + 1;
    }
  }
  return std::nullopt;
}

inline const nlohmann::json* find_key(const nlohmann::json& obj, std::string_view key) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    if (canonical_equal(it.key(), key)) return &it.value();
  }
  return nullptr;
}

inline std::optional<AnswerGrid> grid_from_object(const nlohmann::json& obj, const Background& bg) {
  const nlohmann::json* solution = find_key(obj, "solution");
  if (solution == nullptr || !solution->is_object()) return std::nullopt;
  AnswerGrid out(bg);
  for (auto h = solution->begin(); h != solution->end(); ++h) {
    auto k = house_number(h.key());
    if (!k || *k < 1 || *k > bg.n_houses || !h.value().is_object()) continue;
    for (auto c = h.value().begin(); c != h.value().end(); ++c) {
      for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
        if (!canonical_equal(c.key(), bg.attributes[a].name)) continue;
        const auto& v = c.value();
        if (v.is_string()) {
          out.cells[static_cast<std::size_t>(*k - 1)][a] = canonical(v.get<std::string>());
        } else if (v.is_number() || v.is_boolean()) {
          out.cells[static_cast<std::size_t>(*k - 1)][a] = canonical(v.dump());
        }
      }
    }
  }
  if (const auto* r = find_key(obj, "reasoning"); r != nullptr && r->is_string()) out.reasoning = r->get<std::string>();
  return out;
}

inline std::optional<AnswerGrid> last_solution_object(std::string_view text, const Background& bg) {
  for (std::size_t pos = text.rfind('{'); pos != std::string_view::npos; pos = pos == 0 ? std::string_view::npos
                                                                                        : text.rfind('{', pos - 1)) {
    auto end = object_end(text, pos);
    if (!end) continue;
    auto doc = nlohmann::json::parse(text.substr(pos, *end - pos), nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) continue;
    if (auto grid = grid_from_object(doc, bg)) return grid;
  }
  return std::nullopt;
}

}  // namespace detail

// Takes the last well-formed object carrying a "solution" key. Missing houses
// or attributes stay absent; only a total absence of such an object fails.
inline ParsedAnswer parse_answer(std::string_view model_output, const Background& bg) {
  if (auto grid = detail::last_solution_object(model_output, bg)) return *grid;
  // Curly quotes are a common way for otherwise valid objects to fail.
  std::string straightened(model_output);
  replace_all(straightened, "\xE2\x80\x9C", "\"");
  replace_all(straightened, "\xE2\x80\x9D", "\"");
  if (straightened != model_output) {
    if (auto grid = detail::last_solution_object(straightened, bg)) return *grid;
  }
  return ParseFailure{"no well-formed object with a \"solution\" key"};
}

}  // namespace gridlogic
