#pragma once

// Natural-language rendering of puzzles and the one-shot evaluation prompt.

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "gridlogic/catalog_io.hpp"
#include "gridlogic/core.hpp"

namespace gridlogic {

// Fixed one-shot example that precedes every target puzzle in the prompt.
inline constexpr std::string_view kExamplePromptBlock =
    R"(# Example Puzzle 

There are 3 houses, numbered 1 to 3 from left to right, as seen from across the street. Each house is occupied by a different person. Each house has a unique attribute for each of the following characteristics:
    - Each person has a unique name: `Peter`, `Eric`, `Arnold`.
    - Each person has a unique favorite drink: `tea`, `water`, `milk`

## Clues for the Example Puzzle

1. Peter is in the second house.
2. Arnold is directly left of the one who only drinks water.
3. The one who only drinks water is directly left of the person who likes milk.

## Answer to the Example Puzzle

{
    "reasoning": "Given Clue 1, we know Peter is in House 2. According to Clue 2, Arnold is directly left of the one who only drinks water. The person in House 3 cannot be on the left of anyone, so Arnold must be in House 1. Thus, Peter drinks water, and Eric lives in House 3. Then, according to Clue 3, Eric drinks milk. Therefore, Arnold drinks tea.",
    "solution": {
        "House 1": {
            "Name": "Arnold",
            "Drink": "tea"
        },
        "House 2": {
            "Name": "Peter",
            "Drink": "water"
        },
        "House 3": {
            "Name": "Eric",
            "Drink": "milk"
        }
    }
}

)";

inline constexpr std::string_view kTargetHeading = "# Puzzle to Solve \n\n";

inline constexpr std::string_view kInstruction =
    "# Instruction\n\nNow please solve the above puzzle. Present your reasoning and solution in the following json "
    "format:\n\n";

inline std::string house_key(int house) { return "House " + std::to_string(house); }

// Background paragraph, attribute bullets, and numbered clue sentences.
inline std::string render_puzzle_text(const Background& bg, const std::vector<Clue>& clues,
                                      const Phrasebook& phrases = default_catalog().phrases) {
  const std::string n = std::to_string(bg.n_houses);
  std::string out = "There are " + n + " houses, numbered 1 to " + n +
                    " from left to right, as seen from across the street. Each house is occupied by a different "
                    "person. Each house has a unique attribute for each of the following characteristics:\n";
  for (const auto& attr : bg.attributes) {
    out += "    - " + phrases.attribute(attr.name).description + ": ";
    for (std::size_t i = 0; i < attr.values.size(); ++i) {
      if (i > 0) out += ", ";
      out += "`" + attr.values[i] + "`";
    }
    out += "\n";
  }
  out += "\n## Clues:\n";
  for (std::size_t i = 0; i < clues.size(); ++i) {
    out += std::to_string(i + 1) + ". " + phrases.render(clues[i]) + "\n";
  }
  return out;
}

// Answer object in the prompt's layout; `cell` supplies each (house, attribute index) entry.
template <class CellFn>
std::string answer_json(const Background& bg, std::string_view reasoning, CellFn&& cell) {
  nlohmann::ordered_json solution = nlohmann::ordered_json::object();
  for (int k = 1; k <= bg.n_houses; ++k) {
    nlohmann::ordered_json house = nlohmann::ordered_json::object();
    for (std::size_t a = 0; a < bg.attributes.size(); ++a) house[bg.attributes[a].name] = cell(k, a);
    solution[house_key(k)] = std::move(house);
  }
  nlohmann::ordered_json doc = nlohmann::ordered_json::object();
  doc["reasoning"] = std::string(reasoning);
  doc["solution"] = std::move(solution);
  return doc.dump(4);
}

inline std::string answer_skeleton(const Background& bg) {
  return answer_json(bg, "___", [](int, std::size_t) { return std::string("___"); });
}

// A correct answer in the requested output format.
inline std::string render_answer(const Background& bg, const SolutionGrid& grid, std::string_view reasoning = "") {
  return answer_json(bg, reasoning, [&](int k, std::size_t a) { return grid.at(k, bg.attributes[a].name); });
}

// Full one-shot prompt around an already rendered puzzle text.
inline std::string build_prompt(std::string_view puzzle_text, const Background& bg) {
  std::string out(kExamplePromptBlock);
  out += kTargetHeading;
  out += puzzle_text;
  out += "\n\n\n";
  out += kInstruction;
  out += answer_skeleton(bg);
  out += "\n";
  return out;
}

inline std::string build_prompt(const Puzzle& puzzle, const Phrasebook& phrases = default_catalog().phrases) {
  return build_prompt(render_puzzle_text(puzzle.background, puzzle.clues, phrases), puzzle.background);
}

}  // namespace gridlogic
