#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "gridlogic/core.hpp"
#include "gridlogic/generator.hpp"
#include "gridlogic/rng.hpp"
#include "support/fixtures.hpp"

using namespace gridlogic;
using gridlogic::testing::hobbies_puzzle;

namespace {

// Clue semantics written directly from the positional definitions.
bool expected(ClueKind kind, int p1, int p2) {
  switch (kind) {
    case ClueKind::SameHouse: return p1 == p2;
    case ClueKind::NotSameHouse: return p1 != p2;
    case ClueKind::DirectLeft: return p2 - p1 == 1;
    case ClueKind::DirectRight: return p1 - p2 == 1;
    case ClueKind::SideBySide: return std::abs(p1 - p2) == 1;
    case ClueKind::LeftOf: return p1 < p2;
    case ClueKind::RightOf: return p1 > p2;
    case ClueKind::OneBetween: return std::abs(p1 - p2) == 2;
    case ClueKind::TwoBetween: return std::abs(p1 - p2) == 3;
    case ClueKind::FoundAt: return p1 == p2;
    case ClueKind::NotFoundAt: return p1 != p2;
  }
  return false;
}

SolutionGrid random_grid(const Background& bg, Rng& rng) { return random_solution(bg, rng); }

Background letters_background(int n, int m) {
  Background bg;
  bg.n_houses = n;
  for (int a = 0; a < m; ++a) {
    Attribute attr{"A" + std::to_string(a), {}};
    for (int v = 0; v < n; ++v) attr.values.push_back("v" + std::to_string(a) + std::to_string(v));
    bg.attributes.push_back(attr);
  }
  return bg;
}

}  // namespace

TEST(ClueKinds, NamesRoundTrip) {
  for (ClueKind k : kAllClueKinds) EXPECT_EQ(clue_kind_from_string(to_string(k)), k);
  EXPECT_FALSE(clue_kind_from_string("directleft").has_value());
  EXPECT_FALSE(clue_kind_from_string("NotAt").has_value());
}

TEST(ClueKinds, PositionTableMatchesDefinitions) {
  for (ClueKind k : kAllClueKinds) {
    for (int p1 = 1; p1 <= 6; ++p1) {
      for (int p2 = 1; p2 <= 6; ++p2) EXPECT_EQ(positions_satisfy(k, p1, p2), expected(k, p1, p2)) << to_string(k);
    }
  }
}

TEST(EvaluateClue, WorkedExamples) {
  const Puzzle p = hobbies_puzzle();
  EXPECT_TRUE(evaluate_clue(Clue::at(ClueKind::NotFoundAt, {"Name", "Arnold"}, 1), p.solution));
  EXPECT_TRUE(evaluate_clue(Clue::between(ClueKind::DirectLeft, {"Hobby", "cooking"}, {"Drink", "milk"}), p.solution));
  EXPECT_FALSE(evaluate_clue(Clue::at(ClueKind::FoundAt, {"Drink", "milk"}, 2), p.solution));
  for (const auto& c : p.clues) EXPECT_TRUE(evaluate_clue(c, p.solution)) << describe(c);
}

TEST(EvaluateClue, UnknownReferencesThrow) {
  const Puzzle p = hobbies_puzzle();
  EXPECT_THROW(evaluate_clue(Clue::at(ClueKind::FoundAt, {"Pet", "cat"}, 1), p.solution), ReferenceError);
  EXPECT_THROW(evaluate_clue(Clue::at(ClueKind::FoundAt, {"Name", "Zed"}, 1), p.solution), ReferenceError);
  EXPECT_THROW(evaluate_clue(Clue::at(ClueKind::FoundAt, {"Name", "Eric"}, 4), p.solution), ReferenceError);
}

TEST(EvaluateClue, DirectLeftImpliesSideBySideAndLeftOf) {
  Rng rng(11);
  const Background bg = letters_background(5, 3);
  for (int trial = 0; trial < 200; ++trial) {
    const SolutionGrid g = random_grid(bg, rng);
    for (const auto& a : bg.attributes) {
      for (const auto& b : bg.attributes) {
        for (const auto& va : a.values) {
          for (const auto& vb : b.values) {
            if (a.name == b.name && va == vb) continue;
            const ValueRef x{a.name, va}, y{b.name, vb};
            if (evaluate_clue(Clue::between(ClueKind::DirectLeft, x, y), g)) {
              EXPECT_TRUE(evaluate_clue(Clue::between(ClueKind::SideBySide, x, y), g));
              EXPECT_TRUE(evaluate_clue(Clue::between(ClueKind::LeftOf, x, y), g));
            }
          }
        }
      }
    }
  }
}

TEST(EvaluateClue, InvariantUnderAttributeReordering) {
  Rng rng(5);
  const Background bg = letters_background(4, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const SolutionGrid g = random_grid(bg, rng);
    std::vector<std::string> names(g.attributes().rbegin(), g.attributes().rend());
    std::vector<std::vector<std::string>> rows;
    for (std::size_t a = g.n_attributes(); a-- > 0;) rows.push_back(g.row(a));
    const SolutionGrid reversed(names, rows);
    for (const auto& c : generate_candidate_clues(g)) {
      EXPECT_EQ(evaluate_clue(c, g), evaluate_clue(c, reversed));
    }
  }
}

TEST(EvaluateClue, GeneratedCandidatesHoldOnTheirGrid) {
  Rng rng(3);
  for (int n = 2; n <= 6; ++n) {
    const Background bg = letters_background(n, 3);
    const SolutionGrid g = random_grid(bg, rng);
    const auto clues = generate_candidate_clues(g);
    ASSERT_FALSE(clues.empty());
    for (const auto& c : clues) EXPECT_TRUE(evaluate_clue(c, g)) << describe(c);
  }
}

TEST(ValidatePuzzle, PublishedPuzzleIsClean) { EXPECT_TRUE(validate_puzzle(hobbies_puzzle()).empty()); }

TEST(ValidatePuzzle, SwappedNamesViolateClues2And5) {
  Puzzle p = hobbies_puzzle();
  auto name = p.solution.row(0);
  std::swap(name[1], name[2]);
  p.solution = SolutionGrid(p.solution.attributes(), {name, p.solution.row(1), p.solution.row(2)});
  const auto defects = validate_puzzle(p);
  ASSERT_EQ(defects.size(), 2U);
  EXPECT_EQ(defects[0].rfind("clue 2 ", 0), 0U) << defects[0];
  EXPECT_EQ(defects[1].rfind("clue 5 ", 0), 0U) << defects[1];
  // Independent check: re-evaluate each clue on the swapped grid.
  std::vector<std::size_t> violated;
  for (std::size_t i = 0; i < p.clues.size(); ++i) {
    if (!evaluate_clue(p.clues[i], p.solution)) violated.push_back(i + 1);
  }
  EXPECT_EQ(violated, (std::vector<std::size_t>{2, 5}));
}

TEST(ValidatePuzzle, ShortValueListIsStructuralDefect) {
  Puzzle p = hobbies_puzzle();
  p.background.attributes[1].values.pop_back();
  const auto defects = validate_puzzle(p);
  ASSERT_FALSE(defects.empty());
  EXPECT_NE(defects.front().find("value count 2 != N (3)"), std::string::npos) << defects.front();
}

TEST(ValidatePuzzle, SelfReferenceAndBadHouse) {
  Puzzle p = hobbies_puzzle();
  p.clues.push_back(Clue::between(ClueKind::SameHouse, {"Name", "Eric"}, {"Name", "Eric"}));
  p.clues.push_back(Clue::at(ClueKind::FoundAt, {"Name", "Eric"}, 9));
  const auto defects = validate_puzzle(p);
  ASSERT_EQ(defects.size(), 2U);
  EXPECT_NE(defects[0].find("clue 7"), std::string::npos);
  EXPECT_NE(defects[1].find("clue 8"), std::string::npos);
}

TEST(Canonicalize, MapsCaseAndWhitespaceOntoBackgroundSpelling) {
  const Puzzle p = hobbies_puzzle();
  const Clue c = canonicalize_clue(Clue::between(ClueKind::SameHouse, {" drink ", "MILK"}, {"name", "eric "}),
                                   p.background);
  EXPECT_EQ(c.first.attribute, "Drink");
  EXPECT_EQ(c.first.value, "milk");
  EXPECT_EQ(c.second.attribute, "Name");
  EXPECT_EQ(c.second.value, "Eric");
  EXPECT_THROW(canonicalize_clue(Clue::at(ClueKind::FoundAt, {"Name", "Bob"}, 1), p.background), ReferenceError);
}

TEST(Catalog, EnforcesInvariants) {
  auto six = [](const std::string& name) {
    Attribute a{name, {}};
    for (int i = 0; i < 6; ++i) a.values.push_back(name + std::to_string(i));
    return a;
  };
  EXPECT_NO_THROW(AttributeCatalog({six("Name"), six("Color")}));
  EXPECT_THROW(AttributeCatalog({six("Color")}), ConfigError);
  auto short_attr = six("Pet");
  short_attr.values.pop_back();
  EXPECT_THROW(AttributeCatalog({six("Name"), short_attr}), ConfigError);
  auto dup = six("Pet");
  dup.values[1] = dup.values[0];
  EXPECT_THROW(AttributeCatalog({six("Name"), dup}), ConfigError);
  EXPECT_THROW(AttributeCatalog({six("Name"), six("Name")}), ConfigError);
}

TEST(SolutionGrid, LookupsAndHouseOf) {
  const Puzzle p = hobbies_puzzle();
  EXPECT_EQ(p.solution.at(1, "Name"), "Peter");
  EXPECT_EQ(p.solution.at(3, "Hobby"), "photography");
  EXPECT_EQ(p.solution.house_of(1, "water"), 2);
  EXPECT_FALSE(p.solution.house_of(1, "juice").has_value());
  EXPECT_THROW(p.solution.at(1, "Pet"), ReferenceError);
}
