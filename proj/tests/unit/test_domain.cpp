#include <gtest/gtest.h>

#include "gridlogic/brute_force.hpp"
#include "gridlogic/domain_state.hpp"
#include "gridlogic/generator.hpp"
#include "gridlogic/rng.hpp"
#include "gridlogic/solver.hpp"
#include "support/fixtures.hpp"

using namespace gridlogic;

namespace {

Background small_background(int n, int m) {
  Background bg;
  bg.n_houses = n;
  for (int a = 0; a < m; ++a) {
    Attribute attr{"A" + std::to_string(a), {}};
    for (int v = 0; v < n; ++v) attr.values.push_back("x" + std::to_string(a) + "_" + std::to_string(v));
    bg.attributes.push_back(attr);
  }
  return bg;
}

// Does the grid lie inside the candidate domains?
bool within(const DomainState& s, const Background& bg, const SolutionGrid& g) {
  for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
    for (std::size_t v = 0; v < bg.attributes[a].values.size(); ++v) {
      const int house = *g.house_of(a, bg.attributes[a].values[v]) - 1;
      if (!(s.houses(a, v) >> house & 1U)) return false;
    }
  }
  return true;
}

DomainState state_of(const Background& bg, const SolutionGrid& g) {
  DomainState s(bg.n_houses, bg.attributes.size());
  for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
    for (std::size_t v = 0; v < bg.attributes[a].values.size(); ++v) {
      s.fix(a, v, *g.house_of(a, bg.attributes[a].values[v]) - 1);
    }
  }
  return s;
}

std::vector<Clue> every_clue(const Background& bg) {
  std::vector<Clue> out;
  for (const auto& a : bg.attributes) {
    for (const auto& va : a.values) {
      for (int k = 1; k <= bg.n_houses; ++k) {
        out.push_back(Clue::at(ClueKind::FoundAt, {a.name, va}, k));
        out.push_back(Clue::at(ClueKind::NotFoundAt, {a.name, va}, k));
      }
      for (const auto& b : bg.attributes) {
        for (const auto& vb : b.values) {
          if (a.name == b.name && va == vb) continue;
          for (ClueKind kind : kAllClueKinds) {
            if (!is_house_clue(kind)) out.push_back(Clue::between(kind, {a.name, va}, {b.name, vb}));
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

TEST(DomainState, DualViewsAgree) {
  DomainState s(4, 2);
  s.fix(0, 2, 1);
  EXPECT_TRUE(s.is_fixed(0, 2));
  EXPECT_EQ(s.values(0, 1) & (1U << 2), 1U << 2);
  EXPECT_TRUE(s.remove(1, 0, 3));
  EXPECT_EQ(s.values(1, 3) & 1U, 0U);
  EXPECT_FALSE(s.contradictory());
  s.restrict(1, 0, 0);
  EXPECT_TRUE(s.contradictory());
  EXPECT_THROW(DomainState(33, 1), ConfigError);
}

TEST(PartialEvaluation, FoundAtExamples) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  const Background& bg = p.background;
  const auto milk_at_3 = Clue::at(ClueKind::FoundAt, {"Drink", "milk"}, 3);
  DomainState s(3, 3);
  EXPECT_EQ(evaluate_clue_partial(milk_at_3, bg, s), PartialTruth::Undetermined);
  s.fix(1, 0, 2);  // milk in house 3
  EXPECT_EQ(evaluate_clue_partial(milk_at_3, bg, s), PartialTruth::Satisfied);
  DomainState t(3, 3);
  t.fix(1, 2, 2);  // tea in house 3
  t.remove(1, 0, 2);
  EXPECT_EQ(evaluate_clue_partial(milk_at_3, bg, t), PartialTruth::Violated);
}

TEST(PartialEvaluation, OverlappingLeftOfIsUndetermined) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  DomainState s(3, 3);
  const auto c = Clue::between(ClueKind::LeftOf, {"Name", "Eric"}, {"Hobby", "cooking"});
  EXPECT_EQ(evaluate_clue_partial(c, p.background, s), PartialTruth::Undetermined);
}

TEST(PartialEvaluation, ExactOnTotalAssignments) {
  Rng rng(21);
  for (int n = 2; n <= 5; ++n) {
    const Background bg = small_background(n, 2);
    const auto clues = every_clue(bg);
    for (int trial = 0; trial < 10; ++trial) {
      const SolutionGrid g = random_solution(bg, rng);
      const DomainState s = state_of(bg, g);
      for (const auto& c : clues) {
        const auto truth = evaluate_clue_partial(c, bg, s);
        EXPECT_EQ(truth, evaluate_clue(c, g) ? PartialTruth::Satisfied : PartialTruth::Violated) << describe(c);
      }
    }
  }
}

TEST(PartialEvaluation, SoundOnRandomPartialStates) {
  Rng rng(8);
  const Background bg = small_background(3, 2);
  const auto grids = enumerate_brute_force({}, bg, 1000);
  ASSERT_EQ(grids.size(), 36U);
  const auto clues = every_clue(bg);
  for (int trial = 0; trial < 60; ++trial) {
    DomainState s(3, 2);
    for (int cut = 0; cut < 3; ++cut) s.remove(rng.below(2), rng.below(3), static_cast<int>(rng.below(3)));
    std::vector<const SolutionGrid*> completions;
    for (const auto& g : grids) {
      if (within(s, bg, g)) completions.push_back(&g);
    }
    if (completions.empty()) continue;
    for (const auto& c : clues) {
      const auto truth = evaluate_clue_partial(c, bg, s);
      const bool some = std::any_of(completions.begin(), completions.end(), [&](auto* g) { return evaluate_clue(c, *g); });
      const bool all = std::all_of(completions.begin(), completions.end(), [&](auto* g) { return evaluate_clue(c, *g); });
      if (truth == PartialTruth::Violated) {
        EXPECT_FALSE(some) << describe(c);
      }
      if (truth == PartialTruth::Satisfied) {
        EXPECT_TRUE(all) << describe(c);
      }
    }
  }
}

TEST(Propagate, OneShotExampleIsFixedWithoutSearch) {
  const Puzzle p = gridlogic::testing::one_shot_puzzle();
  auto s = propagate(DomainState(3, 2), p.clues, p.background);
  ASSERT_TRUE(s.has_value());
  ASSERT_TRUE(s->total());
  EXPECT_EQ(SolutionGrid::from_indices(p.background, s->assignment()), p.solution);
}

TEST(Propagate, AllDifferentRemovesFixedValueElsewhere) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  DomainState s(3, 3);
  s.fix(0, 0, 2);  // Eric in house 3
  auto out = propagate(s, {}, p.background);
  ASSERT_TRUE(out.has_value());
  for (int k = 0; k < 2; ++k) EXPECT_EQ(out->values(0, k) & 1U, 0U);
  EXPECT_EQ(out->values(0, 2), 1U);
}

TEST(Propagate, DirectConflictIsContradiction) {
  const Puzzle p = gridlogic::testing::hobbies_puzzle();
  const std::vector<Clue> clues{Clue::at(ClueKind::FoundAt, {"Name", "Eric"}, 1),
                                Clue::at(ClueKind::NotFoundAt, {"Name", "Eric"}, 1)};
  EXPECT_FALSE(propagate(DomainState(3, 3), clues, p.background).has_value());
}

TEST(Propagate, IdempotentAndSound) {
  Rng rng(99);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(3));
    const Background bg = small_background(n, 3);
    const auto pool = every_clue(bg);
    std::vector<Clue> clues;
    for (int i = 0; i < 4; ++i) clues.push_back(pool[rng.below(pool.size())]);
    const auto solutions = enumerate_brute_force(clues, bg, 100000);
    const auto once = propagate(DomainState(n, 3), clues, bg);
    if (!once) {
      EXPECT_TRUE(solutions.empty());
      continue;
    }
    const auto twice = propagate(*once, clues, bg);
    ASSERT_TRUE(twice.has_value());
    for (std::size_t a = 0; a < 3; ++a) {
      for (std::size_t v = 0; v < static_cast<std::size_t>(n); ++v) EXPECT_EQ(once->houses(a, v), twice->houses(a, v));
    }
    for (const auto& g : solutions) EXPECT_TRUE(within(*once, bg, g));
  }
}
