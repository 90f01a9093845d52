#pragma once

// Puzzle synthesis: sample a background, plant a random solution, enumerate
// every clue true of it, then strip clues under a uniqueness oracle until the
// set is 1-minimal.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "gridlogic/core.hpp"
#include "gridlogic/domain_state.hpp"
#include "gridlogic/rng.hpp"
#include "gridlogic/solver.hpp"

namespace gridlogic {

// Relative probability of each clue kind being picked for removal.
struct RemovalWeights {
  std::array<double, kClueKindCount> by_kind{};

  static RemovalWeights defaults() {
    RemovalWeights w;
    w.set(ClueKind::FoundAt, 4.0);
    w.set(ClueKind::NotFoundAt, 1.0);
    w.set(ClueKind::SameHouse, 3.0);
    w.set(ClueKind::NotSameHouse, 1.0);
    for (ClueKind k : {ClueKind::DirectLeft, ClueKind::DirectRight, ClueKind::SideBySide, ClueKind::LeftOf,
                       ClueKind::RightOf, ClueKind::OneBetween, ClueKind::TwoBetween}) {
      w.set(k, 1.0);
    }
    return w;
  }

  double operator[](ClueKind k) const { return by_kind[static_cast<std::size_t>(k)]; }
  void set(ClueKind k, double weight) { by_kind[static_cast<std::size_t>(k)] = weight; }
};

struct GeneratorConfig {
  int n_houses = 3;
  int n_attributes = 3;
  std::uint64_t seed = 0;
  RemovalWeights removal_weights = RemovalWeights::defaults();
  AttributeCatalog catalog;

  void validate() const {
    for (ClueKind k : kAllClueKinds) {
      const double w = removal_weights[k];
      if (!(w > 0) || !std::isfinite(w)) {
        throw ConfigError("removal weight for " + std::string(to_string(k)) + " must be positive");
      }
    }
    if (catalog.find("Name") == nullptr) throw ConfigError("catalog lacks the Name attribute");
    if (n_houses < 1 || n_houses > kMaxHouses) throw ConfigError("house count must be in 1..32");
    if (static_cast<std::size_t>(n_houses) > catalog.min_value_count()) {
      throw ConfigError(std::to_string(n_houses) + " houses exceed the catalog's smallest value list (" +
                        std::to_string(catalog.min_value_count()) + ")");
    }
    if (n_attributes < 1 || static_cast<std::size_t>(n_attributes) > catalog.size()) {
      throw ConfigError("attribute count must be in 1.." + std::to_string(catalog.size()));
    }
  }
};

// Name plus M-1 other attributes, each with N sampled values.
inline Background sample_attributes(const GeneratorConfig& cfg, Rng& rng) {
  cfg.validate();
  const auto& entries = cfg.catalog.entries();
  std::vector<std::size_t> others;
  std::size_t name_idx = 0;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].name == "Name") {
      name_idx = i;
    } else {
      others.push_back(i);
    }
  }
  rng.shuffle(std::span(others));

  std::vector<std::size_t> chosen{name_idx};
  chosen.insert(chosen.end(), others.begin(), others.begin() + (cfg.n_attributes - 1));

  Background bg;
  bg.n_houses = cfg.n_houses;
  for (std::size_t idx : chosen) {
    std::vector<std::string> pool = entries[idx].values;
    rng.shuffle(std::span(pool));
    pool.resize(static_cast<std::size_t>(cfg.n_houses));
    bg.attributes.push_back({entries[idx].name, std::move(pool)});
  }
  return bg;
}

// Independent uniform permutation per attribute.
inline SolutionGrid random_solution(const Background& bg, Rng& rng) {
  std::vector<std::vector<std::size_t>> perm;
  for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
    std::vector<std::size_t> row(static_cast<std::size_t>(bg.n_houses));
    std::iota(row.begin(), row.end(), std::size_t{0});
    rng.shuffle(std::span(row));
    perm.push_back(std::move(row));
  }
  return SolutionGrid::from_indices(bg, perm);
}

// A background whose value lists are the grid's rows.
inline Background background_of(const SolutionGrid& grid) {
  Background bg;
  bg.n_houses = grid.n_houses();
  for (std::size_t a = 0; a < grid.n_attributes(); ++a) bg.attributes.push_back({grid.attributes()[a], grid.row(a)});
  return bg;
}

// Every clue instance, of every kind, that holds on the grid. Two-value
// clues only pair values of different attributes; symmetric kinds appear once
// per unordered pair.
inline std::vector<Clue> generate_candidate_clues(const SolutionGrid& grid) {
  const int n = grid.n_houses();
  const std::size_t m = grid.n_attributes();
  std::vector<Clue> out;
  auto ref = [&grid](std::size_t a, int house) { return ValueRef{grid.attributes()[a], grid.at(house, a)}; };

  for (std::size_t a = 0; a < m; ++a) {
    for (int k = 1; k <= n; ++k) out.push_back(Clue::at(ClueKind::FoundAt, ref(a, k), k));
  }
  for (std::size_t a = 0; a < m; ++a) {
    for (int p = 1; p <= n; ++p) {
      for (int k = 1; k <= n; ++k) {
        if (k != p) out.push_back(Clue::at(ClueKind::NotFoundAt, ref(a, p), k));
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      for (int p = 1; p <= n; ++p) {
        for (int q = 1; q <= n; ++q) {
          const ValueRef u = ref(i, p);
          const ValueRef w = ref(j, q);
          if (p == q) {
            out.push_back(Clue::between(ClueKind::SameHouse, u, w));
            continue;
          }
          out.push_back(Clue::between(ClueKind::NotSameHouse, u, w));
          const ValueRef& left = p < q ? u : w;
          const ValueRef& right = p < q ? w : u;
          out.push_back(Clue::between(ClueKind::LeftOf, left, right));
          out.push_back(Clue::between(ClueKind::RightOf, right, left));
          switch (std::abs(p - q)) {
            case 1:
              out.push_back(Clue::between(ClueKind::DirectLeft, left, right));
              out.push_back(Clue::between(ClueKind::DirectRight, right, left));
              out.push_back(Clue::between(ClueKind::SideBySide, u, w));
              break;
            case 2: out.push_back(Clue::between(ClueKind::OneBetween, u, w)); break;
            case 3: out.push_back(Clue::between(ClueKind::TwoBetween, u, w)); break;
            default: break;
          }
        }
      }
    }
  }
  return out;
}

// Removes clues (picked by weighted sampling without replacement within a
// pass) while the grid stays the unique solution. A failed removal locks the
// clue for the rest of the pass; passes repeat until one removes nothing, so
// the result is 1-minimal.
inline std::vector<Clue> minimize_clues(const SolutionGrid& grid, const std::vector<Clue>& clues,
                                        const GeneratorConfig& cfg, Rng& rng) {
  const Background bg = background_of(grid);
  const auto indexed = resolve_all(clues, bg);
  const int n = bg.n_houses;
  const std::size_t m = bg.n_attributes();

  {
    SolveConfig sc;
    sc.cap_solutions = 2;
    auto r = solve_indexed(n, m, indexed, sc);
    if (r.status != SolveStatus::Unique ||
        SolutionGrid::from_indices(bg, *r.first_solution) != grid) {
      throw ConfigError("clue set does not uniquely determine the grid");
    }
  }

  std::vector<char> alive(indexed.size(), 1);
  std::vector<IndexedClue> trial;
  trial.reserve(indexed.size());
  bool removed_any = true;
  while (removed_any) {
    removed_any = false;
    // Efraimidis-Spirakis keys: ordering by log(u)/w descending is weighted sampling without replacement.
    std::vector<std::pair<double, std::size_t>> order;
    for (std::size_t i = 0; i < indexed.size(); ++i) {
      if (alive[i]) order.emplace_back(std::log(rng.open01()) / cfg.removal_weights[indexed[i].kind], i);
    }
    std::sort(order.begin(), order.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    for (const auto& [key, i] : order) {
      trial.clear();
      for (std::size_t j = 0; j < indexed.size(); ++j) {
        if (alive[j] && j != i) trial.push_back(indexed[j]);
      }
      if (count_solutions_indexed(n, m, trial, 2) == 1) {
        alive[i] = 0;
        removed_any = true;
      }
    }
  }

  std::vector<Clue> out;
  for (std::size_t i = 0; i < clues.size(); ++i) {
    if (alive[i]) out.push_back(clues[i]);
  }
  return out;
}

inline std::string puzzle_id(int n_houses, int n_attributes, std::uint64_t seed) {
  return "lgp-" + std::to_string(n_houses) + "x" + std::to_string(n_attributes) + "-" + std::to_string(seed);
}

inline Puzzle generate_puzzle(const GeneratorConfig& cfg) {
  cfg.validate();
  Rng rng(cfg.seed);
  Puzzle p;
  p.id = puzzle_id(cfg.n_houses, cfg.n_attributes, cfg.seed);
  p.seed = cfg.seed;
  p.background = sample_attributes(cfg, rng);
  p.solution = random_solution(p.background, rng);
  p.clues = minimize_clues(p.solution, generate_candidate_clues(p.solution), cfg, rng);

  // Presentation only: random clue order and random orientation of symmetric clues.
  rng.shuffle(std::span(p.clues));
  for (auto& c : p.clues) {
    if (is_symmetric(c.kind) && (rng.next() & 1U)) std::swap(c.first, c.second);
  }

  if (auto defects = validate_puzzle(p); !defects.empty()) {
    throw ConsistencyError("generated puzzle " + p.id + " is invalid: " + defects.front());
  }
  return p;
}

}  // namespace gridlogic
