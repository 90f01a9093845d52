#pragma once

// Exhaustive enumeration oracle: walks every combination of per-attribute
// permutations and filters with evaluate_clue, cutting a branch as soon as a
// clue over the attributes fixed so far fails. Shares nothing with the
// propagating solver.

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "gridlogic/core.hpp"

namespace gridlogic {

inline constexpr double kBruteForceLimit = 1e7;

inline std::vector<SolutionGrid> enumerate_brute_force(const std::vector<Clue>& clues, const Background& bg,
                                                       std::size_t limit) {
  if (limit == 0) throw ConfigError("limit must be at least 1");
  const int n = bg.n_houses;
  const std::size_t m = bg.attributes.size();
  if (n < 1 || m == 0) throw ConfigError("background must have houses and attributes");

  double space = 1;
  double fact = 1;
  for (int i = 2; i <= n; ++i) fact *= i;
  for (std::size_t a = 0; a < m; ++a) space *= fact;
  if (space > kBruteForceLimit) {
    throw SizeGuardError("search space too large for brute force (" + std::to_string(space) + " grids)");
  }

  std::vector<std::string> names;
  std::vector<std::vector<std::vector<std::string>>> perms(m);
  for (std::size_t a = 0; a < m; ++a) {
    names.push_back(bg.attributes[a].name);
    auto row = bg.attributes[a].values;
    std::sort(row.begin(), row.end());
    do {
      perms[a].push_back(row);
    } while (std::next_permutation(row.begin(), row.end()));
  }

  // A clue is checked at the first depth where every attribute it names is fixed.
  std::vector<std::vector<const Clue*>> due(m);
  for (const auto& c : clues) {
    std::size_t depth = 0;
    for (const ValueRef* ref : {&c.first, &c.second}) {
      if (is_house_clue(c.kind) && ref == &c.second) continue;
      const auto it = std::find(names.begin(), names.end(), ref->attribute);
      if (it == names.end()) throw ReferenceError("unknown attribute: " + ref->attribute);
      depth = std::max(depth, static_cast<std::size_t>(it - names.begin()));
    }
    due[depth].push_back(&c);
  }

  std::vector<SolutionGrid> out;
  std::vector<std::vector<std::string>> rows;
  const auto walk = [&](const auto& self, std::size_t a) -> bool {
    for (const auto& perm : perms[a]) {
      rows.push_back(perm);
      const SolutionGrid partial(std::vector<std::string>(names.begin(), names.begin() + static_cast<std::ptrdiff_t>(a + 1)),
                                 rows);
      const bool ok = std::all_of(due[a].begin(), due[a].end(), [&](const Clue* c) { return evaluate_clue(*c, partial); });
      if (ok && a + 1 == m) {
        out.push_back(partial);
        if (out.size() >= limit) return true;
      } else if (ok && self(self, a + 1)) {
        return true;
      }
      rows.pop_back();
    }
    return false;
  };
  walk(walk, 0);
  return out;
}

}  // namespace gridlogic
