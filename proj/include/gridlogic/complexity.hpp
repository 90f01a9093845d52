#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gridlogic/core.hpp"
#include "gridlogic/rng.hpp"
#include "gridlogic/solver.hpp"

namespace gridlogic {

using BigInt = boost::multiprecision::cpp_int;

enum class Bucket { Small, Medium, Large, XLarge };

inline constexpr std::array<Bucket, 4> kAllBuckets = {Bucket::Small, Bucket::Medium, Bucket::Large, Bucket::XLarge};

inline constexpr std::string_view to_string(Bucket b) {
  switch (b) {
    case Bucket::Small: return "Small";
    case Bucket::Medium: return "Medium";
    case Bucket::Large: return "Large";
    case Bucket::XLarge: return "X-Large";
  }
  return "?";
}

inline std::optional<Bucket> bucket_from_string(std::string_view s) {
  for (Bucket b : kAllBuckets) {
    if (to_string(b) == s) return b;
  }
  return std::nullopt;
}

// (N!)^M, exact.
inline BigInt search_space_size(int n_houses, int n_attributes) {
  if (n_houses < 1 || n_attributes < 1) throw ConfigError("search space needs N >= 1 and M >= 1");
  BigInt fact = 1;
  for (int i = 2; i <= n_houses; ++i) fact *= i;
  BigInt out = 1;
  for (int i = 0; i < n_attributes; ++i) out *= fact;
  return out;
}

inline double search_space_log10(int n_houses, int n_attributes) {
  if (n_houses < 1 || n_attributes < 1) throw ConfigError("search space needs N >= 1 and M >= 1");
  double log_fact = 0;
  for (int i = 2; i <= n_houses; ++i) log_fact += std::log10(static_cast<double>(i));
  return n_attributes * log_fact;
}

// Small < 10^3 <= Medium < 10^6 <= Large < 10^10 <= X-Large.
inline Bucket bucket(const BigInt& search_space) {
  static const BigInt e3 = 1000;
  static const BigInt e6 = 1000000;
  static const BigInt e10 = BigInt(10000000000ULL);
  if (search_space < e3) return Bucket::Small;
  if (search_space < e6) return Bucket::Medium;
  if (search_space < e10) return Bucket::Large;
  return Bucket::XLarge;
}

inline Bucket bucket_for_size(int n_houses, int n_attributes) {
  return bucket(search_space_size(n_houses, n_attributes));
}

struct ComplexityProfile {
  BigInt search_space;
  double search_space_log10 = 0;
  Bucket bucket = Bucket::Small;
  double mean_conflicts = 0;
  std::size_t runs = 0;
  std::vector<std::uint64_t> per_run_conflicts;

  bool operator==(const ComplexityProfile&) const = default;
};

inline constexpr std::size_t kDefaultProfileRuns = 32;

// Solves the puzzle `runs` times with seeded random value ordering and
// averages the conflict counts. Every run must agree on status and solution.
inline ComplexityProfile profile_conflicts(const Puzzle& puzzle, std::size_t runs, std::uint64_t base_seed) {
  if (runs == 0) throw ConfigError("profile needs at least one run");
  const Background& bg = puzzle.background;
  const auto m = static_cast<int>(bg.n_attributes());
  const auto indexed = resolve_all(puzzle.clues, bg);

  ComplexityProfile out;
  out.search_space = search_space_size(bg.n_houses, m);
  out.search_space_log10 = search_space_log10(bg.n_houses, m);
  out.bucket = bucket(out.search_space);
  out.runs = runs;

  std::optional<IndexedSolveResult> reference;
  for (std::size_t i = 0; i < runs; ++i) {
    SolveConfig cfg;
    cfg.seed = derive_seed(base_seed, i);
    cfg.cap_solutions = 2;
    cfg.randomize_order = true;
    auto r = solve_indexed(bg.n_houses, bg.n_attributes(), indexed, cfg);
    if (!reference) {
      reference = r;
    } else if (r.status != reference->status || r.solutions_found != reference->solutions_found ||
               (r.status == SolveStatus::Unique && r.first_solution != reference->first_solution)) {
      throw ConsistencyError("profile run " + std::to_string(i) + " of " + puzzle.id +
                             " disagrees with run 0");
    }
    out.per_run_conflicts.push_back(r.stats.conflicts);
  }
  double total = 0;
  for (auto c : out.per_run_conflicts) total += static_cast<double>(c);
  out.mean_conflicts = total / static_cast<double>(runs);
  return out;
}

}  // namespace gridlogic
