#pragma once

// Complete finite-domain solver: alldifferent + per-clue propagation
// interleaved with chronological depth-first search. Counts conflicts
// (contradictions reached after a decision) as a hardness signal.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "gridlogic/core.hpp"
#include "gridlogic/domain_state.hpp"
#include "gridlogic/rng.hpp"

namespace gridlogic {

enum class SolveStatus { Unique, Multiple, Unsatisfiable };

inline constexpr std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Unique: return "Unique";
    case SolveStatus::Multiple: return "Multiple";
    case SolveStatus::Unsatisfiable: return "Unsatisfiable";
  }
  return "?";
}

struct SolveConfig {
  std::uint64_t seed = 0;
  std::size_t cap_solutions = 2;
  bool randomize_order = false;
};

struct SolveStats {
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;  // candidate-set narrowings

  bool operator==(const SolveStats&) const = default;
};

struct SolveResult {
  SolveStatus status = SolveStatus::Unsatisfiable;
  std::size_t solutions_found = 0;
  std::optional<SolutionGrid> first_solution;
  std::uint64_t conflicts = 0;
  std::uint64_t decisions = 0;
  std::uint64_t propagations = 0;

  bool operator==(const SolveResult&) const = default;
};

namespace detail {

// Houses p1 that have some partner p2 in `other` with relation(p1, p2).
inline HouseMask supported(ClueKind kind, HouseMask other, HouseMask full) {
  if (other == 0) return 0;
  switch (kind) {
    case ClueKind::SameHouse: return other;
    case ClueKind::NotSameHouse: return std::popcount(other) == 1 ? (full & ~other) : full;
    case ClueKind::DirectLeft: return other >> 1;
    case ClueKind::DirectRight: return (other << 1) & full;
    case ClueKind::SideBySide: return ((other << 1) | (other >> 1)) & full;
    case ClueKind::LeftOf: {
      const int hi = std::bit_width(other) - 1;
      return (HouseMask{1} << hi) - 1;
    }
    case ClueKind::RightOf: {
      const int lo = std::countr_zero(other);
      return full & ~((lo >= 31 ? ~HouseMask{0} : (HouseMask{2} << lo) - 1));
    }
    case ClueKind::OneBetween: return ((other << 2) | (other >> 2)) & full;
    case ClueKind::TwoBetween: return ((other << 3) | (other >> 3)) & full;
    case ClueKind::FoundAt:
    case ClueKind::NotFoundAt: break;
  }
  return full;
}

// The relation seen from the second value's side.
constexpr ClueKind converse(ClueKind kind) {
  switch (kind) {
    case ClueKind::DirectLeft: return ClueKind::DirectRight;
    case ClueKind::DirectRight: return ClueKind::DirectLeft;
    case ClueKind::LeftOf: return ClueKind::RightOf;
    case ClueKind::RightOf: return ClueKind::LeftOf;
    default: return kind;
  }
}

}  // namespace detail

// Compiled clue set for one background shape; reusable across many states.
class Propagator {
 public:
  Propagator(int n_houses, std::size_t n_attributes, std::span<const IndexedClue> clues)
      : n_(n_houses), m_(n_attributes), full_(full_mask(n_houses)),
        watches_(static_cast<std::size_t>(n_houses) * n_attributes) {
    for (const auto& c : clues) {
      if (is_house_clue(c.kind)) {
        unary_.push_back(c);
      } else {
        const auto id = static_cast<std::uint32_t>(binary_.size());
        binary_.push_back(c);
        watches_[var(c.attr1, c.val1)].push_back(id);
        if (var(c.attr2, c.val2) != var(c.attr1, c.val1)) watches_[var(c.attr2, c.val2)].push_back(id);
      }
    }
  }

  int n_houses() const { return n_; }
  std::size_t n_attributes() const { return m_; }

  // Applies every clue and alldifferent to a fixpoint. False on contradiction.
  bool propagate_all(DomainState& s, SolveStats& stats) const {
    Run run(*this, s, stats);
    for (const auto& c : unary_) {
      const HouseMask bit = HouseMask{1} << c.house;
      if (!run.narrow(c.attr1, c.val1, c.kind == ClueKind::FoundAt ? bit : ~bit)) return false;
    }
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t v = 0; v < static_cast<std::size_t>(n_); ++v) run.enqueue(a, v);
    }
    for (std::size_t i = 0; i < binary_.size(); ++i) {
      if (!run.revise(binary_[i])) return false;
    }
    return run.drain();
  }

  // Places value in 0-based house and propagates. False on contradiction.
  bool assign(DomainState& s, std::size_t attr, std::size_t value, int house, SolveStats& stats) const {
    Run run(*this, s, stats);
    if (!run.narrow(attr, value, HouseMask{1} << house)) return false;
    return run.drain();
  }

 private:
  std::size_t var(std::size_t a, std::size_t v) const { return a * static_cast<std::size_t>(n_) + v; }

  // One propagation episode: a work queue of (attribute, value) variables.
  class Run {
   public:
    Run(const Propagator& p, DomainState& s, SolveStats& stats)
        : p_(p), s_(s), stats_(stats), queued_(p.watches_.size(), 0) {}

    void enqueue(std::size_t a, std::size_t v) {
      const std::size_t id = p_.var(a, v);
      if (!queued_[id]) {
        queued_[id] = 1;
        queue_.push_back(id);
      }
    }

    bool narrow(std::size_t a, std::size_t v, HouseMask keep) {
      if (!s_.restrict(a, v, keep)) return true;
      ++stats_.propagations;
      if (s_.houses(a, v) == 0) return false;
      enqueue(a, v);
      return true;
    }

    bool revise(const IndexedClue& c) {
      const HouseMask s2 = s_.houses(c.attr2, c.val2);
      if (!narrow(c.attr1, c.val1, detail::supported(c.kind, s2, p_.full_))) return false;
      const HouseMask s1 = s_.houses(c.attr1, c.val1);
      return narrow(c.attr2, c.val2, detail::supported(detail::converse(c.kind), s1, p_.full_));
    }

    bool drain() {
      const auto n = static_cast<std::size_t>(p_.n_);
      while (head_ < queue_.size()) {
        const std::size_t id = queue_[head_++];
        queued_[id] = 0;
        const std::size_t a = id / n;
        const std::size_t v = id % n;

        // alldifferent: a placed value leaves its house to nobody else.
        const HouseMask h = s_.houses(a, v);
        if (std::popcount(h) == 1) {
          for (std::size_t w = 0; w < n; ++w) {
            if (w != v && !narrow(a, w, ~h)) return false;
          }
        }
        // alldifferent: a house only one value can reach gets that value.
        for (int k = 0; k < p_.n_; ++k) {
          const HouseMask bit = HouseMask{1} << k;
          std::size_t count = 0;
          std::size_t only = 0;
          for (std::size_t w = 0; w < n && count < 2; ++w) {
            if (s_.houses(a, w) & bit) {
              ++count;
              only = w;
            }
          }
          if (count == 0) return false;
          if (count == 1 && !narrow(a, only, bit)) return false;
        }
        for (std::uint32_t cid : p_.watches_[id]) {
          if (!revise(p_.binary_[cid])) return false;
        }
        if (head_ > 4096 && head_ * 2 > queue_.size()) {
          queue_.erase(queue_.begin(), queue_.begin() + static_cast<std::ptrdiff_t>(head_));
          head_ = 0;
        }
      }
      return true;
    }

   private:
    const Propagator& p_;
    DomainState& s_;
    SolveStats& stats_;
    std::vector<std::size_t> queue_;
    std::size_t head_ = 0;
    std::vector<char> queued_;
  };

  int n_;
  std::size_t m_;
  HouseMask full_;
  std::vector<IndexedClue> unary_;
  std::vector<IndexedClue> binary_;
  std::vector<std::vector<std::uint32_t>> watches_;
};

// Fixpoint of alldifferent plus per-clue filtering, or nullopt on contradiction.
inline std::optional<DomainState> propagate(DomainState state, const std::vector<Clue>& clues,
                                            const Background& bg) {
  const auto indexed = resolve_all(clues, bg);
  Propagator prop(state.n_houses(), state.n_attributes(), indexed);
  SolveStats stats;
  if (!prop.propagate_all(state, stats)) return std::nullopt;
  return state;
}

// Search result in index form, used where clues are already resolved.
struct IndexedSolveResult {
  SolveStatus status = SolveStatus::Unsatisfiable;
  std::size_t solutions_found = 0;
  std::optional<std::vector<std::vector<std::size_t>>> first_solution;
  SolveStats stats;
};

class Solver {
 public:
  Solver(int n_houses, std::size_t n_attributes, std::span<const IndexedClue> clues, SolveConfig cfg)
      : prop_(n_houses, n_attributes, clues), cfg_(cfg), rng_(cfg.seed) {
    if (cfg.cap_solutions == 0) throw ConfigError("cap_solutions must be at least 1");
  }

  IndexedSolveResult run() {
    IndexedSolveResult out;
    // The status needs to tell one solution from two, even under cap 1.
    limit_ = std::max<std::size_t>(cfg_.cap_solutions, 2);
    DomainState root(prop_.n_houses(), prop_.n_attributes());
    if (prop_.propagate_all(root, stats_)) search(root);
    out.status = found_ == 0 ? SolveStatus::Unsatisfiable
                             : (found_ == 1 ? SolveStatus::Unique : SolveStatus::Multiple);
    out.solutions_found = std::min(found_, cfg_.cap_solutions);
    out.first_solution = std::move(first_);
    out.stats = stats_;
    return out;
  }

  // Every solution in search order, stopping after `limit`.
  std::vector<std::vector<std::vector<std::size_t>>> enumerate(std::size_t limit) {
    std::vector<std::vector<std::vector<std::size_t>>> all;
    all_ = &all;
    limit_ = limit;
    DomainState root(prop_.n_houses(), prop_.n_attributes());
    if (limit > 0 && prop_.propagate_all(root, stats_)) search(root);
    all_ = nullptr;
    return all;
  }

 private:
  void search(const DomainState& s) {
    // Minimum remaining values over cells, ties by (attribute, house).
    std::size_t best_attr = 0;
    int best_house = -1;
    int best_count = std::numeric_limits<int>::max();
    for (std::size_t a = 0; a < prop_.n_attributes(); ++a) {
      for (int k = 0; k < prop_.n_houses(); ++k) {
        const int c = std::popcount(s.values(a, k));
        if (c > 1 && c < best_count) {
          best_count = c;
          best_attr = a;
          best_house = k;
        }
      }
    }
    if (best_house < 0) {
      if (found_++ == 0) first_ = s.assignment();
      if (all_ != nullptr) all_->push_back(s.assignment());
      return;
    }

    std::vector<std::size_t> order;
    const std::uint32_t vals = s.values(best_attr, best_house);
    for (std::size_t v = 0; v < static_cast<std::size_t>(prop_.n_houses()); ++v) {
      if (vals >> v & 1U) order.push_back(v);
    }
    if (cfg_.randomize_order) rng_.shuffle(std::span(order));

    for (std::size_t v : order) {
      if (found_ >= limit_) return;
      ++stats_.decisions;
      DomainState child = s;
      if (!prop_.assign(child, best_attr, v, best_house, stats_)) {
        ++stats_.conflicts;
        continue;
      }
      search(child);
    }
  }

  Propagator prop_;
  SolveConfig cfg_;
  Rng rng_;
  SolveStats stats_;
  std::size_t found_ = 0;
  std::size_t limit_ = 2;
  std::optional<std::vector<std::vector<std::size_t>>> first_;
  std::vector<std::vector<std::vector<std::size_t>>>* all_ = nullptr;
};

inline IndexedSolveResult solve_indexed(int n_houses, std::size_t n_attributes,
                                        std::span<const IndexedClue> clues, const SolveConfig& cfg) {
  return Solver(n_houses, n_attributes, clues, cfg).run();
}

inline SolveResult solve(const std::vector<Clue>& clues, const Background& bg, const SolveConfig& cfg = {}) {
  if (bg.n_houses < 1 || bg.attributes.empty()) throw ConfigError("background must have houses and attributes");
  const auto indexed = resolve_all(clues, bg);
  auto r = solve_indexed(bg.n_houses, bg.n_attributes(), indexed, cfg);
  SolveResult out;
  out.status = r.status;
  out.solutions_found = r.solutions_found;
  if (r.first_solution) out.first_solution = SolutionGrid::from_indices(bg, *r.first_solution);
  out.conflicts = r.stats.conflicts;
  out.decisions = r.stats.decisions;
  out.propagations = r.stats.propagations;
  return out;
}

// All grids satisfying the clues, at most `limit` of them.
inline std::vector<SolutionGrid> enumerate_solutions(const std::vector<Clue>& clues, const Background& bg,
                                                     std::size_t limit = std::numeric_limits<std::size_t>::max()) {
  if (bg.n_houses < 1 || bg.attributes.empty()) throw ConfigError("background must have houses and attributes");
  const auto indexed = resolve_all(clues, bg);
  std::vector<SolutionGrid> out;
  for (const auto& rows : Solver(bg.n_houses, bg.n_attributes(), indexed, {}).enumerate(limit)) {
    out.push_back(SolutionGrid::from_indices(bg, rows));
  }
  return out;
}

inline std::size_t count_solutions_indexed(int n_houses, std::size_t n_attributes,
                                           std::span<const IndexedClue> clues, std::size_t cap) {
  SolveConfig cfg;
  cfg.cap_solutions = cap;
  return solve_indexed(n_houses, n_attributes, clues, cfg).solutions_found;
}

// min(cap, number of grids satisfying every clue).
inline std::size_t count_solutions(const std::vector<Clue>& clues, const Background& bg, std::size_t cap) {
  SolveConfig cfg;
  cfg.cap_solutions = cap;
  return solve(clues, bg, cfg).solutions_found;
}

}  // namespace gridlogic
