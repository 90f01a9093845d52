#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "gridlogic/core.hpp"

namespace gridlogic {

// Bit k set means 0-based house k is still possible.
using HouseMask = std::uint32_t;

inline constexpr int kMaxHouses = 32;

constexpr HouseMask full_mask(int n_houses) {
  return n_houses >= 32 ? ~HouseMask{0} : (HouseMask{1} << n_houses) - 1;
}

// Candidate houses for every (attribute, value). The per-cell candidate value
// sets are the dual view and are derived from the same bits, so
// "v is a candidate of cell (k, a)" and "k is a candidate of (a, v)" can never
// disagree.
class DomainState {
 public:
  DomainState() = default;

  DomainState(int n_houses, std::size_t n_attributes)
      : n_(n_houses), m_(n_attributes), houses_(static_cast<std::size_t>(n_houses) * n_attributes,
                                                full_mask(n_houses)) {
    if (n_houses < 1 || n_houses > kMaxHouses) throw ConfigError("house count must be in 1..32");
  }

  int n_houses() const { return n_; }
  std::size_t n_attributes() const { return m_; }

  HouseMask houses(std::size_t attr, std::size_t value) const { return houses_[index(attr, value)]; }

  // Candidate values of cell (attr, 0-based house) as a bit set over value indices.
  std::uint32_t values(std::size_t attr, int house) const {
    std::uint32_t out = 0;
    const HouseMask bit = HouseMask{1} << house;
    for (std::size_t v = 0; v < static_cast<std::size_t>(n_); ++v) {
      if (houses_[index(attr, v)] & bit) out |= std::uint32_t{1} << v;
    }
    return out;
  }

  // Narrows (attr, value) to `keep`; returns true if anything was removed.
  bool restrict(std::size_t attr, std::size_t value, HouseMask keep) {
    HouseMask& h = houses_[index(attr, value)];
    const HouseMask next = h & keep;
    if (next == h) return false;
    h = next;
    return true;
  }

  bool remove(std::size_t attr, std::size_t value, int house) {
    return restrict(attr, value, ~(HouseMask{1} << house));
  }

  void fix(std::size_t attr, std::size_t value, int house) {
    houses_[index(attr, value)] = HouseMask{1} << house;
  }

  bool is_fixed(std::size_t attr, std::size_t value) const {
    return std::popcount(houses(attr, value)) == 1;
  }

  bool contradictory() const {
    for (std::size_t a = 0; a < m_; ++a) {
      HouseMask covered = 0;
      for (std::size_t v = 0; v < static_cast<std::size_t>(n_); ++v) {
        const HouseMask h = houses(a, v);
        if (h == 0) return true;
        covered |= h;
      }
      if (covered != full_mask(n_)) return true;
    }
    return false;
  }

  // Every (attribute, value) pinned to one house and each attribute a permutation.
  bool total() const {
    for (std::size_t a = 0; a < m_; ++a) {
      HouseMask used = 0;
      for (std::size_t v = 0; v < static_cast<std::size_t>(n_); ++v) {
        const HouseMask h = houses(a, v);
        if (std::popcount(h) != 1 || (used & h)) return false;
        used |= h;
      }
    }
    return true;
  }

  // perm[a][k] = value index in 0-based house k; requires total().
  std::vector<std::vector<std::size_t>> assignment() const {
    std::vector<std::vector<std::size_t>> perm(m_, std::vector<std::size_t>(static_cast<std::size_t>(n_)));
    for (std::size_t a = 0; a < m_; ++a) {
      for (std::size_t v = 0; v < static_cast<std::size_t>(n_); ++v) {
        perm[a][static_cast<std::size_t>(std::countr_zero(houses(a, v)))] = v;
      }
    }
    return perm;
  }

  bool operator==(const DomainState&) const = default;

 private:
  std::size_t index(std::size_t attr, std::size_t value) const {
    return attr * static_cast<std::size_t>(n_) + value;
  }

  int n_ = 0;
  std::size_t m_ = 0;
  std::vector<HouseMask> houses_;
};

enum class PartialTruth { Satisfied, Violated, Undetermined };

// Three-valued clue evaluation over candidate domains. Exact when the state is total.
inline PartialTruth evaluate_clue_partial(const IndexedClue& clue, const DomainState& state) {
  const HouseMask s1 = state.houses(clue.attr1, clue.val1);
  if (is_house_clue(clue.kind)) {
    const HouseMask bit = HouseMask{1} << clue.house;
    const bool can_be_here = (s1 & bit) != 0;
    const bool must_be_here = s1 == bit;
    if (clue.kind == ClueKind::FoundAt) {
      return must_be_here ? PartialTruth::Satisfied
                          : (can_be_here ? PartialTruth::Undetermined : PartialTruth::Violated);
    }
    return must_be_here ? PartialTruth::Violated
                        : (can_be_here ? PartialTruth::Undetermined : PartialTruth::Satisfied);
  }

  const HouseMask s2 = state.houses(clue.attr2, clue.val2);
  const bool same_attr = clue.attr1 == clue.attr2;
  const bool same_value = same_attr && clue.val1 == clue.val2;
  bool any_true = false;
  bool any_false = false;
  const int n = state.n_houses();
  for (int p1 = 0; p1 < n; ++p1) {
    if (!(s1 >> p1 & 1U)) continue;
    for (int p2 = 0; p2 < n; ++p2) {
      if (!(s2 >> p2 & 1U)) continue;
      // Two values of one attribute occupy different houses; one value occupies one house.
      if (same_value && p1 != p2) continue;
      if (same_attr && !same_value && p1 == p2) continue;
      (positions_satisfy(clue.kind, p1, p2) ? any_true : any_false) = true;
    }
  }
  if (!any_true) return PartialTruth::Violated;
  return any_false ? PartialTruth::Undetermined : PartialTruth::Satisfied;
}

inline PartialTruth evaluate_clue_partial(const Clue& clue, const Background& bg, const DomainState& state) {
  return evaluate_clue_partial(resolve(clue, bg), state);
}

}  // namespace gridlogic
