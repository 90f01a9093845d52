#pragma once

// Puzzle domain model: backgrounds, solution grids, and the semantics of the
// eleven clue variants.

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "gridlogic/errors.hpp"
#include "gridlogic/text_util.hpp"

namespace gridlogic {

enum class ClueKind : std::uint8_t {
  FoundAt,
  NotFoundAt,
  SameHouse,
  NotSameHouse,
  DirectLeft,
  DirectRight,
  SideBySide,
  LeftOf,
  RightOf,
  OneBetween,
  TwoBetween,
};

inline constexpr std::size_t kClueKindCount = 11;

inline constexpr std::array<ClueKind, kClueKindCount> kAllClueKinds = {
    ClueKind::FoundAt,     ClueKind::NotFoundAt, ClueKind::SameHouse, ClueKind::NotSameHouse,
    ClueKind::DirectLeft,  ClueKind::DirectRight, ClueKind::SideBySide, ClueKind::LeftOf,
    ClueKind::RightOf,     ClueKind::OneBetween, ClueKind::TwoBetween,
};

inline constexpr std::string_view to_string(ClueKind kind) {
  constexpr std::array<std::string_view, kClueKindCount> names = {
      "FoundAt", "NotFoundAt", "SameHouse",  "NotSameHouse", "DirectLeft", "DirectRight",
      "SideBySide", "LeftOf", "RightOf", "OneBetween", "TwoBetween",
  };
  return names[static_cast<std::size_t>(kind)];
}

inline std::optional<ClueKind> clue_kind_from_string(std::string_view name) {
  for (ClueKind k : kAllClueKinds) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

// FoundAt and NotFoundAt relate one value to a house; every other kind relates two values.
constexpr bool is_house_clue(ClueKind kind) {
  return kind == ClueKind::FoundAt || kind == ClueKind::NotFoundAt;
}

// True iff the relation holds for positions p1, p2 (1-based or 0-based). For
// FoundAt and NotFoundAt, p2 is the house.
constexpr bool positions_satisfy(ClueKind kind, int p1, int p2) {
  const int d = p1 > p2 ? p1 - p2 : p2 - p1;
  switch (kind) {
    case ClueKind::SameHouse: return p1 == p2;
    case ClueKind::NotSameHouse: return p1 != p2;
    case ClueKind::DirectLeft: return p1 + 1 == p2;
    case ClueKind::DirectRight: return p1 == p2 + 1;
    case ClueKind::SideBySide: return d == 1;
    case ClueKind::LeftOf: return p1 < p2;
    case ClueKind::RightOf: return p1 > p2;
    case ClueKind::OneBetween: return d == 2;
    case ClueKind::TwoBetween: return d == 3;
    case ClueKind::FoundAt: return p1 == p2;
    case ClueKind::NotFoundAt: return p1 != p2;
  }
  return false;
}

// Kinds whose meaning does not change when the two values are swapped.
constexpr bool is_symmetric(ClueKind kind) {
  switch (kind) {
    case ClueKind::SameHouse:
    case ClueKind::NotSameHouse:
    case ClueKind::SideBySide:
    case ClueKind::OneBetween:
    case ClueKind::TwoBetween: return true;
    default: return false;
  }
}

struct ValueRef {
  std::string attribute;
  std::string value;

  auto operator<=>(const ValueRef&) const = default;
};

struct Clue {
  ClueKind kind = ClueKind::FoundAt;
  ValueRef first;
  ValueRef second;  // two-value kinds only
  int house = 0;    // 1-based; house kinds only

  static Clue at(ClueKind kind, ValueRef value, int house) {
    if (!is_house_clue(kind)) throw std::invalid_argument("clue kind takes two values");
    return Clue{kind, std::move(value), {}, house};
  }

  static Clue between(ClueKind kind, ValueRef a, ValueRef b) {
    if (is_house_clue(kind)) throw std::invalid_argument("clue kind takes a value and a house");
    return Clue{kind, std::move(a), std::move(b), 0};
  }

  auto operator<=>(const Clue&) const = default;
};

struct Attribute {
  std::string name;
  std::vector<std::string> values;

  bool operator==(const Attribute&) const = default;
};

struct Background {
  int n_houses = 0;
  std::vector<Attribute> attributes;

  std::size_t n_attributes() const { return attributes.size(); }

  std::optional<std::size_t> attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes.size(); ++i) {
      if (attributes[i].name == name) return i;
    }
    return std::nullopt;
  }

  std::optional<std::size_t> value_index(std::size_t attribute, std::string_view value) const {
    const auto& vals = attributes.at(attribute).values;
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i] == value) return i;
    }
    return std::nullopt;
  }

  bool operator==(const Background&) const = default;
};

// Pool of attributes (each with at least six candidate values) puzzles are sampled from.
class AttributeCatalog {
 public:
  static constexpr std::size_t kMinValues = 6;

  AttributeCatalog() = default;

  explicit AttributeCatalog(std::vector<Attribute> entries) : entries_(std::move(entries)) {
    std::set<std::string> names;
    for (const auto& e : entries_) {
      if (!names.insert(e.name).second) throw ConfigError("duplicate catalog attribute: " + e.name);
      if (e.values.size() < kMinValues) {
        throw ConfigError("catalog attribute " + e.name + " has fewer than " +
                          std::to_string(kMinValues) + " values");
      }
      std::set<std::string> seen;
      for (const auto& v : e.values) {
        if (!seen.insert(v).second) throw ConfigError("duplicate value " + v + " in " + e.name);
      }
    }
    if (!names.contains("Name")) throw ConfigError("catalog lacks the Name attribute");
  }

  const std::vector<Attribute>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  std::size_t min_value_count() const {
    std::size_t m = entries_.empty() ? 0 : entries_.front().values.size();
    for (const auto& e : entries_) m = std::min(m, e.values.size());
    return m;
  }

  const Attribute* find(std::string_view name) const {
    for (const auto& e : entries_) {
      if (e.name == name) return &e;
    }
    return nullptr;
  }

 private:
  std::vector<Attribute> entries_;
};

// One value per (house, attribute). Rows are stored per attribute.
class SolutionGrid {
 public:
  SolutionGrid() = default;

  // rows[a][k - 1] is the value of attribute a in house k.
  SolutionGrid(std::vector<std::string> attributes, std::vector<std::vector<std::string>> rows)
      : attributes_(std::move(attributes)), rows_(std::move(rows)) {
    if (attributes_.size() != rows_.size()) throw std::invalid_argument("grid rows do not match attributes");
    for (const auto& r : rows_) {
      if (r.size() != rows_.front().size()) throw std::invalid_argument("ragged grid rows");
    }
  }

  // perm[a][k] is the index (into background values of attribute a) placed in 0-based house k.
  static SolutionGrid from_indices(const Background& bg,
                                   const std::vector<std::vector<std::size_t>>& perm) {
    std::vector<std::string> names;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
      names.push_back(bg.attributes[a].name);
      std::vector<std::string> row;
      for (std::size_t idx : perm.at(a)) row.push_back(bg.attributes[a].values.at(idx));
      rows.push_back(std::move(row));
    }
    return SolutionGrid(std::move(names), std::move(rows));
  }

  int n_houses() const { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }
  std::size_t n_attributes() const { return attributes_.size(); }
  const std::vector<std::string>& attributes() const { return attributes_; }
  const std::vector<std::string>& row(std::size_t attribute) const { return rows_.at(attribute); }

  std::optional<std::size_t> attribute_index(std::string_view name) const {
    for (std::size_t i = 0; i < attributes_.size(); ++i) {
      if (attributes_[i] == name) return i;
    }
    return std::nullopt;
  }

  const std::string& at(int house, std::size_t attribute) const {
    return rows_.at(attribute).at(static_cast<std::size_t>(house - 1));
  }

  const std::string& at(int house, std::string_view attribute) const {
    auto a = attribute_index(attribute);
    if (!a) throw ReferenceError("unknown attribute: " + std::string(attribute));
    if (house < 1 || house > n_houses()) throw ReferenceError("house out of range: " + std::to_string(house));
    return at(house, *a);
  }

  // 1-based house holding the value, if any.
  std::optional<int> house_of(std::size_t attribute, std::string_view value) const {
    const auto& r = rows_.at(attribute);
    for (std::size_t k = 0; k < r.size(); ++k) {
      if (r[k] == value) return static_cast<int>(k + 1);
    }
    return std::nullopt;
  }

  bool operator==(const SolutionGrid&) const = default;

 private:
  std::vector<std::string> attributes_;
  std::vector<std::vector<std::string>> rows_;
};

struct Puzzle {
  std::string id;
  Background background;
  std::vector<Clue> clues;
  SolutionGrid solution;
  std::uint64_t seed = 0;
};

namespace detail {

inline int locate(const SolutionGrid& grid, const ValueRef& ref) {
  auto a = grid.attribute_index(ref.attribute);
  if (!a) throw ReferenceError("unknown attribute: " + ref.attribute);
  auto k = grid.house_of(*a, ref.value);
  if (!k) throw ReferenceError("unknown value " + ref.value + " for attribute " + ref.attribute);
  return *k;
}

}  // namespace detail

inline bool evaluate_clue(const Clue& clue, const SolutionGrid& grid) {
  if (is_house_clue(clue.kind)) {
    if (clue.house < 1 || clue.house > grid.n_houses()) {
      throw ReferenceError("house out of range: " + std::to_string(clue.house));
    }
    const bool here = detail::locate(grid, clue.first) == clue.house;
    return clue.kind == ClueKind::FoundAt ? here : !here;
  }
  return positions_satisfy(clue.kind, detail::locate(grid, clue.first), detail::locate(grid, clue.second));
}

// Index form of a clue against a specific background. Houses are 0-based.
struct IndexedClue {
  ClueKind kind = ClueKind::FoundAt;
  std::size_t attr1 = 0;
  std::size_t val1 = 0;
  std::size_t attr2 = 0;
  std::size_t val2 = 0;
  int house = 0;
};

inline IndexedClue resolve(const Clue& clue, const Background& bg) {
  auto lookup = [&bg](const ValueRef& ref) {
    auto a = bg.attribute_index(ref.attribute);
    if (!a) throw ReferenceError("unknown attribute: " + ref.attribute);
    auto v = bg.value_index(*a, ref.value);
    if (!v) throw ReferenceError("unknown value " + ref.value + " for attribute " + ref.attribute);
    return std::pair{*a, *v};
  };
  IndexedClue out;
  out.kind = clue.kind;
  std::tie(out.attr1, out.val1) = lookup(clue.first);
  if (is_house_clue(clue.kind)) {
    if (clue.house < 1 || clue.house > bg.n_houses) {
      throw ReferenceError("house out of range: " + std::to_string(clue.house));
    }
    out.house = clue.house - 1;
  } else {
    std::tie(out.attr2, out.val2) = lookup(clue.second);
  }
  return out;
}

inline std::vector<IndexedClue> resolve_all(const std::vector<Clue>& clues, const Background& bg) {
  std::vector<IndexedClue> out;
  out.reserve(clues.size());
  for (const auto& c : clues) out.push_back(resolve(c, bg));
  return out;
}

// Maps attribute and value spellings onto the background's exact spelling
// (trim + case-fold match). Applied once where clues enter the system.
inline Clue canonicalize_clue(Clue clue, const Background& bg) {
  auto fix = [&bg](ValueRef& ref) {
    for (const auto& attr : bg.attributes) {
      if (!canonical_equal(attr.name, ref.attribute)) continue;
      ref.attribute = attr.name;
      for (const auto& v : attr.values) {
        if (canonical_equal(v, ref.value)) {
          ref.value = v;
          return;
        }
      }
      throw ReferenceError("unknown value " + ref.value + " for attribute " + ref.attribute);
    }
    throw ReferenceError("unknown attribute: " + ref.attribute);
  };
  fix(clue.first);
  if (!is_house_clue(clue.kind)) fix(clue.second);
  return clue;
}

inline std::string describe(const Clue& clue) {
  std::string s(to_string(clue.kind));
  s += "(" + clue.first.attribute + "=" + clue.first.value;
  if (is_house_clue(clue.kind)) {
    s += ", house " + std::to_string(clue.house);
  } else {
    s += ", " + clue.second.attribute + "=" + clue.second.value;
  }
  return s + ")";
}

// Structural and semantic defects of a puzzle; empty means valid.
inline std::vector<std::string> validate_puzzle(const Puzzle& p) {
  std::vector<std::string> defects;
  const Background& bg = p.background;
  const int n = bg.n_houses;
  if (n < 1) defects.push_back("house count must be positive");
  if (bg.attributes.empty()) defects.push_back("background has no attributes");

  std::set<std::string> names;
  for (const auto& attr : bg.attributes) {
    if (!names.insert(attr.name).second) defects.push_back("duplicate attribute " + attr.name);
    if (static_cast<int>(attr.values.size()) != n) {
      defects.push_back("attribute " + attr.name + ": value count " + std::to_string(attr.values.size()) +
                        " != N (" + std::to_string(n) + ")");
    }
    std::set<std::string> vals(attr.values.begin(), attr.values.end());
    if (vals.size() != attr.values.size()) defects.push_back("attribute " + attr.name + " repeats a value");
  }

  bool grid_ok = true;
  const SolutionGrid& g = p.solution;
  if (g.n_houses() != n || g.n_attributes() != bg.attributes.size()) {
    defects.push_back("solution shape does not match background");
    grid_ok = false;
  } else {
    for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
      if (g.attributes()[a] != bg.attributes[a].name) {
        defects.push_back("solution attribute order differs at " + bg.attributes[a].name);
        grid_ok = false;
        continue;
      }
      auto row = g.row(a);
      auto expect = bg.attributes[a].values;
      std::sort(row.begin(), row.end());
      std::sort(expect.begin(), expect.end());
      if (row != expect) {
        defects.push_back("solution row " + bg.attributes[a].name + " is not a permutation of its values");
        grid_ok = false;
      }
    }
  }

  for (std::size_t i = 0; i < p.clues.size(); ++i) {
    const Clue& c = p.clues[i];
    const std::string label = "clue " + std::to_string(i + 1);
    try {
      resolve(c, bg);
    } catch (const ReferenceError& e) {
      defects.push_back(label + ": " + e.what());
      continue;
    }
    if (!is_house_clue(c.kind) && c.first == c.second) {
      defects.push_back(label + ": references the same value twice");
    }
    if (grid_ok && !evaluate_clue(c, g)) {
      defects.push_back(label + " violated by solution: " + describe(c));
    }
  }
  return defects;
}

}  // namespace gridlogic
