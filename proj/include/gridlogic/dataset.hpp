#pragma once

// JSON forms of puzzles and the line-per-record dataset file.

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gridlogic/catalog_io.hpp"
#include "gridlogic/complexity.hpp"
#include "gridlogic/core.hpp"
#include "gridlogic/errors.hpp"
#include "gridlogic/render.hpp"

namespace gridlogic {

using ojson = nlohmann::ordered_json;

// ---- clues -------------------------------------------------------------

inline ojson to_json(const Clue& c) {
  ojson args = ojson::array();
  args.push_back(ojson::array({c.first.attribute, c.first.value}));
  if (is_house_clue(c.kind)) {
    args.push_back(c.house);
  } else {
    args.push_back(ojson::array({c.second.attribute, c.second.value}));
  }
  return ojson{{"type", std::string(to_string(c.kind))}, {"args", std::move(args)}};
}

namespace detail {

template <class Json>
ValueRef value_ref_from(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string()) {
    throw SchemaError("clue argument must be an [attribute, value] pair");
  }
  return {j[0].template get<std::string>(), j[1].template get<std::string>()};
}

template <class Json>
const Json& require(const Json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(std::string("missing \"") + key + "\" key");
  return *it;
}

}  // namespace detail

template <class Json>
Clue clue_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("clue must be an object");
  const auto& type = detail::require(j, "type");
  const auto& args = detail::require(j, "args");
  if (!type.is_string()) throw SchemaError("clue type must be text");
  auto kind = clue_kind_from_string(type.template get<std::string>());
  if (!kind) throw SchemaError("unknown clue type " + type.template get<std::string>());
  if (!args.is_array() || args.size() != 2) throw SchemaError("clue args must have two entries");
  if (is_house_clue(*kind)) {
    if (!args[1].is_number_integer()) throw SchemaError("house must be an integer");
    return Clue::at(*kind, detail::value_ref_from(args[0]), args[1].template get<int>());
  }
  return Clue::between(*kind, detail::value_ref_from(args[0]), detail::value_ref_from(args[1]));
}

// ---- background and grid -------------------------------------------------

inline ojson to_json(const Background& bg) {
  ojson attrs = ojson::array();
  for (const auto& a : bg.attributes) attrs.push_back(ojson{{"name", a.name}, {"values", a.values}});
  return ojson{{"n_houses", bg.n_houses}, {"attributes", std::move(attrs)}};
}

template <class Json>
Background background_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("background must be an object");
  Background bg;
  const auto& n = detail::require(j, "n_houses");
  if (!n.is_number_integer()) throw SchemaError("n_houses must be an integer");
  bg.n_houses = n.template get<int>();
  const auto& attrs = detail::require(j, "attributes");
  if (!attrs.is_array()) throw SchemaError("attributes must be an array");
  for (const auto& a : attrs) {
    if (!a.is_object()) throw SchemaError("attribute must be an object");
    const auto& name = detail::require(a, "name");
    const auto& values = detail::require(a, "values");
    if (!name.is_string() || !values.is_array()) throw SchemaError("attribute needs a name and a value list");
    Attribute attr{std::string(trim(name.template get<std::string>())), {}};
    for (const auto& v : values) {
      if (!v.is_string()) throw SchemaError("attribute values must be text");
      attr.values.emplace_back(trim(v.template get<std::string>()));
    }
    bg.attributes.push_back(std::move(attr));
  }
  return bg;
}

// {"House 1": {"Name": ..., ...}, ...}, houses and attributes in background order.
inline ojson to_json(const SolutionGrid& g) {
  ojson out = ojson::object();
  for (int k = 1; k <= g.n_houses(); ++k) {
    ojson house = ojson::object();
    for (std::size_t a = 0; a < g.n_attributes(); ++a) house[g.attributes()[a]] = g.at(k, a);
    out[house_key(k)] = std::move(house);
  }
  return out;
}

template <class Json>
SolutionGrid solution_from_json(const Json& j, const Background& bg) {
  if (!j.is_object()) throw SchemaError("solution must be an object");
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> rows(bg.attributes.size(),
                                             std::vector<std::string>(static_cast<std::size_t>(bg.n_houses)));
  for (const auto& a : bg.attributes) names.push_back(a.name);
  if (j.size() != static_cast<std::size_t>(bg.n_houses)) throw SchemaError("solution must list every house");
  for (int k = 1; k <= bg.n_houses; ++k) {
    auto it = j.find(house_key(k));
    if (it == j.end() || !it->is_object()) throw SchemaError("solution lacks " + house_key(k));
    if (it->size() != bg.attributes.size()) throw SchemaError(house_key(k) + " must list every attribute");
    for (std::size_t a = 0; a < bg.attributes.size(); ++a) {
      auto v = it->find(bg.attributes[a].name);
      if (v == it->end() || !v->is_string()) {
        throw SchemaError(house_key(k) + " lacks attribute " + bg.attributes[a].name);
      }
      // Canonical spelling is the background's.
      std::string text(trim(v->template get<std::string>()));
      for (const auto& cand : bg.attributes[a].values) {
        if (canonical_equal(cand, text)) text = cand;
      }
      rows[a][static_cast<std::size_t>(k - 1)] = std::move(text);
    }
  }
  return SolutionGrid(std::move(names), std::move(rows));
}

// ---- puzzle files ----------------------------------------------------------

inline ojson to_json(const Puzzle& p) {
  ojson clues = ojson::array();
  for (const auto& c : p.clues) clues.push_back(to_json(c));
  return ojson{{"id", p.id},
               {"background", to_json(p.background)},
               {"clues", std::move(clues)},
               {"solution", to_json(p.solution)},
               {"seed", p.seed}};
}

// Reads the puzzle fields of a puzzle file or dataset record. "solution" and
// "seed" may be absent when `require_solution` is false.
template <class Json>
Puzzle puzzle_from_json(const Json& j, bool require_solution = true) {
  if (!j.is_object()) throw SchemaError("puzzle must be an object");
  Puzzle p;
  if (auto it = j.find("id"); it != j.end()) {
    if (!it->is_string()) throw SchemaError("id must be text");
    p.id = it->template get<std::string>();
  }
  p.background = background_from_json(detail::require(j, "background"));
  const auto& clues = detail::require(j, "clues");
  if (!clues.is_array()) throw SchemaError("clues must be an array");
  try {
    for (const auto& c : clues) p.clues.push_back(canonicalize_clue(clue_from_json(c), p.background));
  } catch (const ReferenceError& e) {
    throw SchemaError(std::string("clue reference: ") + e.what());
  }
  if (auto it = j.find("solution"); it != j.end()) {
    p.solution = solution_from_json(*it, p.background);
  } else if (require_solution) {
    throw SchemaError("missing \"solution\" key");
  }
  if (auto it = j.find("seed"); it != j.end()) {
    if (!it->is_number_unsigned() && !it->is_number_integer()) throw SchemaError("seed must be an integer");
    p.seed = it->template get<std::uint64_t>();
  }
  return p;
}

// ---- dataset records -------------------------------------------------------

struct DatasetRecord {
  std::string id;
  std::string size;  // "N*M"
  std::string puzzle_text;
  Background background;
  std::vector<Clue> clues;
  SolutionGrid solution;
  double search_space_log10 = 0;
  std::string bucket;
  double mean_conflicts = 0;
  std::uint64_t seed = 0;

  Puzzle puzzle() const { return Puzzle{id, background, clues, solution, seed}; }

  bool operator==(const DatasetRecord&) const = default;
};

inline std::string size_label(int n_houses, std::size_t n_attributes) {
  return std::to_string(n_houses) + "*" + std::to_string(n_attributes);
}

inline DatasetRecord make_record(const Puzzle& p, const ComplexityProfile& profile,
                                 const Phrasebook& phrases = default_catalog().phrases) {
  DatasetRecord r;
  r.id = p.id;
  r.size = size_label(p.background.n_houses, p.background.n_attributes());
  r.puzzle_text = render_puzzle_text(p.background, p.clues, phrases);
  r.background = p.background;
  r.clues = p.clues;
  r.solution = p.solution;
  r.search_space_log10 = profile.search_space_log10;
  r.bucket = std::string(to_string(profile.bucket));
  r.mean_conflicts = profile.mean_conflicts;
  r.seed = p.seed;
  return r;
}

inline ojson to_json(const DatasetRecord& r) {
  ojson clues = ojson::array();
  for (const auto& c : r.clues) clues.push_back(to_json(c));
  return ojson{{"id", r.id},
               {"size", r.size},
               {"puzzle_text", r.puzzle_text},
               {"background", to_json(r.background)},
               {"clues", std::move(clues)},
               {"solution", to_json(r.solution)},
               {"search_space_log10", r.search_space_log10},
               {"bucket", r.bucket},
               {"mean_conflicts", r.mean_conflicts},
               {"seed", r.seed}};
}

inline constexpr std::array<const char*, 10> kRecordKeys = {
    "id", "size", "puzzle_text", "background", "clues", "solution", "search_space_log10", "bucket",
    "mean_conflicts", "seed"};

inline DatasetRecord record_from_json(const ojson& j) {
  if (!j.is_object()) throw SchemaError("record must be an object");
  for (const char* key : kRecordKeys) detail::require(j, key);
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find_if(kRecordKeys.begin(), kRecordKeys.end(), [&](const char* k) { return it.key() == k; }) ==
        kRecordKeys.end()) {
      throw SchemaError("unexpected key \"" + it.key() + "\"");
    }
  }
  auto text = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_string()) throw SchemaError(std::string(key) + " must be text");
    return v.get<std::string>();
  };
  auto number = [&](const char* key) {
    const auto& v = j.at(key);
    if (!v.is_number()) throw SchemaError(std::string(key) + " must be a number");
    return v.get<double>();
  };

  const Puzzle p = puzzle_from_json(j);
  DatasetRecord r;
  r.id = text("id");
  r.size = text("size");
  r.puzzle_text = text("puzzle_text");
  r.background = p.background;
  r.clues = p.clues;
  r.solution = p.solution;
  r.search_space_log10 = number("search_space_log10");
  r.bucket = text("bucket");
  if (!bucket_from_string(r.bucket)) throw SchemaError("unknown bucket " + r.bucket);
  r.mean_conflicts = number("mean_conflicts");
  r.seed = p.seed;
  if (r.size != size_label(r.background.n_houses, r.background.n_attributes())) {
    throw SchemaError("size " + r.size + " does not match the background");
  }
  if (auto defects = validate_puzzle(r.puzzle()); !defects.empty()) throw SchemaError(defects.front());
  return r;
}

inline std::string dataset_line(const DatasetRecord& r) { return to_json(r).dump(); }

inline DatasetRecord parse_dataset_line(std::string_view line, std::size_t line_no) {
  auto j = ojson::parse(line, nullptr, false);
  if (j.is_discarded()) throw SchemaError("malformed JSON", line_no);
  try {
    return record_from_json(j);
  } catch (const SchemaError& e) {
    throw SchemaError(e.what(), line_no);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(e.what(), line_no);
  }
}

inline void write_dataset(std::ostream& out, const std::vector<DatasetRecord>& records) {
  for (const auto& r : records) out << dataset_line(r) << '\n';
}

inline void write_dataset(const std::string& path, const std::vector<DatasetRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  write_dataset(out, records);
  if (!out) throw IoError("write to " + path + " failed");
}

inline std::vector<DatasetRecord> read_dataset(std::istream& in) {
  std::vector<DatasetRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    out.push_back(parse_dataset_line(line, line_no));
  }
  return out;
}

inline std::vector<DatasetRecord> read_dataset(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return read_dataset(in);
}

}  // namespace gridlogic
