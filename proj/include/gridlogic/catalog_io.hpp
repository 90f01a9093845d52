#pragma once

// Attribute catalog and English phrasing, loaded from a JSON data file. The
// shipped data/catalog.json is compiled in as the default; any other file with
// the same layout can replace it at runtime.

#include <array>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "gridlogic/core.hpp"
#include "gridlogic/default_catalog_data.hpp"
#include "gridlogic/errors.hpp"
#include "gridlogic/text_util.hpp"

namespace gridlogic {

struct AttributePhrasing {
  std::string description;  // bullet line, e.g. "Each person has a unique name"
  std::string noun;         // noun phrase with a {v} slot, e.g. "the person who likes {v}"
};

inline std::string ordinal_word(int n) {
  static constexpr std::array<std::string_view, 12> words = {
      "first", "second", "third", "fourth", "fifth", "sixth",
      "seventh", "eighth", "ninth", "tenth", "eleventh", "twelfth"};
  if (n >= 1 && n <= static_cast<int>(words.size())) return std::string(words[static_cast<std::size_t>(n - 1)]);
  const int tens = n % 100;
  const char* suffix = (tens >= 11 && tens <= 13) ? "th"
                       : n % 10 == 1             ? "st"
                       : n % 10 == 2             ? "nd"
                       : n % 10 == 3             ? "rd"
                                                 : "th";
  return std::to_string(n) + suffix;
}

class Phrasebook {
 public:
  Phrasebook() = default;

  void set_attribute(const std::string& name, AttributePhrasing phrasing) {
    attributes_[canonical(name)] = std::move(phrasing);
  }

  void set_template(ClueKind kind, std::string text) { templates_[static_cast<std::size_t>(kind)] = std::move(text); }

  const AttributePhrasing& attribute(std::string_view name) const {
    auto it = attributes_.find(canonical(name));
    if (it == attributes_.end()) throw TemplateError("no phrasing for attribute " + std::string(name));
    return it->second;
  }

  bool has_attribute(std::string_view name) const { return attributes_.contains(canonical(name)); }

  const std::string& clue_template(ClueKind kind) const {
    const auto& t = templates_[static_cast<std::size_t>(kind)];
    if (t.empty()) throw TemplateError("no template for clue type " + std::string(to_string(kind)));
    return t;
  }

  std::string noun_phrase(const ValueRef& ref) const {
    std::string s = attribute(ref.attribute).noun;
    replace_all(s, "{v}", ref.value);
    return s;
  }

  // One English sentence for the clue.
  std::string render(const Clue& clue) const {
    std::string s = clue_template(clue.kind);
    replace_all(s, "{A}", noun_phrase(clue.first));
    if (is_house_clue(clue.kind)) {
      replace_all(s, "{house}", ordinal_word(clue.house));
    } else {
      replace_all(s, "{B}", noun_phrase(clue.second));
    }
    return capitalize_first(std::move(s));
  }

 private:
  std::map<std::string, AttributePhrasing> attributes_;
  std::array<std::string, kClueKindCount> templates_;
};

struct CatalogBundle {
  AttributeCatalog catalog;
  Phrasebook phrases;
};

inline CatalogBundle parse_catalog(std::string_view text) {
  using nlohmann::json;
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw SchemaError("catalog is not a JSON object");
  try {
    CatalogBundle out;
    std::vector<Attribute> entries;
    for (const auto& a : doc.at("attributes")) {
      Attribute attr{a.at("name").get<std::string>(), a.at("values").get<std::vector<std::string>>()};
      out.phrases.set_attribute(attr.name, {a.at("description").get<std::string>(), a.at("noun").get<std::string>()});
      entries.push_back(std::move(attr));
    }
    const auto& templates = doc.at("clue_templates");
    for (ClueKind k : kAllClueKinds) {
      out.phrases.set_template(k, templates.at(std::string(to_string(k))).get<std::string>());
    }
    out.catalog = AttributeCatalog(std::move(entries));
    return out;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("catalog: ") + e.what());
  }
}

inline CatalogBundle load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open catalog file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_catalog(ss.str());
}

inline const CatalogBundle& default_catalog() {
  static const CatalogBundle bundle = parse_catalog(detail::kDefaultCatalogJson);
  return bundle;
}

}  // namespace gridlogic
