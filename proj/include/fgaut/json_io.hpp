#pragma once

// JSON forms:
//   automorphism   {"rank": n, "images": ["x1 x2", ...], "inverse_images": [...]}
//   canonical data {"fixed": k, "pairs": m, "blocks": [s1, s2, ...]}
// inverse_images may be omitted for involutions.

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fgaut/automorphism.hpp"
#include "fgaut/involution.hpp"

namespace fgaut {

using json = nlohmann::json;

inline json to_json(const Automorphism& f) {
  json images = json::array();
  json inverse = json::array();
  for (const auto& w : f.images()) images.push_back(render(w));
  for (const auto& w : f.backward().images()) inverse.push_back(render(w));
  return {{"rank", f.rank()}, {"images", images}, {"inverse_images", inverse}};
}

namespace detail {

inline std::vector<Word> parse_images(const json& arr, int rank, const char* field) {
  if (!arr.is_array()) throw SyntaxError(std::string("'") + field + "' must be an array of words");
  if (static_cast<int>(arr.size()) != rank) {
    throw RankError(std::string("'") + field + "' must list one image per generator");
  }
  std::vector<Word> out;
  for (const auto& item : arr) {
    if (!item.is_string()) throw SyntaxError(std::string("'") + field + "' entries must be strings");
    out.push_back(parse_word(item.get<std::string>(), rank));
  }
  return out;
}

}  // namespace detail

inline Automorphism automorphism_from_json(const json& j) {
  if (!j.is_object() || !j.contains("rank") || !j.contains("images")) {
    throw SyntaxError("automorphism JSON needs 'rank' and 'images'");
  }
  if (!j["rank"].is_number_integer()) throw SyntaxError("'rank' must be an integer");
  int rank = j["rank"].get<int>();
  if (rank < 1) throw RankError("rank must be positive");
  auto images = detail::parse_images(j["images"], rank, "images");
  if (j.contains("inverse_images")) {
    return make_automorphism(std::move(images), detail::parse_images(j["inverse_images"], rank, "inverse_images"));
  }
  try {
    return Automorphism::involution(std::move(images));
  } catch (const NotInverse&) {
    throw NotInverse("'inverse_images' is required unless the map is an involution");
  }
}

inline json to_json(const CanonicalData& d) {
  return {{"fixed", d.fixed}, {"pairs", d.pairs}, {"blocks", d.blocks}};
}

inline CanonicalData canonical_data_from_json(const json& j) {
  if (!j.is_object()) throw SyntaxError("canonical data must be a JSON object");
  auto count = [&](const char* key) {
    if (!j.contains(key)) return 0;
    if (!j[key].is_number_integer()) throw SyntaxError(std::string("'") + key + "' must be an integer");
    return j[key].get<int>();
  };
  std::vector<int> blocks;
  if (j.contains("blocks")) {
    if (!j["blocks"].is_array()) throw SyntaxError("'blocks' must be an array");
    for (const auto& b : j["blocks"]) {
      if (!b.is_number_integer()) throw SyntaxError("block sizes must be integers");
      blocks.push_back(b.get<int>());
    }
  }
  return CanonicalData(count("fixed"), count("pairs"), std::move(blocks));
}

}  // namespace fgaut
