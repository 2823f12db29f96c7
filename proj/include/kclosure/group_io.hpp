#pragma once

// Group files: {"degree": 5, "generators": ["(1,2,3)", "(1,2)(4,5)"]}

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "errors.hpp"
#include "perm_group.hpp"

namespace kclosure {

inline PermGroup group_from_strings(std::size_t degree,
                                    const std::vector<std::string> &generators) {
  if (degree == 0) throw InputError("degree must be positive");
  std::vector<Permutation> gens;
  for (std::size_t i = 0; i < generators.size(); ++i) {
    try {
      gens.push_back(parse_cycle_notation(generators[i], degree));
    } catch (const ParseError &e) {
      throw InputError("generator " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return PermGroup(degree, std::move(gens));
}

inline PermGroup group_from_json(const nlohmann::json &j) {
  if (!j.is_object()) throw InputError("group file must hold a JSON object");
  if (!j.contains("degree") || !j["degree"].is_number_integer())
    throw InputError("group file needs an integer \"degree\"");
  if (!j.contains("generators") || !j["generators"].is_array())
    throw InputError("group file needs a \"generators\" array");
  auto degree = j["degree"].get<std::int64_t>();
  if (degree < 1) throw InputError("degree must be positive");
  std::vector<std::string> gens;
  for (const auto &g : j["generators"]) {
    if (!g.is_string()) throw InputError("generators must be cycle-notation strings");
    gens.push_back(g.get<std::string>());
  }
  return group_from_strings(static_cast<std::size_t>(degree), gens);
}

inline PermGroup parse_group_json(const std::string &text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error &e) {
    throw InputError(std::string("group file is not valid JSON: ") + e.what());
  }
  return group_from_json(j);
}

inline PermGroup read_group_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group file " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_group_json(buffer.str());
}

inline nlohmann::ordered_json group_to_json(const PermGroup &g) {
  nlohmann::ordered_json gens = nlohmann::ordered_json::array();
  for (const auto &x : g.generators()) gens.push_back(to_string(x));
  return {{"degree", g.degree()}, {"generators", gens}};
}

}  // namespace kclosure
