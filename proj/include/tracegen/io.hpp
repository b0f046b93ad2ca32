#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "tracegen/error.hpp"
#include "tracegen/model.hpp"
#include "tracegen/stats.hpp"
#include "tracegen/trace.hpp"

namespace tracegen {

// Model files look like
//   {"letters": ["a","b","c","d"], "dependence": [["a","b"],["b","c"],["c","d"]]}
// and are closed reflexively and symmetrically on load.

inline IndependenceModel model_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("letters") || !doc["letters"].is_array()) {
    throw Error(Errc::parse_error, "model needs a \"letters\" array");
  }
  std::vector<std::string> letters;
  for (const auto& l : doc["letters"]) {
    if (!l.is_string()) throw Error(Errc::parse_error, "letters must be strings");
    letters.push_back(l.get<std::string>());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  if (doc.contains("dependence")) {
    for (const auto& pr : doc["dependence"]) {
      if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string()) {
        throw Error(Errc::parse_error, "dependence entries must be pairs of letters");
      }
      pairs.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
    }
  }
  return build_model(letters, pairs);
}

inline IndependenceModel parse_model(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::parse_error, e.what());
  }
  return model_from_json(doc);
}

inline IndependenceModel load_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::parse_error, "cannot read model file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_model(buf.str());
}

inline nlohmann::json model_to_json(const IndependenceModel& model) {
  nlohmann::json pairs = nlohmann::json::array();
  for (Letter a : model.alphabet()) {
    for (Letter b : model.link(a)) {
      if (a < b) pairs.push_back({model.name(a), model.name(b)});
    }
  }
  return {{"letters", model.names()}, {"dependence", pairs}};
}

/// Factor list, e.g. [["a","d"],["b"]].
inline nlohmann::json trace_to_json(const IndependenceModel& model, const Trace& x) {
  nlohmann::json out = nlohmann::json::array();
  for (LetterSet f : x.factors()) {
    nlohmann::json factor = nlohmann::json::array();
    for (Letter a : f) factor.push_back(model.name(a));
    out.push_back(std::move(factor));
  }
  return out;
}

inline Trace trace_from_json(const IndependenceModel& model, const nlohmann::json& doc) {
  if (!doc.is_array()) throw Error(Errc::parse_error, "a trace is an array of factors");
  std::vector<LetterSet> factors;
  for (const auto& f : doc) {
    if (!f.is_array()) throw Error(Errc::parse_error, "a factor is an array of letters");
    LetterSet s;
    for (const auto& l : f) s.insert(model.index_of(l.get<std::string>()));
    factors.push_back(s);
  }
  return Trace::from_factors(model, std::move(factors));
}

inline nlohmann::json report_to_json(const TestReport& r) {
  return {{"name", r.name},
          {"statistic", r.statistic},
          {"threshold", r.threshold},
          {"direction", r.direction == TestReport::Direction::at_most ? "at_most" : "at_least"},
          {"sample_size", r.sample_size},
          {"seed", r.seed},
          {"pass", r.pass},
          {"note", r.note}};
}

}  // namespace tracegen
