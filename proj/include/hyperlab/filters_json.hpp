#pragma once

#include <string>
#include <vector>

#include "hyperlab/filters.hpp"
#include "json.hpp"

namespace hyperlab {

/// `{ "universe": 12, "members": [[2, 4, 6], ...] }`
inline SetFamily family_from_json(const nlohmann::json& doc) {
  if (!doc.is_object() || !doc.contains("universe") || !doc.contains("members"))
    fail(ErrorKind::InvalidArgument, "family document needs \"universe\" and \"members\"");
  if (!doc["universe"].is_number_integer()) fail(ErrorKind::InvalidArgument, "\"universe\" must be an integer");
  if (!doc["members"].is_array()) fail(ErrorKind::InvalidArgument, "\"members\" must be an array of arrays");
  std::vector<std::vector<int>> lists;
  for (const auto& m : doc["members"]) {
    if (!m.is_array()) fail(ErrorKind::InvalidArgument, "each member must be an array of elements");
    std::vector<int> list;
    for (const auto& e : m) {
      if (!e.is_number_integer()) fail(ErrorKind::InvalidArgument, "elements must be integers");
      list.push_back(e.get<int>());
    }
    lists.push_back(std::move(list));
  }
  return SetFamily::from_lists(doc["universe"].get<int>(), lists);
}

inline SetFamily family_from_json_text(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("family document is not valid JSON: ") + e.what());
  }
  return family_from_json(doc);
}

inline nlohmann::json subset_json(Subset s) {
  nlohmann::json a = nlohmann::json::array();
  for (int i = 0; i < 32; ++i)
    if (s >> i & 1U) a.push_back(i + 1);
  return a;
}

inline nlohmann::json to_json(const SetFamily& fam) {
  nlohmann::json members = nlohmann::json::array();
  for (Subset s : fam.members()) members.push_back(subset_json(s));
  return {{"universe", fam.universe()}, {"members", members}};
}

inline nlohmann::json to_json(const AxiomCheck& a) {
  nlohmann::json w = nlohmann::json::array();
  for (Subset s : a.witness) w.push_back(subset_json(s));
  return {{"axiom", a.axiom}, {"verdict", std::string(to_string(a.verdict))}, {"detail", a.detail}, {"witness", w}};
}

inline nlohmann::json to_json(const FilterReport& r) {
  nlohmann::json axioms = nlohmann::json::array();
  for (const auto& a : r.axioms) axioms.push_back(to_json(a));
  return {{"is_filter", r.is_filter}, {"axioms", axioms}, {"notes", r.notes}};
}

inline nlohmann::json to_json(const UltrafilterReport& r) {
  nlohmann::json j = to_json(static_cast<const FilterReport&>(r));
  j["is_ultrafilter"] = r.is_ultrafilter;
  j["minimal_member"] = r.minimal_member ? subset_json(*r.minimal_member) : nlohmann::json(nullptr);
  j["generator"] = r.generator ? nlohmann::json(*r.generator) : nlohmann::json(nullptr);
  return j;
}

inline std::string to_text(const FilterReport& r, bool ultra) {
  std::string out;
  for (const auto& a : r.axioms)
    out += "(" + std::to_string(a.axiom) + ") " + std::string(to_string(a.verdict)) + ": " + a.detail + "\n";
  out += std::string(ultra ? "ultrafilter: " : "filter: ") + (r.is_filter ? "yes" : "no") + "\n";
  return out;
}

inline std::string to_text(const UltrafilterReport& r) {
  std::string out = to_text(static_cast<const FilterReport&>(r), true);
  if (r.minimal_member) out += "minimal member: " + subset_str(*r.minimal_member) + "\n";
  if (r.generator) out += "principal, generator: {" + std::to_string(*r.generator) + "}\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

inline std::string to_text(const FilterReport& r) {
  std::string out = to_text(r, false);
  for (const auto& n : r.notes) out += "note: " + n + "\n";
  return out;
}

}  // namespace hyperlab
