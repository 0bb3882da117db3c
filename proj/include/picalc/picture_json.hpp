// JSON (de)serialization for pictures.
#ifndef PICALC_PICTURE_JSON_HPP
#define PICALC_PICTURE_JSON_HPP

#include <string>

#include <json.hpp>

#include "picalc/picture.hpp"

namespace picalc {

inline nlohmann::json comp_ref_to_json(const CompRef& r) {
  switch (r.kind) {
    case CompRef::Boundary:
      return "boundary";
    case CompRef::Vertex:
      return nlohmann::json{{"vertex", r.id}};
    case CompRef::Loop:
      return nlohmann::json{{"loop", r.id}};
  }
  throw picture_error("bad component reference");
}

inline CompRef comp_ref_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    if (j.get<std::string>() != "boundary") throw picture_error("bad component reference");
    return {CompRef::Boundary, 0};
  }
  if (j.contains("vertex")) return {CompRef::Vertex, j.at("vertex").get<int>()};
  if (j.contains("loop")) return {CompRef::Loop, j.at("loop").get<int>()};
  throw picture_error("bad component reference");
}

inline nlohmann::json picture_to_json(const Picture& p, const std::string& presentation_ref) {
  nlohmann::json j;
  j["presentation_ref"] = presentation_ref;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices)
    j["vertices"].push_back({{"id", v.id},
                             {"relator", v.relator},
                             {"sign", v.sign},
                             {"rotation", v.rotation},
                             {"basepoint_gap", v.basepoint_gap}});
  j["boundary"] = {{"rotation", p.boundary.rotation}, {"basepoint_gap", p.boundary.basepoint_gap}};
  j["arcs"] = nlohmann::json::array();
  for (const auto& a : p.arcs) {
    nlohmann::json ja{{"id", a.id}, {"label", a.label}, {"orientation", a.orient}};
    if (a.free_loop) {
      ja["free_loop"] = true;
    } else {
      ja["endpoints"] = {{{"node", a.ends[0].node}, {"slot", a.ends[0].slot}},
                         {{"node", a.ends[1].node}, {"slot", a.ends[1].slot}}};
    }
    j["arcs"].push_back(std::move(ja));
  }
  j["nesting"] = nlohmann::json::array();
  for (const auto& r : p.nesting)
    j["nesting"].push_back({{"comp", comp_ref_to_json(r.comp)},
                            {"parent", comp_ref_to_json(r.parent)},
                            {"parent_face", r.parent_face},
                            {"own_face", r.own_face}});
  return j;
}

inline Picture picture_from_json(const nlohmann::json& j, std::string* presentation_ref = nullptr) {
  Picture p;
  if (presentation_ref && j.contains("presentation_ref"))
    *presentation_ref = j.at("presentation_ref").get<std::string>();
  for (const auto& jv : j.at("vertices")) {
    VertexDisk v;
    v.id = jv.at("id").get<int>();
    v.relator = jv.at("relator").get<int>();
    v.sign = jv.at("sign").get<int>();
    v.rotation = jv.at("rotation").get<std::vector<int>>();
    v.basepoint_gap = jv.at("basepoint_gap").get<int>();
    p.vertices.push_back(std::move(v));
  }
  const auto& jb = j.at("boundary");
  p.boundary.rotation = jb.at("rotation").get<std::vector<int>>();
  p.boundary.basepoint_gap = jb.at("basepoint_gap").get<int>();
  for (const auto& ja : j.at("arcs")) {
    Arc a;
    a.id = ja.at("id").get<int>();
    a.label = ja.at("label").get<int>();
    a.orient = ja.at("orientation").get<int>();
    if (ja.contains("free_loop") && ja.at("free_loop").get<bool>()) {
      a.free_loop = true;
    } else {
      const auto& je = ja.at("endpoints");
      for (int e = 0; e < 2; ++e) {
        a.ends[e].node = je.at(e).at("node").get<int>();
        a.ends[e].slot = je.at(e).at("slot").get<int>();
      }
    }
    p.arcs.push_back(std::move(a));
  }
  for (const auto& jr : j.at("nesting")) {
    NestRecord r;
    r.comp = comp_ref_from_json(jr.at("comp"));
    r.parent = comp_ref_from_json(jr.at("parent"));
    r.parent_face = jr.at("parent_face").get<int>();
    r.own_face = jr.at("own_face").get<int>();
    p.nesting.push_back(std::move(r));
  }
  return p;
}

}  // namespace picalc

#endif  // PICALC_PICTURE_JSON_HPP
