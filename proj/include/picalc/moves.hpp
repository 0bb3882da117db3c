// Elementary deformations of pictures: bridge moves, floating-circle
// insertion/deletion, folding-pair insertion/deletion, and insertion/deletion
// of members of a fixed set X of based spherical pictures (primitive dipoles
// of proper-power relators). Pictures are immutable; every move returns a
// new picture.
#ifndef PICALC_MOVES_HPP
#define PICALC_MOVES_HPP

#include <optional>
#include <variant>

#include <json.hpp>

#include "picalc/picture.hpp"

namespace picalc {

class move_error : public picture_error {
 public:
  explicit move_error(const std::string& what) : picture_error(what) {}
};

/// A region named by its canonical representative (component ref, face index)
/// in the analysis of the picture the move applies to.
struct RegionRef {
  CompRef comp;
  int face = 0;
};

/// One side of an arc, keyed by a face-traversal event: for a non-loop arc,
/// `side` is the tail end (0/1) of the traversal running along that side;
/// for a free loop it is the geometric side 0/1.
struct ArcSide {
  int arc = 0;
  int side = 0;
};

struct BridgeMove {
  ArcSide s1, s2;
  // When a bridge on two sides of the same face splits a region, components
  // listed here move to the new face behind s2->s1; everything else stays.
  std::vector<CompRef> second_side;
};

struct FloatMove {
  int loop_arc = 0;
};

struct FloatInvMove {
  RegionRef region;
  int label = 0;
  int orient = 1;
};

struct FoldMove {
  int v1 = 0, v2 = 0;
};

struct FoldInvMove {
  RegionRef region;
  int relator = 0;
  int outward_gap = 0;  // gap of the +1 vertex whose corner faces `region`
};

struct DeleteXMove {
  int v1 = 0, v2 = 0;
  int x_index = 0;
  bool mirrored = false;
};

struct InsertXMove {
  RegionRef region;
  int x_index = 0;
  bool mirrored = false;
  int outward_gap = 0;  // gap of the +1 vertex whose corner faces `region`
};

using Move =
    std::variant<BridgeMove, FloatMove, FloatInvMove, FoldMove, FoldInvMove, DeleteXMove, InsertXMove>;

/// The set X: one based spherical picture per admissible (relator, exponent).
struct XMember {
  int relator = 0;
  int exponent = 0;  // f with gcd(f, period) = 1, 0 < f < period
  Picture picture;
};

struct XSet {
  std::vector<XMember> members;
};

// --- canonical dipoles ---------------------------------------------------

namespace detail {

/// Canonical two-vertex spherical picture over relator `ri` whose dual path
/// between the basepoint faces reads root^f (f = 0 gives a folding pair).
/// The component nests in face `0` of a slotless boundary circle.
inline Picture make_complete_dipole(const Presentation& pres, int ri, int f) {
  const LetterSeq& r = pres.relator(ri).letters();
  const RootPeriod& rp = pres.root_period(ri);
  int k = static_cast<int>(r.size());
  int m = rp.root.length();
  int l = rp.period;
  Picture p;
  VertexDisk vp, vm;
  vp.id = 0;
  vp.relator = ri;
  vp.sign = 1;
  vp.basepoint_gap = 0;
  vm.id = 1;
  vm.relator = ri;
  vm.sign = -1;
  vm.basepoint_gap = (((l - f) % l + l) % l) * m % std::max(k, 1);
  for (int j = 0; j < k; ++j) vp.rotation.push_back(j);
  for (int j = k - 1; j >= 0; --j) vm.rotation.push_back(j);
  for (int j = 0; j < k; ++j) {
    Arc a;
    a.id = j;
    a.label = r[j].gen;
    a.orient = r[j].sign;
    a.ends[0] = {0, j};
    a.ends[1] = {1, k - 1 - j};
    p.arcs.push_back(a);
  }
  p.vertices.push_back(std::move(vp));
  p.vertices.push_back(std::move(vm));
  // nesting: find the outward face (the one containing v0's corner at gap 0)
  Analysis an(p);
  int outward = an.face_of_corner(Corner{0, 0}).second;
  p.nesting.push_back({CompRef{CompRef::Vertex, 0}, CompRef{CompRef::Boundary, 0}, 0, outward});
  return p;
}

inline std::optional<NestRecord> record_of(const Picture& p, const CompRef& c) {
  for (const NestRecord& r : p.nesting)
    if (r.comp == c) return r;
  return std::nullopt;
}

inline void erase_record(Picture& p, const CompRef& c) {
  for (auto it = p.nesting.begin(); it != p.nesting.end(); ++it)
    if (it->comp == c) {
      p.nesting.erase(it);
      return;
    }
}

/// Rebuilds the nesting forest of `p` given, for every (comp, face) of its
/// analysis, a region label; faces with equal labels bound the same region.
/// The root component's faces seed the traversal.
inline std::vector<NestRecord> rebuild_nesting(const Analysis& an,
                                               const std::map<std::pair<int, int>, int>& label) {
  int root = an.comp_of_boundary();
  std::vector<NestRecord> out;
  std::map<int, std::pair<int, int>> owner;  // region label -> owning (comp, face)
  std::vector<bool> placed(an.comp_count(), false);
  placed[root] = true;
  std::queue<int> regions;
  for (int fi = 0; fi < static_cast<int>(an.comp(root).faces.size()); ++fi) {
    int lab = label.at({root, fi});
    if (owner.count(lab)) throw move_error("region touches the root component twice");
    owner[lab] = {root, fi};
    regions.push(lab);
  }
  while (!regions.empty()) {
    int lab = regions.front();
    regions.pop();
    auto [oc, of] = owner.at(lab);
    for (int ci = 0; ci < an.comp_count(); ++ci) {
      if (placed[ci]) continue;
      for (int fi = 0; fi < static_cast<int>(an.comp(ci).faces.size()); ++fi) {
        if (label.at({ci, fi}) != lab) continue;
        placed[ci] = true;
        out.push_back({an.comp(ci).ref, an.comp(oc).ref, of, fi});
        for (int f2 = 0; f2 < static_cast<int>(an.comp(ci).faces.size()); ++f2) {
          if (f2 == fi) continue;
          int l2 = label.at({ci, f2});
          if (owner.count(l2)) throw move_error("inconsistent region labeling");
          owner[l2] = {ci, f2};
          regions.push(l2);
        }
        break;
      }
    }
  }
  for (int ci = 0; ci < an.comp_count(); ++ci)
    if (!placed[ci]) throw move_error("component unreachable from the root region");
  return out;
}

/// Signed letter read when crossing the given arc side out of its face.
inline Letter cross_letter(const Picture& p, const Arc& a, const ArcSide& s) {
  if (a.free_loop) return Letter(a.label, s.side == 0 ? a.orient : -a.orient);
  // Crossing away from the side traced with tail end `s.side`: the face on
  // that side sees the letter read at the tail when leaving through the arc.
  const ArcEnd& tail = a.ends[s.side];
  int es = end_sign(a, s.side);
  return Letter(a.label, is_boundary(tail.node) ? -es : es);
}

}  // namespace detail

inline XSet build_xset(const Presentation& pres) {
  XSet x;
  for (int ri = 0; ri < pres.num_relators(); ++ri) {
    const RootPeriod& rp = pres.root_period(ri);
    for (int f = 1; f < rp.period; ++f)
      if (std::gcd(f, rp.period) == 1)
        x.members.push_back({ri, f, detail::make_complete_dipole(pres, ri, f)});
  }
  return x;
}

// --- individual moves ----------------------------------------------------

namespace detail {

inline int resolve_region(const Analysis& an, const RegionRef& r) {
  auto ci = an.comp_by_ref(r.comp);
  if (!ci) throw move_error("region reference names an unknown component");
  if (r.face < 0 || r.face >= static_cast<int>(an.comp(*ci).faces.size()))
    throw move_error("region reference face out of range");
  return an.region_of(*ci, r.face);
}

/// Region label map of the current analysis (labels are region indices).
inline std::map<std::pair<int, int>, int> region_labels(const Analysis& an) {
  std::map<std::pair<int, int>, int> lab;
  for (int ci = 0; ci < an.comp_count(); ++ci)
    for (int fi = 0; fi < static_cast<int>(an.comp(ci).faces.size()); ++fi)
      lab[{ci, fi}] = an.region_of(ci, fi);
  return lab;
}

inline Picture apply_float(const Picture& p, const FloatMove& m) {
  const Arc* a = find_arc(p, m.loop_arc);
  if (!a || !a->free_loop) throw move_error("float: not a free loop");
  Analysis an(p);
  int ci = an.comp_of_arc(m.loop_arc);
  auto rec = record_of(p, CompRef{CompRef::Loop, m.loop_arc});
  if (!rec) throw move_error("float: loop has no nesting record");
  int far = 1 - rec->own_face;
  if (!children_of_face(p, an, ci, far).empty())
    throw move_error("float: the loop bounds a non-empty disk");
  Picture q = p;
  for (auto it = q.arcs.begin(); it != q.arcs.end(); ++it)
    if (it->id == m.loop_arc) {
      q.arcs.erase(it);
      break;
    }
  erase_record(q, CompRef{CompRef::Loop, m.loop_arc});
  return q;
}

inline Picture apply_float_inv(const Picture& p, const FloatInvMove& m) {
  if (m.orient != 1 && m.orient != -1) throw move_error("float^-1: bad orientation");
  Analysis an(p);
  resolve_region(an, m.region);  // validates the reference
  Picture q = p;
  Arc a;
  a.id = next_arc_id(p);
  a.label = m.label;
  a.free_loop = true;
  a.orient = m.orient;
  q.arcs.push_back(a);
  // side 0 faces the target region
  auto ci = an.comp_by_ref(m.region.comp);
  q.nesting.push_back({CompRef{CompRef::Loop, a.id}, m.region.comp, m.region.face, 0});
  (void)ci;
  return q;
}

inline Picture apply_fold(const Picture& p, const FoldMove& m, const Presentation& pres) {
  Analysis an(p);
  TwoVertexClass cls;
  try {
    cls = classify_two_vertex_subpicture(p, an, m.v1, m.v2, pres);
  } catch (const picture_error& e) {
    throw move_error(std::string("fold: ") + e.what());
  }
  if (cls.kind != TwoVertexClass::FoldingPair) throw move_error("fold: not a folding pair");
  int ci = an.comp_of_vertex(m.v1);
  const ComponentInfo& comp = an.comp(ci);
  auto rec = record_of(p, comp.ref);
  if (!rec) throw move_error("fold: component has no nesting record");
  for (int fi = 0; fi < static_cast<int>(comp.faces.size()); ++fi) {
    if (fi == rec->own_face) continue;
    if (!children_of_face(p, an, ci, fi).empty())
      throw move_error("fold: an interior region of the pair is not empty");
  }
  const VertexDisk* a = find_vertex(p, m.v1);
  const VertexDisk* b = find_vertex(p, m.v2);
  int r1 = an.region_of_corner(Corner{m.v1, a->basepoint_gap});
  int r2 = an.region_of_corner(Corner{m.v2, b->basepoint_gap});
  if (r1 != r2) throw move_error("fold: basepoints lie in different regions");
  Picture q = p;
  std::set<int> gone(comp.arcs.begin(), comp.arcs.end());
  std::erase_if(q.arcs, [&](const Arc& x) { return gone.count(x.id) > 0; });
  std::erase_if(q.vertices, [&](const VertexDisk& v) { return v.id == m.v1 || v.id == m.v2; });
  erase_record(q, comp.ref);
  return q;
}

inline Picture apply_fold_inv(const Picture& p, const FoldInvMove& m, const Presentation& pres) {
  if (m.relator < 0 || m.relator >= pres.num_relators()) throw move_error("fold^-1: bad relator");
  int k = pres.relator(m.relator).length();
  if (m.outward_gap < 0 || m.outward_gap >= std::max(k, 1))
    throw move_error("fold^-1: outward gap out of range");
  Analysis an(p);
  resolve_region(an, m.region);
  Picture dip = make_complete_dipole(pres, m.relator, 0);
  // renumber into p
  int vbase = next_vertex_id(p);
  int abase = next_arc_id(p);
  Picture q = p;
  for (VertexDisk v : dip.vertices) {
    v.id += vbase;
    for (int& aid : v.rotation) aid += abase;
    q.vertices.push_back(std::move(v));
  }
  for (Arc a : dip.arcs) {
    a.id += abase;
    for (int e = 0; e < 2; ++e) a.ends[e].node += vbase;
    q.arcs.push_back(a);
  }
  // outward face: face of the +1 vertex's corner at the requested gap
  Analysis an2(q);
  auto [ci2, fi2] = an2.face_of_corner(Corner{vbase, m.outward_gap});
  q.nesting.push_back({CompRef{CompRef::Vertex, vbase}, m.region.comp, m.region.face, fi2});
  return q;
}

inline Picture apply_delete_x(const Picture& p, const DeleteXMove& m, const Presentation& pres,
                              const XSet& x) {
  if (m.x_index < 0 || m.x_index >= static_cast<int>(x.members.size()))
    throw move_error("delete(X): bad X index");
  const XMember& xm = x.members[m.x_index];
  Analysis an(p);
  int ci = an.comp_of_vertex(m.v1);
  if (ci != an.comp_of_vertex(m.v2)) throw move_error("delete(X): vertices not connected");
  const ComponentInfo& comp = an.comp(ci);
  if (comp.has_boundary || comp.vertices.size() != 2)
    throw move_error("delete(X): not a two-vertex spherical component");
  // must match the X member (up to mirror), with basepoints in one region
  Picture target = m.mirrored ? mirror_picture(xm.picture) : xm.picture;
  Analysis tan(target);
  int tcomp = -1;
  for (int i = 0; i < tan.comp_count(); ++i)
    if (!tan.comp(i).is_loop && !tan.comp(i).has_boundary) tcomp = i;
  if (tcomp < 0 || !components_isomorphic(p, an, ci, target, tan, tcomp))
    throw move_error("delete(X): component is not a copy of the X member");
  const VertexDisk* a = find_vertex(p, m.v1);
  const VertexDisk* b = find_vertex(p, m.v2);
  if (an.region_of_corner(Corner{m.v1, a->basepoint_gap}) !=
      an.region_of_corner(Corner{m.v2, b->basepoint_gap}))
    throw move_error("delete(X): basepoints lie in different regions");
  auto rec = record_of(p, comp.ref);
  if (!rec) throw move_error("delete(X): component has no nesting record");
  for (int fi = 0; fi < static_cast<int>(comp.faces.size()); ++fi) {
    if (fi == rec->own_face) continue;
    if (!children_of_face(p, an, ci, fi).empty())
      throw move_error("delete(X): an interior region of the copy is not empty");
  }
  Picture q = p;
  std::set<int> gone(comp.arcs.begin(), comp.arcs.end());
  std::erase_if(q.arcs, [&](const Arc& z) { return gone.count(z.id) > 0; });
  std::erase_if(q.vertices, [&](const VertexDisk& v) { return v.id == m.v1 || v.id == m.v2; });
  erase_record(q, comp.ref);
  return q;
}

inline Picture apply_insert_x(const Picture& p, const InsertXMove& m, const Presentation& pres,
                              const XSet& x) {
  if (m.x_index < 0 || m.x_index >= static_cast<int>(x.members.size()))
    throw move_error("insert(X): bad X index");
  const XMember& xm = x.members[m.x_index];
  Analysis an(p);
  resolve_region(an, m.region);
  Picture src = m.mirrored ? mirror_picture(xm.picture) : xm.picture;
  int k = pres.relator(xm.relator).length();
  if (m.outward_gap < 0 || m.outward_gap >= std::max(k, 1))
    throw move_error("insert(X): outward gap out of range");
  int vbase = next_vertex_id(p);
  int abase = next_arc_id(p);
  Picture q = p;
  int plus_vertex = -1;
  for (VertexDisk v : src.vertices) {
    if (v.sign == 1 && plus_vertex < 0) plus_vertex = v.id + vbase;
    v.id += vbase;
    for (int& aid : v.rotation) aid += abase;
    q.vertices.push_back(std::move(v));
  }
  for (Arc a : src.arcs) {
    a.id += abase;
    for (int e = 0; e < 2; ++e)
      if (!a.free_loop) a.ends[e].node += vbase;
    q.arcs.push_back(a);
  }
  Analysis an2(q);
  auto [ci2, fi2] = an2.face_of_corner(Corner{plus_vertex, m.outward_gap});
  CompRef newcomp = an2.comp(ci2).ref;
  q.nesting.push_back({newcomp, m.region.comp, m.region.face, fi2});
  return q;
}

inline Picture apply_bridge(const Picture& p, const BridgeMove& m);

}  // namespace detail

inline Picture apply(const Picture& p, const Move& m, const Presentation& pres,
                     const XSet& x = XSet{}) {
  return std::visit(
      [&](const auto& mv) -> Picture {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, BridgeMove>) return detail::apply_bridge(p, mv);
        else if constexpr (std::is_same_v<T, FloatMove>) return detail::apply_float(p, mv);
        else if constexpr (std::is_same_v<T, FloatInvMove>) return detail::apply_float_inv(p, mv);
        else if constexpr (std::is_same_v<T, FoldMove>) return detail::apply_fold(p, mv, pres);
        else if constexpr (std::is_same_v<T, FoldInvMove>) return detail::apply_fold_inv(p, mv, pres);
        else if constexpr (std::is_same_v<T, DeleteXMove>) return detail::apply_delete_x(p, mv, pres, x);
        else return detail::apply_insert_x(p, mv, pres, x);
      },
      m);
}

}  // namespace picalc

#include "picalc/bridge.hpp"

namespace picalc {

// --- reduction -----------------------------------------------------------

struct ReductionStep {
  Move move;
  int vertex_count_after = 0;
};

struct ReductionResult {
  Picture picture;
  std::vector<ReductionStep> trace;
  bool emptied = false;
  bool budget_exhausted = false;
};

/// Greedy reduction of a spherical picture: repeatedly delete folding pairs,
/// floating circles and copies of X members, never applying inverse moves.
/// Stops at a fixed point or when `max_steps` is reached.
inline ReductionResult reduce_spherical(const Picture& start, const Presentation& pres,
                                        const XSet& x, int max_steps = 10000) {
  if (!is_spherical(start)) throw move_error("reduce_spherical: picture is not spherical");
  ReductionResult res;
  res.picture = start;
  for (int step = 0; step < max_steps; ++step) {
    const Picture& p = res.picture;
    Analysis an(p);
    std::optional<Move> next;
    // folding pairs first
    auto pairs = find_folding_pairs(p, an, pres);
    for (const FoldingPair& fp : pairs) {
      FoldMove mv{fp.v1, fp.v2};
      try {
        apply(p, Move{mv}, pres, x);
        next = Move{mv};
        break;
      } catch (const move_error&) {
      }
    }
    // then floating circles
    if (!next) {
      for (const Arc& a : p.arcs) {
        if (!a.free_loop) continue;
        FloatMove mv{a.id};
        try {
          apply(p, Move{mv}, pres, x);
          next = Move{mv};
          break;
        } catch (const move_error&) {
        }
      }
    }
    // then copies of X members
    if (!next) {
      for (int ci = 0; ci < an.comp_count() && !next; ++ci) {
        const ComponentInfo& c = an.comp(ci);
        if (c.is_loop || c.has_boundary || c.vertices.size() != 2) continue;
        for (int xi = 0; xi < static_cast<int>(x.members.size()) && !next; ++xi)
          for (bool mir : {false, true}) {
            DeleteXMove mv{c.vertices[0], c.vertices[1], xi, mir};
            try {
              apply(p, Move{mv}, pres, x);
              next = Move{mv};
              break;
            } catch (const move_error&) {
            }
          }
      }
    }
    if (!next) break;
    res.picture = apply(res.picture, *next, pres, x);
    res.trace.push_back({*next, static_cast<int>(res.picture.vertices.size())});
    if (step + 1 == max_steps) res.budget_exhausted = true;
  }
  res.emptied = res.picture.vertices.empty() && res.picture.arcs.empty();
  return res;
}

// --- move trace JSON -----------------------------------------------------

inline nlohmann::json move_to_json(const Move& m);

namespace detail {
inline nlohmann::json region_ref_json(const RegionRef& r) {
  nlohmann::json j;
  switch (r.comp.kind) {
    case CompRef::Boundary: j["comp"] = "boundary"; break;
    case CompRef::Vertex: j["comp"] = nlohmann::json{{"vertex", r.comp.id}}; break;
    case CompRef::Loop: j["comp"] = nlohmann::json{{"loop", r.comp.id}}; break;
  }
  j["face"] = r.face;
  return j;
}
}  // namespace detail

inline nlohmann::json move_to_json(const Move& m) {
  return std::visit(
      [](const auto& mv) -> nlohmann::json {
        using T = std::decay_t<decltype(mv)>;
        if constexpr (std::is_same_v<T, BridgeMove>) {
          return {{"move", "bridge"},
                  {"side1", {{"arc", mv.s1.arc}, {"side", mv.s1.side}}},
                  {"side2", {{"arc", mv.s2.arc}, {"side", mv.s2.side}}}};
        } else if constexpr (std::is_same_v<T, FloatMove>) {
          return {{"move", "float"}, {"loop", mv.loop_arc}};
        } else if constexpr (std::is_same_v<T, FloatInvMove>) {
          return {{"move", "float_inv"}, {"region", detail::region_ref_json(mv.region)},
                  {"label", mv.label}, {"orientation", mv.orient}};
        } else if constexpr (std::is_same_v<T, FoldMove>) {
          return {{"move", "fold"}, {"v1", mv.v1}, {"v2", mv.v2}};
        } else if constexpr (std::is_same_v<T, FoldInvMove>) {
          return {{"move", "fold_inv"}, {"region", detail::region_ref_json(mv.region)},
                  {"relator", mv.relator}, {"outward_gap", mv.outward_gap}};
        } else if constexpr (std::is_same_v<T, DeleteXMove>) {
          return {{"move", "delete_x"}, {"v1", mv.v1}, {"v2", mv.v2},
                  {"x_index", mv.x_index}, {"mirrored", mv.mirrored}};
        } else {
          return {{"move", "insert_x"}, {"region", detail::region_ref_json(mv.region)},
                  {"x_index", mv.x_index}, {"mirrored", mv.mirrored},
                  {"outward_gap", mv.outward_gap}};
        }
      },
      m);
}

inline nlohmann::json trace_to_json(const ReductionResult& r) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& s : r.trace) {
    nlohmann::json j = move_to_json(s.move);
    j["vertices_after"] = s.vertex_count_after;
    steps.push_back(std::move(j));
  }
  return {{"steps", steps}, {"budget_exhausted", r.budget_exhausted}};
}

}  // namespace picalc

#endif  // PICALC_MOVES_HPP
