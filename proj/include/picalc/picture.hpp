// Pictures over a presentation: labeled planar combinatorial maps given by
// rotation systems plus a nesting forest for disconnected components.
// Regions are derived by face tracing, never stored.
#ifndef PICALC_PICTURE_HPP
#define PICALC_PICTURE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "picalc/presentation.hpp"
#include "picalc/words.hpp"

namespace picalc {

class picture_error : public std::runtime_error {
 public:
  explicit picture_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kBoundaryNode = -1;

struct ArcEnd {
  int node = kBoundaryNode;  // vertex id, or kBoundaryNode
  int slot = 0;

  bool operator==(const ArcEnd& o) const { return node == o.node && slot == o.slot; }
};

/// An arc: either a properly embedded curve between two attachment slots or
/// a free loop. `orient` encodes the normal orientation: for a non-loop arc
/// it is the signed letter read when the positive walk at end 0's node
/// crosses the arc there; for a free loop, +1 means crossing from side 0 to
/// side 1 reads the label positively.
struct Arc {
  int id = 0;
  int label = 0;  // generator index
  bool free_loop = false;
  ArcEnd ends[2];
  int orient = 1;
};

struct VertexDisk {
  int id = 0;
  int relator = 0;
  int sign = 1;
  std::vector<int> rotation;  // arc ids, in positive-walk order
  int basepoint_gap = 0;      // corner before this slot holds the basepoint
};

struct BoundaryCircle {
  std::vector<int> rotation;
  int basepoint_gap = 0;
};

/// Reference to a connected component by its canonical member.
struct CompRef {
  enum Kind { Boundary = 0, Vertex = 1, Loop = 2 };
  Kind kind = Boundary;
  int id = 0;  // vertex id or loop arc id; unused for Boundary

  bool operator==(const CompRef& o) const { return kind == o.kind && (kind == Boundary || id == o.id); }
  bool operator<(const CompRef& o) const {
    if (kind != o.kind) return kind < o.kind;
    return kind == Boundary ? false : id < o.id;
  }
};

/// Component `comp` lies in the region that is face `parent_face` of
/// component `parent`, touching it with its own face `own_face`.
struct NestRecord {
  CompRef comp;
  CompRef parent;
  int parent_face = 0;
  int own_face = 0;
};

struct Picture {
  std::vector<VertexDisk> vertices;
  BoundaryCircle boundary;
  std::vector<Arc> arcs;
  std::vector<NestRecord> nesting;
};

inline const VertexDisk* find_vertex(const Picture& p, int id) {
  for (const auto& v : p.vertices)
    if (v.id == id) return &v;
  return nullptr;
}

inline const Arc* find_arc(const Picture& p, int id) {
  for (const auto& a : p.arcs)
    if (a.id == id) return &a;
  return nullptr;
}

inline int next_arc_id(const Picture& p) {
  int m = 0;
  for (const auto& a : p.arcs) m = std::max(m, a.id + 1);
  return m;
}

inline int next_vertex_id(const Picture& p) {
  int m = 0;
  for (const auto& v : p.vertices) m = std::max(m, v.id + 1);
  return m;
}

inline bool is_boundary(int node) { return node == kBoundaryNode; }

/// Signed letter read when the positive walk at the node of end `k` crosses
/// the arc there. The two ends read opposite signs except for arcs joining a
/// vertex to the picture boundary, which read equal signs.
inline int end_sign(const Arc& a, int k) {
  if (a.free_loop) throw picture_error("end_sign on a free loop");
  if (k == 0) return a.orient;
  bool mixed = is_boundary(a.ends[0].node) != is_boundary(a.ends[1].node);
  return mixed ? a.orient : -a.orient;
}

struct Corner {
  int node = kBoundaryNode;  // vertex id or kBoundaryNode
  int gap = 0;               // corner before this slot (stored order); 0 on slotless nodes

  bool operator==(const Corner& o) const { return node == o.node && gap == o.gap; }
  bool operator<(const Corner& o) const { return node != o.node ? node < o.node : gap < o.gap; }
};

inline bool is_spherical(const Picture& p) { return p.boundary.rotation.empty(); }

// --- analysis: components, faces, regions --------------------------------

struct TraceEvent {
  int arc = 0;
  int tail_end = 0;  // the face boundary runs along the arc from this end
};

struct FaceInfo {
  std::vector<Corner> corners;
  std::vector<TraceEvent> events;
};

struct ComponentInfo {
  CompRef ref;
  bool has_boundary = false;
  std::vector<int> vertices;
  std::vector<int> arcs;      // non-loop arcs
  bool is_loop = false;
  int loop_arc = -1;
  std::vector<FaceInfo> faces;  // loops: face 0 and face 1 by orientation
};

/// Derived structure of a picture. Assumes the picture passes the
/// structural checks (see validate); throws picture_error on gross
/// inconsistencies.
class Analysis {
 public:
  explicit Analysis(const Picture& p) : pic_(&p) {
    build_attachments();
    build_components();
    trace_faces();
    build_regions();
  }

  const Picture& picture() const { return *pic_; }
  int comp_count() const { return static_cast<int>(comps_.size()); }
  const ComponentInfo& comp(int i) const { return comps_.at(i); }

  int comp_of_boundary() const { return comp_of_node_.at(kBoundaryNode); }
  int comp_of_vertex(int vid) const {
    auto it = comp_of_node_.find(vid);
    if (it == comp_of_node_.end()) throw picture_error("unknown vertex " + std::to_string(vid));
    return it->second;
  }
  int comp_of_arc(int aid) const {
    auto it = comp_of_arc_.find(aid);
    if (it == comp_of_arc_.end()) throw picture_error("unknown arc " + std::to_string(aid));
    return it->second;
  }
  std::optional<int> comp_by_ref(const CompRef& r) const {
    for (int i = 0; i < comp_count(); ++i)
      if (comps_[i].ref == r) return i;
    return std::nullopt;
  }

  std::pair<int, int> face_of_corner(const Corner& c) const {
    auto it = corner_face_.find(c);
    if (it == corner_face_.end())
      throw picture_error("no face for corner (" + std::to_string(c.node) + "," +
                          std::to_string(c.gap) + ")");
    return it->second;
  }

  /// Face along arc side; for non-loop arcs keyed by the tail end of the
  /// traversal, for loops by side 0/1.
  std::pair<int, int> face_of_side(int arc, int side) const {
    auto it = side_face_.find({arc, side});
    if (it == side_face_.end()) throw picture_error("no face for arc side");
    return it->second;
  }

  int region_of(int comp, int face) const { return find(flat_.at({comp, face})); }
  int region_of_corner(const Corner& c) const {
    auto [cp, f] = face_of_corner(c);
    return region_of(cp, f);
  }

  /// Canonical representative (comp, face) of a region.
  std::pair<int, int> region_rep(int region) const { return unflat_.at(region); }

  /// The attachment map (node, slot) -> (arc id, end index).
  std::pair<int, int> attachment(int node, int slot) const {
    auto it = attach_.find({node, slot});
    if (it == attach_.end())
      throw picture_error("no arc at node " + std::to_string(node) + " slot " + std::to_string(slot));
    return it->second;
  }

  int slot_count(int node) const {
    if (is_boundary(node)) return static_cast<int>(pic_->boundary.rotation.size());
    const VertexDisk* v = find_vertex(*pic_, node);
    if (!v) throw picture_error("unknown node");
    return static_cast<int>(v->rotation.size());
  }

 private:
  const Picture* pic_;
  std::map<std::pair<int, int>, std::pair<int, int>> attach_;  // (node,slot)->(arc,end)
  std::vector<ComponentInfo> comps_;
  std::map<int, int> comp_of_node_;  // node id (incl. kBoundaryNode) -> comp
  std::map<int, int> comp_of_arc_;
  std::map<Corner, std::pair<int, int>> corner_face_;
  std::map<std::pair<int, int>, std::pair<int, int>> side_face_;
  std::map<std::pair<int, int>, int> flat_;  // (comp,face) -> flat index
  std::vector<std::pair<int, int>> unflat_;
  mutable std::vector<int> uf_;

  int find(int x) const {
    while (uf_[x] != x) x = uf_[x] = uf_[uf_[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf_[std::max(a, b)] = std::min(a, b);
  }

  const std::vector<int>& rotation_of(int node) const {
    return is_boundary(node) ? pic_->boundary.rotation : find_vertex(*pic_, node)->rotation;
  }

  void build_attachments() {
    for (const Arc& a : pic_->arcs) {
      if (a.free_loop) continue;
      for (int e = 0; e < 2; ++e) {
        auto key = std::make_pair(a.ends[e].node, a.ends[e].slot);
        if (attach_.count(key)) throw picture_error("slot used twice");
        attach_[key] = {a.id, e};
      }
    }
    // consistency with rotations
    auto check_node = [&](int node, const std::vector<int>& rot) {
      for (int s = 0; s < static_cast<int>(rot.size()); ++s) {
        auto it = attach_.find({node, s});
        if (it == attach_.end() || it->second.first != rot[s])
          throw picture_error("rotation/attachment mismatch at node " + std::to_string(node) +
                              " slot " + std::to_string(s));
      }
    };
    check_node(kBoundaryNode, pic_->boundary.rotation);
    for (const auto& v : pic_->vertices) check_node(v.id, v.rotation);
    std::size_t total_slots = pic_->boundary.rotation.size();
    for (const auto& v : pic_->vertices) total_slots += v.rotation.size();
    if (total_slots != attach_.size()) throw picture_error("dangling arc endpoint");
  }

  void build_components() {
    // union-find over nodes
    std::map<int, int> node_rep;
    std::vector<int> nodes{kBoundaryNode};
    for (const auto& v : pic_->vertices) nodes.push_back(v.id);
    std::map<int, int> idx;
    for (std::size_t i = 0; i < nodes.size(); ++i) idx[nodes[i]] = static_cast<int>(i);
    std::vector<int> par(nodes.size());
    for (std::size_t i = 0; i < par.size(); ++i) par[i] = static_cast<int>(i);
    std::function<int(int)> root = [&](int x) {
      while (par[x] != x) x = par[x] = par[par[x]];
      return x;
    };
    for (const Arc& a : pic_->arcs) {
      if (a.free_loop) continue;
      int r0 = root(idx.at(a.ends[0].node));
      int r1 = root(idx.at(a.ends[1].node));
      if (r0 != r1) par[std::max(r0, r1)] = std::min(r0, r1);
    }
    std::map<int, int> comp_index;  // root -> comp idx
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      int r = root(static_cast<int>(i));
      if (!comp_index.count(r)) {
        comp_index[r] = static_cast<int>(comps_.size());
        comps_.push_back({});
      }
      ComponentInfo& c = comps_[comp_index[r]];
      if (is_boundary(nodes[i]))
        c.has_boundary = true;
      else
        c.vertices.push_back(nodes[i]);
      comp_of_node_[nodes[i]] = comp_index[r];
    }
    for (const Arc& a : pic_->arcs) {
      if (a.free_loop) {
        ComponentInfo c;
        c.is_loop = true;
        c.loop_arc = a.id;
        comp_of_arc_[a.id] = static_cast<int>(comps_.size());
        comps_.push_back(std::move(c));
      } else {
        int ci = comp_of_node_.at(a.ends[0].node);
        comps_[ci].arcs.push_back(a.id);
        comp_of_arc_[a.id] = ci;
      }
    }
    for (ComponentInfo& c : comps_) {
      std::sort(c.vertices.begin(), c.vertices.end());
      std::sort(c.arcs.begin(), c.arcs.end());
      if (c.is_loop)
        c.ref = {CompRef::Loop, c.loop_arc};
      else if (c.has_boundary)
        c.ref = {CompRef::Boundary, 0};
      else if (!c.vertices.empty())
        c.ref = {CompRef::Vertex, c.vertices.front()};
      else
        throw picture_error("empty component");
    }
    // canonical order: boundary comp, then vertex comps, then loops
    std::vector<int> order(comps_.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(),
              [&](int a, int b) { return comps_[a].ref < comps_[b].ref; });
    std::vector<ComponentInfo> sorted;
    std::vector<int> newpos(comps_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
      newpos[order[i]] = static_cast<int>(i);
      sorted.push_back(std::move(comps_[order[i]]));
    }
    comps_ = std::move(sorted);
    for (auto& [k, v] : comp_of_node_) v = newpos[v];
    for (auto& [k, v] : comp_of_arc_) v = newpos[v];
  }

  // Tracing positions: stored rotation order for vertices, reversed for the
  // boundary circle (so all nodes carry the same chirality on the sphere).
  int trace_slot(int node, int tpos) const {
    int k = slot_count(node);
    return is_boundary(node) ? (k - 1 - tpos) : tpos;
  }
  int trace_pos(int node, int slot) const {
    int k = slot_count(node);
    return is_boundary(node) ? (k - 1 - slot) : slot;
  }
  // Corner between tracing positions tpos and tpos+1, as a stored-order gap.
  int corner_gap(int node, int tpos) const {
    int k = slot_count(node);
    if (k == 0) return 0;
    return is_boundary(node) ? (k - 1 - tpos) : (tpos + 1) % k;
  }

  void trace_faces() {
    std::set<std::pair<int, int>> visited;  // (node, tpos)
    auto trace_from = [&](int node0, int t0, FaceInfo& face) {
      int node = node0, t = t0;
      do {
        visited.insert({node, t});
        face.corners.push_back({node, corner_gap(node, t)});
        int k = slot_count(node);
        int nt = (t + 1) % k;
        int slot = trace_slot(node, nt);
        auto [aid, eidx] = attachment(node, slot);
        face.events.push_back({aid, eidx});
        const Arc* a = find_arc(*pic_, aid);
        const ArcEnd& other = a->ends[1 - eidx];
        node = other.node;
        t = trace_pos(node, other.slot);
      } while (!(node == node0 && t == t0));
    };
    for (ComponentInfo& c : comps_) {
      if (c.is_loop) {
        c.faces.resize(2);  // side 0 and side 1
        continue;
      }
      std::vector<int> nodes = c.vertices;
      if (c.has_boundary) nodes.insert(nodes.begin(), kBoundaryNode);
      for (int n : nodes) {
        int k = slot_count(n);
        if (k == 0) {
          FaceInfo f;
          f.corners.push_back({n, 0});
          c.faces.push_back(std::move(f));
          continue;
        }
        for (int t = 0; t < k; ++t) {
          if (visited.count({n, t})) continue;
          FaceInfo f;
          trace_from(n, t, f);
          c.faces.push_back(std::move(f));
        }
      }
      // canonical face order: by minimal corner
      std::sort(c.faces.begin(), c.faces.end(), [](const FaceInfo& a, const FaceInfo& b) {
        return *std::min_element(a.corners.begin(), a.corners.end()) <
               *std::min_element(b.corners.begin(), b.corners.end());
      });
    }
    for (int ci = 0; ci < comp_count(); ++ci) {
      const ComponentInfo& c = comps_[ci];
      if (c.is_loop) {
        side_face_[{c.loop_arc, 0}] = {ci, 0};
        side_face_[{c.loop_arc, 1}] = {ci, 1};
        continue;
      }
      for (int fi = 0; fi < static_cast<int>(c.faces.size()); ++fi) {
        for (const Corner& cor : c.faces[fi].corners) corner_face_[cor] = {ci, fi};
        for (const TraceEvent& ev : c.faces[fi].events) side_face_[{ev.arc, ev.tail_end}] = {ci, fi};
      }
    }
  }

  void build_regions() {
    for (int ci = 0; ci < comp_count(); ++ci)
      for (int fi = 0; fi < static_cast<int>(comps_[ci].faces.size()); ++fi) {
        flat_[{ci, fi}] = static_cast<int>(unflat_.size());
        unflat_.push_back({ci, fi});
      }
    uf_.resize(unflat_.size());
    for (std::size_t i = 0; i < uf_.size(); ++i) uf_[i] = static_cast<int>(i);
    for (const NestRecord& r : pic_->nesting) {
      auto child = comp_by_ref(r.comp);
      auto parent = comp_by_ref(r.parent);
      if (!child || !parent) throw picture_error("nesting record references unknown component");
      if (r.own_face < 0 || r.own_face >= static_cast<int>(comps_[*child].faces.size()) ||
          r.parent_face < 0 || r.parent_face >= static_cast<int>(comps_[*parent].faces.size()))
        throw picture_error("nesting record face out of range");
      unite(flat_.at({*child, r.own_face}), flat_.at({*parent, r.parent_face}));
    }
  }
};

// --- reading words from the map ------------------------------------------

inline LetterSeq corner_word(const Picture& p, const Analysis& an, const Corner& c) {
  if (is_boundary(c.node)) throw picture_error("corner_word: boundary corners have no vertex word");
  const VertexDisk* v = find_vertex(p, c.node);
  if (!v) throw picture_error("corner_word: unknown vertex");
  int k = static_cast<int>(v->rotation.size());
  if (c.gap < 0 || c.gap >= std::max(k, 1)) throw picture_error("corner_word: bad gap");
  LetterSeq out;
  for (int i = 0; i < k; ++i) {
    int slot = (c.gap + i) % k;
    auto [aid, eidx] = an.attachment(c.node, slot);
    const Arc* a = find_arc(p, aid);
    out.emplace_back(a->label, end_sign(*a, eidx));
  }
  return out;
}

inline LetterSeq boundary_label(const Picture& p, const Analysis& an) {
  int k = static_cast<int>(p.boundary.rotation.size());
  LetterSeq out;
  for (int i = 0; i < k; ++i) {
    int slot = (p.boundary.basepoint_gap + i) % k;
    auto [aid, eidx] = an.attachment(kBoundaryNode, slot);
    const Arc* a = find_arc(p, aid);
    out.emplace_back(a->label, end_sign(*a, eidx));
  }
  return out;
}

inline LetterSeq boundary_label(const Picture& p) {
  Analysis an(p);
  return boundary_label(p, an);
}

inline LetterSeq relator_target(const Presentation& pres, const VertexDisk& v) {
  const LetterSeq& r = pres.relator(v.relator).letters();
  return v.sign > 0 ? r : inverse(r);
}

inline std::vector<Corner> basic_corners(const Picture& p, const Analysis& an, int vertex_id,
                                         const Presentation& pres) {
  const VertexDisk* v = find_vertex(p, vertex_id);
  if (!v) throw picture_error("basic_corners: unknown vertex");
  LetterSeq target = relator_target(pres, *v);
  std::vector<Corner> out;
  int k = static_cast<int>(v->rotation.size());
  for (int g = 0; g < k; ++g) {
    Corner c{vertex_id, g};
    if (corner_word(p, an, c) == target) out.push_back(c);
  }
  return out;
}

// --- validation ----------------------------------------------------------

struct ValidationReport {
  std::vector<std::string> findings;
  bool valid() const { return findings.empty(); }
};

inline ValidationReport validate(const Picture& p, const Presentation& pres) {
  ValidationReport rep;
  auto fail = [&](const std::string& s) { rep.findings.push_back(s); };

  std::set<int> vids, aids;
  for (const auto& v : p.vertices)
    if (!vids.insert(v.id).second) fail("duplicate vertex id " + std::to_string(v.id));
  for (const auto& a : p.arcs)
    if (!aids.insert(a.id).second) fail("duplicate arc id " + std::to_string(a.id));
  for (const auto& v : p.vertices) {
    if (v.relator < 0 || v.relator >= pres.num_relators())
      fail("vertex " + std::to_string(v.id) + ": bad relator index");
    if (v.sign != 1 && v.sign != -1) fail("vertex " + std::to_string(v.id) + ": bad sign");
    int k = static_cast<int>(v.rotation.size());
    if (v.basepoint_gap < 0 || v.basepoint_gap >= std::max(k, 1))
      fail("vertex " + std::to_string(v.id) + ": basepoint gap out of range");
  }
  {
    int k = static_cast<int>(p.boundary.rotation.size());
    if (p.boundary.basepoint_gap < 0 || p.boundary.basepoint_gap >= std::max(k, 1))
      fail("boundary basepoint gap out of range");
  }
  for (const auto& a : p.arcs) {
    if (a.label < 0 || a.label >= pres.alphabet().size())
      fail("arc " + std::to_string(a.id) + ": bad label");
    if (a.orient != 1 && a.orient != -1) fail("arc " + std::to_string(a.id) + ": bad orientation");
    if (!a.free_loop)
      for (int e = 0; e < 2; ++e)
        if (!is_boundary(a.ends[e].node) && !vids.count(a.ends[e].node))
          fail("arc " + std::to_string(a.id) + ": endpoint at unknown node");
  }
  if (!rep.valid()) return rep;

  std::optional<Analysis> an;
  try {
    an.emplace(p);
  } catch (const picture_error& e) {
    fail(std::string("structure: ") + e.what());
    return rep;
  }

  // Euler relation per non-loop component (drawn on its own sphere)
  for (int ci = 0; ci < an->comp_count(); ++ci) {
    const ComponentInfo& c = an->comp(ci);
    if (c.is_loop) continue;
    int nodes = static_cast<int>(c.vertices.size()) + (c.has_boundary ? 1 : 0);
    int e = static_cast<int>(c.arcs.size());
    int f = static_cast<int>(c.faces.size());
    if (nodes - e + f != 2)
      fail("component " + std::to_string(ci) + ": Euler relation fails (V-E+F = " +
           std::to_string(nodes - e + f) + ")");
  }

  // nesting forest: one record per non-root component, acyclic
  {
    std::map<int, int> parent_of;
    int root = an->comp_of_boundary();
    for (const NestRecord& r : p.nesting) {
      auto child = an->comp_by_ref(r.comp);
      auto par = an->comp_by_ref(r.parent);
      if (!child || !par) { fail("nesting record references unknown component"); continue; }
      if (*child == root) fail("nesting record for the root component");
      if (parent_of.count(*child)) fail("component has two nesting records");
      parent_of[*child] = *par;
    }
    for (int ci = 0; ci < an->comp_count(); ++ci)
      if (ci != root && !parent_of.count(ci))
        fail("component " + std::to_string(ci) + " has no nesting record");
    for (auto [c, dummy] : parent_of) {
      std::set<int> seen;
      int cur = c;
      while (cur != root) {
        if (!seen.insert(cur).second) { fail("nesting forest has a cycle"); break; }
        auto it = parent_of.find(cur);
        if (it == parent_of.end()) break;
        cur = it->second;
      }
    }
  }
  if (!rep.valid()) return rep;

  // labeling: every corner word a cyclic permutation of r(v)^sign(v)
  for (const auto& v : p.vertices) {
    LetterSeq target = relator_target(pres, v);
    int k = static_cast<int>(v.rotation.size());
    if (k != static_cast<int>(target.size())) {
      fail("vertex " + std::to_string(v.id) + ": slot count differs from relator length");
      continue;
    }
    if (k == 0) continue;
    LetterSeq w = corner_word(p, *an, Corner{v.id, 0});
    bool ok = false;
    for (int rot = 0; rot < k && !ok; ++rot) ok = rotate(target, rot) == w;
    if (!ok) {
      fail("vertex " + std::to_string(v.id) + ": corner word is not a cyclic permutation of its relator");
      continue;
    }
    if (corner_word(p, *an, Corner{v.id, v.basepoint_gap}) != target)
      fail("vertex " + std::to_string(v.id) + ": basepoint does not sit in a basic corner");
  }
  return rep;
}

// --- dipoles -------------------------------------------------------------

struct Dipole {
  int arc = 0;
  Corner c1, c2;
};

inline std::vector<Dipole> find_dipoles(const Picture& p, const Analysis& an,
                                        const Presentation& pres) {
  std::vector<Dipole> out;
  for (const Arc& a : p.arcs) {
    if (a.free_loop) continue;
    const ArcEnd& e0 = a.ends[0];
    const ArcEnd& e1 = a.ends[1];
    if (is_boundary(e0.node) || is_boundary(e1.node) || e0.node == e1.node) continue;
    const VertexDisk* v0 = find_vertex(p, e0.node);
    const VertexDisk* v1 = find_vertex(p, e1.node);
    if (v0->relator != v1->relator || v0->sign != -v1->sign) continue;
    int k0 = static_cast<int>(v0->rotation.size());
    int k1 = static_cast<int>(v1->rotation.size());
    for (int d0 = 0; d0 < 2; ++d0)
      for (int d1 = 0; d1 < 2; ++d1) {
        Corner c1{e0.node, (e0.slot + d0) % std::max(k0, 1)};
        Corner c2{e1.node, (e1.slot + d1) % std::max(k1, 1)};
        if (an.region_of_corner(c1) != an.region_of_corner(c2)) continue;
        if (corner_word(p, an, c1) == inverse(corner_word(p, an, c2)))
          out.push_back({a.id, c1, c2});
      }
  }
  return out;
}

// --- two-vertex subpictures ----------------------------------------------

struct TwoVertexClass {
  enum Kind { NotADipole, FoldingPair, CompleteDipole, PrimitiveDipole } kind = NotADipole;
  int exponent = 0;  // f for CompleteDipole/PrimitiveDipole, mod period
};

namespace detail {
/// Children of (comp, face) per the nesting forest.
inline std::vector<CompRef> children_of_face(const Picture& p, const Analysis& an, int comp,
                                             int face) {
  std::vector<CompRef> out;
  for (const NestRecord& r : p.nesting) {
    auto par = an.comp_by_ref(r.parent);
    if (par && *par == comp && r.parent_face == face) out.push_back(r.comp);
  }
  return out;
}

inline std::optional<NestRecord> nest_record_of(const Picture& p, const CompRef& ref) {
  for (const NestRecord& r : p.nesting)
    if (r.comp == ref) return r;
  return std::nullopt;
}
}  // namespace detail

/// Classifies the subpicture spanned by two vertices and their arcs.
/// Throws on NotConnected / NotSpherical; otherwise reports the kind.
inline TwoVertexClass classify_two_vertex_subpicture(const Picture& p, const Analysis& an, int v1,
                                                     int v2, const Presentation& pres) {
  if (v1 == v2) throw picture_error("classify: vertices must be distinct");
  const VertexDisk* a = find_vertex(p, v1);
  const VertexDisk* b = find_vertex(p, v2);
  if (!a || !b) throw picture_error("classify: unknown vertex");
  int ca = an.comp_of_vertex(v1);
  if (ca != an.comp_of_vertex(v2)) throw picture_error("classify: NotConnected");
  const ComponentInfo& comp = an.comp(ca);
  if (comp.has_boundary || comp.vertices.size() != 2)
    throw picture_error("classify: NotSpherical");

  if (a->relator != b->relator || a->sign != -b->sign) return {TwoVertexClass::NotADipole, 0};

  // every arc must constitute a dipole within the component
  for (int aid : comp.arcs) {
    const Arc* arc = find_arc(p, aid);
    if (arc->ends[0].node == arc->ends[1].node) return {TwoVertexClass::NotADipole, 0};
    bool ok = false;
    int k0 = an.slot_count(arc->ends[0].node);
    int k1 = an.slot_count(arc->ends[1].node);
    for (int d0 = 0; d0 < 2 && !ok; ++d0)
      for (int d1 = 0; d1 < 2 && !ok; ++d1) {
        Corner c1{arc->ends[0].node, (arc->ends[0].slot + d0) % k0};
        Corner c2{arc->ends[1].node, (arc->ends[1].slot + d1) % k1};
        if (an.face_of_corner(c1) != an.face_of_corner(c2)) continue;
        if (corner_word(p, an, c1) == inverse(corner_word(p, an, c2))) ok = true;
      }
    if (!ok) return {TwoVertexClass::NotADipole, 0};
  }

  const RootPeriod& rp = pres.root_period(a->relator);
  if (rp.period == 1) return {TwoVertexClass::FoldingPair, 0};

  // dual BFS from the face of v1's basepoint corner to the face of v2's
  auto f1 = an.face_of_corner(Corner{v1, a->basepoint_gap});
  auto f2 = an.face_of_corner(Corner{v2, b->basepoint_gap});
  if (f1 == f2) return {TwoVertexClass::FoldingPair, 0};

  // Build crossing edges: crossing from the face before an arc end's slot to
  // the face after it reads end_sign * label.
  std::map<int, std::vector<std::pair<int, Letter>>> adj;  // face idx -> (face idx, letter)
  for (int aid : comp.arcs) {
    const Arc* arc = find_arc(p, aid);
    const ArcEnd& e = arc->ends[0];
    int k = an.slot_count(e.node);
    int from = an.face_of_corner(Corner{e.node, e.slot}).second;
    int to = an.face_of_corner(Corner{e.node, (e.slot + 1) % k}).second;
    Letter l(arc->label, end_sign(*arc, 0));
    adj[from].push_back({to, l});
    adj[to].push_back({from, l.inverse()});
  }
  std::map<int, LetterSeq> labels;
  std::queue<int> q;
  labels[f1.second] = {};
  q.push(f1.second);
  while (!q.empty()) {
    int cur = q.front();
    q.pop();
    for (auto& [nxt, l] : adj[cur]) {
      if (labels.count(nxt)) continue;
      LetterSeq seq = labels[cur];
      seq.push_back(l);
      labels[nxt] = std::move(seq);
      q.push(nxt);
    }
  }
  auto it = labels.find(f2.second);
  if (it == labels.end()) return {TwoVertexClass::NotADipole, 0};
  Word path = reduce(it->second);
  // path must be root^t
  int m = rp.root.length();
  if (path.length() % m != 0) return {TwoVertexClass::NotADipole, 0};
  int t = path.length() / m;
  if (path == rp.root.pow(t)) {
    // keep t
  } else if (path == rp.root.pow(-t)) {
    t = -t;
  } else {
    return {TwoVertexClass::NotADipole, 0};
  }
  int l = rp.period;
  int f = ((t % l) + l) % l;
  if (f == 0) return {TwoVertexClass::FoldingPair, 0};
  if (std::gcd(f, l) == 1) return {TwoVertexClass::PrimitiveDipole, f};
  return {TwoVertexClass::CompleteDipole, f};
}

// --- folding pairs -------------------------------------------------------

struct FoldingPair {
  int v1 = 0, v2 = 0;
  int region = 0;  // region of the basepoints
};

inline std::vector<FoldingPair> find_folding_pairs(const Picture& p, const Analysis& an,
                                                   const Presentation& pres) {
  std::vector<FoldingPair> out;
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    for (std::size_t j = i + 1; j < p.vertices.size(); ++j) {
      const VertexDisk& a = p.vertices[i];
      const VertexDisk& b = p.vertices[j];
      if (a.relator != b.relator || a.sign != -b.sign) continue;
      int ca = an.comp_of_vertex(a.id);
      if (ca != an.comp_of_vertex(b.id)) continue;
      const ComponentInfo& comp = an.comp(ca);
      if (comp.has_boundary || comp.vertices.size() != 2) continue;
      // arcs all join the two vertices
      bool arcs_ok = true;
      for (int aid : comp.arcs) {
        const Arc* arc = find_arc(p, aid);
        if (arc->ends[0].node == arc->ends[1].node) { arcs_ok = false; break; }
      }
      if (!arcs_ok) continue;
      // basepoints co-regional (in the whole picture)
      int r1 = an.region_of_corner(Corner{a.id, a.basepoint_gap});
      int r2 = an.region_of_corner(Corner{b.id, b.basepoint_gap});
      if (r1 != r2) continue;
      // internal faces (everything but the outward face) must be childless
      auto rec = detail::nest_record_of(p, an.comp(ca).ref);
      if (!rec) continue;  // invalid nesting; skip
      bool childless = true;
      for (int fi = 0; fi < static_cast<int>(comp.faces.size()) && childless; ++fi) {
        if (fi == rec->own_face) continue;
        childless = detail::children_of_face(p, an, ca, fi).empty();
      }
      if (!childless) continue;
      out.push_back({a.id, b.id, r1});
    }
  return out;
}

// --- mirror image --------------------------------------------------------

/// Mirror image: reverses every rotation and flips vertex signs and arc
/// normal orientations. Free loops keep their orientation bit (the letter
/// read along a fixed crossing direction is reflection-invariant).
inline Picture mirror_picture(const Picture& p) {
  Analysis old_an(p);
  Picture q = p;
  auto flip_gap = [](int g, int k) { return k == 0 ? 0 : (k - g) % k; };
  for (auto& v : q.vertices) {
    std::reverse(v.rotation.begin(), v.rotation.end());
    v.sign = -v.sign;
    v.basepoint_gap = flip_gap(v.basepoint_gap, static_cast<int>(v.rotation.size()));
  }
  std::reverse(q.boundary.rotation.begin(), q.boundary.rotation.end());
  q.boundary.basepoint_gap =
      flip_gap(q.boundary.basepoint_gap, static_cast<int>(q.boundary.rotation.size()));
  for (auto& a : q.arcs) {
    if (a.free_loop) continue;
    a.orient = -a.orient;
    for (int e = 0; e < 2; ++e)
      a.ends[e].slot = old_an.slot_count(a.ends[e].node) - 1 - a.ends[e].slot;
  }
  // Faces persist under reflection; re-identify their indices in the new map
  // through a representative corner.
  Analysis new_an(q);
  auto map_face = [&](const CompRef& ref, int face) {
    int oc = *old_an.comp_by_ref(ref);
    const ComponentInfo& c = old_an.comp(oc);
    if (c.is_loop) return face;  // sides are reflection-invariant
    const Corner& rep = c.faces.at(face).corners.front();
    Corner mapped{rep.node, flip_gap(rep.gap, old_an.slot_count(rep.node))};
    return new_an.face_of_corner(mapped).second;
  };
  for (auto& r : q.nesting) {
    r.parent_face = map_face(r.parent, r.parent_face);
    r.own_face = map_face(r.comp, r.own_face);
  }
  return q;
}

// --- based isomorphism of components -------------------------------------

/// True if two boundary-free, loop-free components are isomorphic as based
/// labeled oriented maps (rotation-preserving; basepoints correspond).
inline bool components_isomorphic(const Picture& p1, const Analysis& a1, int c1,
                                  const Picture& p2, const Analysis& a2, int c2) {
  const ComponentInfo& ca = a1.comp(c1);
  const ComponentInfo& cb = a2.comp(c2);
  if (ca.has_boundary || cb.has_boundary || ca.is_loop || cb.is_loop) return false;
  if (ca.vertices.size() != cb.vertices.size() || ca.arcs.size() != cb.arcs.size()) return false;
  if (ca.vertices.empty()) return true;
  int b0 = cb.vertices.front();
  const VertexDisk* vb0 = find_vertex(p2, b0);
  int n0 = static_cast<int>(vb0->rotation.size());
  for (int a0 : ca.vertices) {
    const VertexDisk* va0 = find_vertex(p1, a0);
    if (va0->relator != vb0->relator || va0->sign != vb0->sign ||
        static_cast<int>(va0->rotation.size()) != n0)
      continue;
    for (int off0 = 0; off0 < std::max(n0, 1); ++off0) {
      // propagate the candidate correspondence b-vertex -> (a-vertex, offset)
      std::map<int, std::pair<int, int>> vmap{{b0, {a0, off0}}};
      std::map<int, int> arc_map;  // arc of p2 -> arc of p1
      std::queue<int> work;
      work.push(b0);
      bool ok = true;
      while (ok && !work.empty()) {
        int bv = work.front();
        work.pop();
        auto [av, off] = vmap.at(bv);
        const VertexDisk* vb = find_vertex(p2, bv);
        const VertexDisk* va = find_vertex(p1, av);
        int n = static_cast<int>(vb->rotation.size());
        if (static_cast<int>(va->rotation.size()) != n || va->relator != vb->relator ||
            va->sign != vb->sign || va->basepoint_gap != (vb->basepoint_gap + off) % std::max(n, 1)) {
          ok = false;
          break;
        }
        for (int s = 0; s < n && ok; ++s) {
          auto [bid, be] = a2.attachment(bv, s);
          auto [aid, ae] = a1.attachment(av, (s + off) % n);
          const Arc* barc = find_arc(p2, bid);
          const Arc* aarc = find_arc(p1, aid);
          if (barc->label != aarc->label || end_sign(*barc, be) != end_sign(*aarc, ae)) {
            ok = false;
            break;
          }
          auto it = arc_map.find(bid);
          if (it != arc_map.end()) {
            if (it->second != aid) ok = false;
            continue;
          }
          arc_map[bid] = aid;
          const ArcEnd& bo = barc->ends[1 - be];
          const ArcEnd& ao = aarc->ends[1 - ae];
          if (is_boundary(bo.node) != is_boundary(ao.node)) { ok = false; break; }
          int n2 = a1.slot_count(ao.node);
          if (a2.slot_count(bo.node) != n2) { ok = false; break; }
          int off2 = ((ao.slot - bo.slot) % n2 + n2) % n2;
          auto vit = vmap.find(bo.node);
          if (vit == vmap.end()) {
            vmap[bo.node] = {ao.node, off2};
            work.push(bo.node);
          } else if (vit->second != std::make_pair(ao.node, off2)) {
            ok = false;
          }
        }
      }
      if (!ok) continue;
      if (vmap.size() != cb.vertices.size() || arc_map.size() != cb.arcs.size()) continue;
      std::set<int> image;
      for (auto& [k, v] : arc_map) image.insert(v);
      if (image.size() != arc_map.size()) continue;
      std::set<int> vimage;
      for (auto& [k, v] : vmap) vimage.insert(v.first);
      if (vimage.size() != vmap.size()) continue;
      return true;
    }
  }
  return false;
}

// --- signed vertex counts ------------------------------------------------

inline std::map<int, int> signed_vertex_count(const Picture& p) {
  std::map<int, int> out;
  for (const auto& v : p.vertices) out[v.relator] += v.sign;
  return out;
}

}  // namespace picalc

#endif  // PICALC_PICTURE_HPP
