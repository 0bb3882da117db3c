// Bridge moves: cut two arc segments facing the same region and reconnect.
// Included by moves.hpp; do not include directly.
#ifndef PICALC_BRIDGE_HPP
#define PICALC_BRIDGE_HPP

#include "picalc/picture.hpp"

namespace picalc {
namespace detail {

/// Reparents nesting records: children of (old_parent, old_face) now hang
/// off (new_parent, new_face).
inline void reparent_children(Picture& q, const CompRef& old_parent, int old_face,
                              const CompRef& new_parent, int new_face) {
  for (NestRecord& r : q.nesting)
    if (r.parent == old_parent && r.parent_face == old_face) {
      r.parent = new_parent;
      r.parent_face = new_face;
    }
}

inline Picture bridge_arc_arc(const Picture& p, const BridgeMove& m, const Analysis& an,
                              const Arc& a1, const Arc& a2) {
  int e1 = m.s1.side, e2 = m.s2.side;
  auto of1 = an.face_of_side(a1.id, e1);
  auto of2 = an.face_of_side(a2.id, e2);
  int rlabel = an.region_of(of1.first, of1.second);
  bool split = of1 == of2;

  // designated corner: the corner preceding the traversal of side 1 in its
  // old face cycle; after a split it marks the first sub-region.
  Corner designated{};
  if (split) {
    const FaceInfo& f = an.comp(of1.first).faces[of1.second];
    bool found = false;
    for (std::size_t i = 0; i < f.events.size(); ++i)
      if (f.events[i].arc == a1.id && f.events[i].tail_end == e1) {
        designated = f.corners[i];
        found = true;
      }
    if (!found) throw move_error("bridge: internal trace lookup failed");
  }

  // reconnect: (tail1 ... head2) keeps a1's id, (tail2 ... head1) keeps a2's
  Picture q = p;
  Arc* n1 = nullptr;
  Arc* n2 = nullptr;
  for (Arc& a : q.arcs) {
    if (a.id == a1.id) n1 = &a;
    if (a.id == a2.id) n2 = &a;
  }
  ArcEnd t1 = a1.ends[e1], h1 = a1.ends[1 - e1];
  ArcEnd t2 = a2.ends[e2], h2 = a2.ends[1 - e2];
  int s_t1 = end_sign(a1, e1), s_h1 = end_sign(a1, 1 - e1);
  int s_t2 = end_sign(a2, e2), s_h2 = end_sign(a2, 1 - e2);
  n1->ends[0] = t1;
  n1->ends[1] = h2;
  n1->orient = s_t1;
  n2->ends[0] = t2;
  n2->ends[1] = h1;
  n2->orient = s_t2;
  if (end_sign(*n1, 1) != s_h2 || end_sign(*n2, 1) != s_h1)
    throw move_error("bridge: incompatible arc orientations");
  auto set_slot = [&](const ArcEnd& e, int arc_id) {
    if (is_boundary(e.node))
      q.boundary.rotation[e.slot] = arc_id;
    else
      for (VertexDisk& v : q.vertices)
        if (v.id == e.node) v.rotation[e.slot] = arc_id;
  };
  set_slot(h2, a1.id);
  set_slot(h1, a2.id);

  // relabel regions and rebuild the nesting forest
  Analysis an2(q);
  int fresh_a = 0;
  for (int ci = 0; ci < an.comp_count(); ++ci)
    for (int fi = 0; fi < static_cast<int>(an.comp(ci).faces.size()); ++fi)
      fresh_a = std::max(fresh_a, an.region_of(ci, fi) + 1);
  int fresh_b = fresh_a + 1;
  std::set<CompRef> second(m.second_side.begin(), m.second_side.end());

  std::map<std::pair<int, int>, int> labels;
  for (int ci = 0; ci < an2.comp_count(); ++ci) {
    const ComponentInfo& c = an2.comp(ci);
    for (int fi = 0; fi < static_cast<int>(c.faces.size()); ++fi) {
      int lab;
      std::pair<int, int> oldface;
      if (c.is_loop) {
        int oc = an.comp_of_arc(c.loop_arc);
        oldface = {oc, fi};
      } else {
        const Corner& c0 = c.faces[fi].corners.front();
        oldface = an.face_of_corner(c0);
      }
      int oldlab = an.region_of(oldface.first, oldface.second);
      if (oldlab != rlabel) {
        lab = oldlab;
      } else if (!split) {
        lab = rlabel;
      } else if (oldface == of1) {
        bool has_designated = false;
        for (const Corner& cc : c.faces[fi].corners)
          if (cc == designated) has_designated = true;
        lab = has_designated ? fresh_a : fresh_b;
      } else {
        lab = second.count(an.comp(oldface.first).ref) ? fresh_b : fresh_a;
      }
      labels[{ci, fi}] = lab;
    }
  }
  q.nesting = rebuild_nesting(an2, labels);
  return q;
}

inline Picture bridge_arc_loop(const Picture& p, const Analysis& an, const Arc& arc, int arc_side,
                               const Arc& loop, int loop_side) {
  // The loop is absorbed into the arc; combinatorially the rotation data is
  // unchanged and contents of the loop's far side move to the arc's other
  // side.
  Picture q = p;
  CompRef loop_ref{CompRef::Loop, loop.id};
  auto far_side_children_target = an.face_of_side(arc.id, 1 - arc_side);
  CompRef target_comp = an.comp(far_side_children_target.first).ref;
  reparent_children(q, loop_ref, 1 - loop_side, target_comp, far_side_children_target.second);
  // children floating next to the loop inside the region stay in it
  auto rf = an.face_of_side(arc.id, arc_side);
  reparent_children(q, loop_ref, loop_side, an.comp(rf.first).ref, rf.second);
  erase_record(q, loop_ref);
  std::erase_if(q.arcs, [&](const Arc& a) { return a.id == loop.id; });
  return q;
}

inline Picture bridge_loop_loop(const Picture& p, const Analysis& an, const Arc& l1, int side1,
                                const Arc& l2, int side2) {
  // The two circles merge; l1 survives, contents of both far sides end up on
  // l1's far side.
  Picture q = p;
  CompRef r1{CompRef::Loop, l1.id}, r2{CompRef::Loop, l2.id};
  reparent_children(q, r2, 1 - side2, r1, 1 - side1);
  reparent_children(q, r2, side2, r1, side1);
  erase_record(q, r2);
  std::erase_if(q.arcs, [&](const Arc& a) { return a.id == l2.id; });
  return q;
}

inline Picture apply_bridge(const Picture& p, const BridgeMove& m) {
  const Arc* a1 = find_arc(p, m.s1.arc);
  const Arc* a2 = find_arc(p, m.s2.arc);
  if (!a1 || !a2) throw move_error("bridge: unknown arc");
  if (a1->id == a2->id) throw move_error("bridge: the two sides must belong to distinct arcs");
  if (m.s1.side < 0 || m.s1.side > 1 || m.s2.side < 0 || m.s2.side > 1)
    throw move_error("bridge: bad side");
  Analysis an(p);
  auto f1 = an.face_of_side(a1->id, m.s1.side);
  auto f2 = an.face_of_side(a2->id, m.s2.side);
  if (an.region_of(f1.first, f1.second) != an.region_of(f2.first, f2.second))
    throw move_error("bridge: sides do not face a common region");
  Letter l1 = cross_letter(p, *a1, m.s1);
  Letter l2 = cross_letter(p, *a2, m.s2);
  if (l1 != l2.inverse())
    throw move_error("bridge: labels or orientations are incompatible");
  if (!a1->free_loop && !a2->free_loop) return bridge_arc_arc(p, m, an, *a1, *a2);
  if (a1->free_loop && a2->free_loop)
    return bridge_loop_loop(p, an, *a1, m.s1.side, *a2, m.s2.side);
  if (a2->free_loop) return bridge_arc_loop(p, an, *a1, m.s1.side, *a2, m.s2.side);
  return bridge_arc_loop(p, an, *a2, m.s2.side, *a1, m.s1.side);
}

}  // namespace detail
}  // namespace picalc

#endif  // PICALC_BRIDGE_HPP
