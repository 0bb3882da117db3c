// Constructive direction of the picture calculus: build a picture from a
// normal-closure membership certificate, search for certificates at bounded
// cost, and glue two disk pictures with identical boundary labels into a
// spherical picture.
#ifndef PICALC_BUILDER_HPP
#define PICALC_BUILDER_HPP

#include <json.hpp>

#include "picalc/abelian.hpp"
#include "picalc/moves.hpp"
#include "picalc/picture.hpp"
#include "picalc/presentation.hpp"

namespace picalc {

class builder_error : public picture_error {
 public:
  explicit builder_error(const std::string& what) : picture_error(what) {}
};

/// Certificate of normal-closure membership: a formal product
/// u_1 r_1^{e_1} u_1^-1 ... u_n r_n^{e_n} u_n^-1.
struct CertificateFactor {
  Word conjugator;
  int relator = 0;
  int sign = 1;
};

struct ConjugateProduct {
  std::vector<CertificateFactor> factors;
};

inline Word evaluate(const ConjugateProduct& cp, const Presentation& pres) {
  Word acc;
  for (const auto& f : cp.factors) {
    if (f.relator < 0 || f.relator >= pres.num_relators())
      throw builder_error("evaluate: bad relator index " + std::to_string(f.relator));
    if (f.sign != 1 && f.sign != -1) throw builder_error("evaluate: bad sign");
    acc = acc * f.conjugator * pres.relator(f.relator).pow(f.sign) * f.conjugator.inverse();
  }
  return acc;
}

/// The unreduced letter sequence of the product; this is the boundary label
/// of the constructed picture, identically.
inline LetterSeq spelled_product(const ConjugateProduct& cp, const Presentation& pres) {
  LetterSeq out;
  for (const auto& f : cp.factors) {
    const LetterSeq& u = f.conjugator.letters();
    LetterSeq r = pres.relator(f.relator).letters();
    if (f.sign < 0) r = inverse(r);
    out.insert(out.end(), u.begin(), u.end());
    out.insert(out.end(), r.begin(), r.end());
    LetterSeq ui = inverse(u);
    out.insert(out.end(), ui.begin(), ui.end());
  }
  return out;
}

/// Lemma-1 style "lollipop" picture: each factor contributes one vertex whose
/// arcs run straight to the boundary; conjugator letters contribute nested
/// boundary-to-boundary arcs. The boundary label is identically the spelled
/// (unreduced) product.
inline Picture picture_from_certificate(const ConjugateProduct& cp, const Presentation& pres) {
  require_rc(pres);
  Picture p;
  LetterSeq spelled = spelled_product(cp, pres);
  int n = static_cast<int>(spelled.size());
  p.boundary.rotation.assign(n, -1);
  p.boundary.basepoint_gap = 0;
  int pos = 0;
  int next_arc = 0;
  for (std::size_t i = 0; i < cp.factors.size(); ++i) {
    const auto& f = cp.factors[i];
    const LetterSeq& u = f.conjugator.letters();
    LetterSeq r = pres.relator(f.relator).letters();
    if (f.sign < 0) r = inverse(r);
    int m = static_cast<int>(u.size());
    int k = static_cast<int>(r.size());
    // conjugator arcs: boundary position pos+j pairs with pos+2m+k-1-j
    for (int j = 0; j < m; ++j) {
      Arc a;
      a.id = next_arc++;
      a.label = u[j].gen;
      a.orient = u[j].sign;  // read at end 0; the far end reads the inverse
      a.ends[0] = {kBoundaryNode, pos + j};
      a.ends[1] = {kBoundaryNode, pos + 2 * m + k - 1 - j};
      p.boundary.rotation[a.ends[0].slot] = a.id;
      p.boundary.rotation[a.ends[1].slot] = a.id;
      p.arcs.push_back(a);
    }
    // relator vertex: slot j attaches to boundary position pos+m+j and both
    // ends read r[j] (vertex-boundary arcs carry equal end signs)
    VertexDisk v;
    v.id = static_cast<int>(i);
    v.relator = f.relator;
    v.sign = f.sign;
    v.basepoint_gap = 0;
    for (int j = 0; j < k; ++j) {
      Arc a;
      a.id = next_arc++;
      a.label = r[j].gen;
      a.orient = r[j].sign;
      a.ends[0] = {static_cast<int>(i), j};
      a.ends[1] = {kBoundaryNode, pos + m + j};
      v.rotation.push_back(a.id);
      p.boundary.rotation[a.ends[1].slot] = a.id;
      p.arcs.push_back(a);
    }
    p.vertices.push_back(std::move(v));
    pos += 2 * m + k;
  }
  return p;  // a single component: no nesting records needed
}

// --- bounded certificate search ------------------------------------------

struct MembershipVerdict {
  enum Status { Found, NotFoundWithin, RefutedByAbelianization } status = NotFoundWithin;
  ConjugateProduct certificate;  // set when Found
  std::string reason;            // set when refuted
  int max_factors = 0;
  int max_conjugator_len = 0;
};

namespace detail {
inline void enumerate_reduced(const Alphabet& alpha, int maxlen, LetterSeq& cur,
                              std::vector<Word>& out) {
  out.push_back(Word::from_reduced(cur));
  if (static_cast<int>(cur.size()) == maxlen) return;
  for (int g = 0; g < alpha.size(); ++g)
    for (int s : {1, -1}) {
      Letter l(g, s);
      if (!cur.empty() && cur.back() == l.inverse()) continue;
      cur.push_back(l);
      enumerate_reduced(alpha, maxlen, cur, out);
      cur.pop_back();
    }
}
}  // namespace detail

/// Deterministic bounded search for a certificate evaluating to w.
/// Certificates are ordered by factor count, then lexicographically with
/// conjugators in length-lex order, relator index, sign (+1 before -1).
inline MembershipVerdict witness_search(const Word& w, const Presentation& pres, int max_factors,
                                        int max_conjugator_len) {
  require_rc(pres);
  MembershipVerdict v;
  v.max_factors = max_factors;
  v.max_conjugator_len = max_conjugator_len;

  // abelianization refutation: the exponent vector of w must lie in the
  // integer row lattice of the relator exponent matrix
  {
    std::vector<BigInt> ev(pres.alphabet().size());
    for (const Letter& l : w.letters()) ev[l.gen] += l.sign;
    if (!lattice_membership(ev, exponent_matrix(pres))) {
      v.status = MembershipVerdict::RefutedByAbelianization;
      v.reason = "exponent vector lies outside the relator lattice";
      return v;
    }
  }

  std::vector<Word> conjugators;
  {
    LetterSeq cur;
    detail::enumerate_reduced(pres.alphabet(), max_conjugator_len, cur, conjugators);
    std::stable_sort(conjugators.begin(), conjugators.end(),
                     [](const Word& a, const Word& b) { return a.length() < b.length(); });
  }
  // all single factors u r^e u^-1 in order
  std::vector<std::pair<CertificateFactor, Word>> moves;
  for (const Word& u : conjugators)
    for (int ri = 0; ri < pres.num_relators(); ++ri)
      for (int s : {1, -1})
        moves.push_back({{u, ri, s}, u * pres.relator(ri).pow(s) * u.inverse()});

  std::vector<int> choice;
  std::function<bool(const Word&, int)> dfs = [&](const Word& acc, int depth) {
    if (acc == w) return true;
    if (depth == max_factors) return false;
    for (int i = 0; i < static_cast<int>(moves.size()); ++i) {
      choice.push_back(i);
      if (dfs(acc * moves[i].second, depth + 1)) return true;
      choice.pop_back();
    }
    return false;
  };
  if (dfs(Word(), 0)) {
    for (int i : choice) v.certificate.factors.push_back(moves[i].first);
    v.status = MembershipVerdict::Found;
  }
  return v;
}

// --- gluing (Lemma 6 proof device) ---------------------------------------

struct GlueResult {
  Picture picture;
  Presentation presentation;  // union of the two input presentations
};

inline GlueResult glue(const Picture& p1, const Presentation& pres1, const Picture& p2,
                       const Presentation& pres2) {
  if (!(pres1.alphabet() == pres2.alphabet()))
    throw builder_error("glue: AlphabetMismatch");
  Analysis an1(p1);
  {
    Analysis check2(p2);
    if (boundary_label(p1, an1) != boundary_label(p2, check2))
      throw builder_error("glue: BoundaryMismatch");
  }

  // union presentation; remap p2's relator indices
  std::vector<Word> relators = pres1.relators();
  std::vector<int> remap(pres2.num_relators());
  for (int i = 0; i < pres2.num_relators(); ++i) {
    auto it = std::find(relators.begin(), relators.end(), pres2.relator(i));
    if (it == relators.end()) {
      remap[i] = static_cast<int>(relators.size());
      relators.push_back(pres2.relator(i));
    } else {
      remap[i] = static_cast<int>(it - relators.begin());
    }
  }
  Presentation upres(pres1.alphabet(), relators);

  // mirror p2 and renumber it above p1
  Picture q2 = mirror_picture(p2);
  int vbase = next_vertex_id(p1);
  int abase = next_arc_id(p1);
  for (auto& v : q2.vertices) {
    v.id += vbase;
    v.relator = remap[v.relator];
    for (int& a : v.rotation) a += abase;
  }
  for (auto& a : q2.arcs) {
    a.id += abase;
    for (int e = 0; e < 2; ++e)
      if (!a.free_loop && !is_boundary(a.ends[e].node)) a.ends[e].node += vbase;
  }
  for (auto& r : q2.nesting) {
    if (r.comp.kind != CompRef::Boundary) r.comp.id += (r.comp.kind == CompRef::Vertex ? vbase : abase);
    if (r.parent.kind != CompRef::Boundary)
      r.parent.id += (r.parent.kind == CompRef::Vertex ? vbase : abase);
  }
  Analysis an2(q2);

  int n = static_cast<int>(p1.boundary.rotation.size());
  int bg1 = p1.boundary.basepoint_gap;
  int bg2 = q2.boundary.basepoint_gap;
  auto p1_slot = [&](int t) { return (bg1 + t) % n; };
  auto q2_slot = [&](int t) { return (bg2 + t) % n; };

  // assemble: all vertices, plus arcs that do not touch a boundary circle
  Picture g;
  g.vertices = p1.vertices;
  g.vertices.insert(g.vertices.end(), q2.vertices.begin(), q2.vertices.end());
  std::map<int, const Arc*> arcs1, arcs2;  // boundary-touching arcs by id
  for (const Arc& a : p1.arcs) {
    bool touches = !a.free_loop && (is_boundary(a.ends[0].node) || is_boundary(a.ends[1].node));
    if (touches)
      arcs1[a.id] = &a;
    else
      g.arcs.push_back(a);
  }
  for (const Arc& a : q2.arcs) {
    bool touches = !a.free_loop && (is_boundary(a.ends[0].node) || is_boundary(a.ends[1].node));
    if (touches)
      arcs2[a.id] = &a;
    else
      g.arcs.push_back(a);
  }

  // fusion pairing by boundary position: p1 position t joins the mirrored
  // picture's position n-1-t; record (arc id, end idx) per position
  struct BEnd {
    int arc = -1, end = 0;
    bool from_p1 = true;
  };
  std::vector<BEnd> pos1(n), pos2(n);
  auto fill = [&](const Picture& pic, std::vector<BEnd>& pos, int bg, bool from1) {
    for (const Arc& a : pic.arcs) {
      if (a.free_loop) continue;
      for (int e = 0; e < 2; ++e)
        if (is_boundary(a.ends[e].node)) {
          int t = ((a.ends[e].slot - bg) % n + n) % n;
          pos[t] = {a.id, e, from1};
        }
    }
  };
  if (n > 0) {
    fill(p1, pos1, bg1, true);
    fill(q2, pos2, bg2, false);
  }

  // chain fusion: walk maximal chains of boundary-touching arcs
  auto arc_of = [&](const BEnd& b) { return b.from_p1 ? arcs1.at(b.arc) : arcs2.at(b.arc); };
  auto partner = [&](const BEnd& b) {  // the fused end on the other disk
    const Arc* a = arc_of(b);
    int t = b.from_p1 ? ((a->ends[b.end].slot - bg1) % n + n) % n
                      : ((a->ends[b.end].slot - bg2) % n + n) % n;
    return b.from_p1 ? pos2[(n - 1 - t) % n] : pos1[(n - 1 - t) % n];
  };
  std::set<std::pair<bool, int>> used;  // (from_p1, arc id)
  struct LoopSides {
    int arc_id;        // surviving id
    int label, orient;
    std::pair<int, int> side_face[2];  // old (comp,face) per side, in owner analysis
    bool owner_p1;
  };
  std::vector<LoopSides> new_loops;

  auto other_end_of = [&](const BEnd& b) {
    const Arc* a = arc_of(b);
    return BEnd{b.arc, 1 - b.end, b.from_p1};
  };

  // open chains: start from arcs with exactly one boundary end
  auto vertex_end_count = [&](const Arc* a) {
    int c = 0;
    for (int e = 0; e < 2; ++e)
      if (!is_boundary(a->ends[e].node)) ++c;
    return c;
  };
  std::vector<std::pair<bool, const Arc*>> starters;
  for (auto& [id, a] : arcs1)
    if (vertex_end_count(a) == 1) starters.push_back({true, a});
  for (auto& [id, a] : arcs2)
    if (vertex_end_count(a) == 1) starters.push_back({false, a});
  for (auto& [from1, a0] : starters) {
    if (used.count({from1, a0->id})) continue;
    // walk from the vertex end through fusions to the far vertex end
    int ve0 = is_boundary(a0->ends[0].node) ? 1 : 0;
    BEnd cur{a0->id, 1 - ve0, from1};
    used.insert({from1, a0->id});
    Letter first(arc_of(cur)->label, end_sign(*arc_of(cur), ve0));
    BEnd last = cur;
    while (true) {
      BEnd nxt = partner(last);
      if (nxt.arc < 0) throw builder_error("glue: dangling boundary end");
      used.insert({nxt.from_p1, nxt.arc});
      const Arc* na = arc_of(nxt);
      if (na->label != arc_of(last)->label) throw builder_error("glue: label mismatch along seam");
      if (!is_boundary(na->ends[1 - nxt.end].node)) {
        // closes at a vertex
        Arc fused;
        fused.id = a0->id;  // reuse the starter's id (starters enumerated first by p1)
        fused.label = a0->label;
        fused.ends[0] = a0->ends[ve0];
        fused.ends[1] = na->ends[1 - nxt.end];
        fused.orient = first.sign;
        if (end_sign(fused, 1) != end_sign(*na, 1 - nxt.end))
          throw builder_error("glue: inconsistent orientations along seam");
        g.arcs.push_back(fused);
        break;
      }
      last = other_end_of(nxt);
    }
  }
  // closed chains become free loops
  for (auto& [id, a] : arcs1) {
    if (used.count({true, id})) continue;
    // trace the cycle, marking everything used
    BEnd start{id, 0, true};
    BEnd cur = start;
    do {
      used.insert({cur.from_p1, cur.arc});
      cur = other_end_of(partner(cur));
    } while (!(cur.from_p1 == start.from_p1 && cur.arc == start.arc));
    Arc loop;
    loop.id = id;
    loop.label = a->label;
    loop.free_loop = true;
    // side 0 of the loop is the side traced as tail end 0 of the
    // representative arc; crossing out of it reads -end_sign (boundary tail)
    loop.orient = -end_sign(*a, 0);
    g.arcs.push_back(loop);
    LoopSides ls;
    ls.arc_id = id;
    ls.label = a->label;
    ls.orient = loop.orient;
    ls.owner_p1 = true;
    ls.side_face[0] = an1.face_of_side(id, 0);
    ls.side_face[1] = an1.face_of_side(id, 1);
    new_loops.push_back(ls);
  }
  for (auto& [id, a] : arcs2) {
    if (used.count({false, id})) continue;
    throw builder_error("glue: unmatched seam arc");
  }
  std::sort(g.arcs.begin(), g.arcs.end(), [](const Arc& x, const Arc& y) { return x.id < y.id; });

  // region labels: p1 regions as-is, q2 regions offset, merged along the seam
  Analysis an3(g);
  int offset2 = 0;
  for (int ci = 0; ci < an1.comp_count(); ++ci)
    for (int fi = 0; fi < static_cast<int>(an1.comp(ci).faces.size()); ++fi)
      offset2 = std::max(offset2, an1.region_of(ci, fi) + 1);
  std::map<int, int> uf;
  std::function<int(int)> find = [&](int x) {
    if (!uf.count(x)) uf[x] = x;
    if (uf[x] != x) uf[x] = find(uf[x]);
    return uf[x];
  };
  auto unite = [&](int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) uf[std::max(a, b)] = std::min(a, b);
  };
  auto r1_of_corner = [&](const Corner& c) {
    auto [cc, ff] = an1.face_of_corner(c);
    return an1.region_of(cc, ff);
  };
  auto r2_of_corner = [&](const Corner& c) {
    auto [cc, ff] = an2.face_of_corner(c);
    return offset2 + an2.region_of(cc, ff);
  };
  if (n == 0) {
    unite(r1_of_corner(Corner{kBoundaryNode, 0}), r2_of_corner(Corner{kBoundaryNode, 0}));
  } else {
    for (int t = 0; t < n; ++t)
      unite(r1_of_corner(Corner{kBoundaryNode, p1_slot(t)}),
            r2_of_corner(Corner{kBoundaryNode, q2_slot((n - t) % n)}));
  }

  std::map<std::pair<int, int>, int> labels;
  for (int ci = 0; ci < an3.comp_count(); ++ci) {
    const ComponentInfo& c = an3.comp(ci);
    for (int fi = 0; fi < static_cast<int>(c.faces.size()); ++fi) {
      int lab = -1;
      if (c.is_loop) {
        // either a surviving old loop or a fused seam loop
        bool seam = false;
        for (const LoopSides& ls : new_loops)
          if (ls.arc_id == c.loop_arc) {
            auto [oc, of] = ls.side_face[fi];
            lab = ls.owner_p1 ? an1.region_of(oc, of) : offset2 + an2.region_of(oc, of);
            seam = true;
          }
        if (!seam) {
          bool from1 = find_arc(p1, c.loop_arc) && find_arc(p1, c.loop_arc)->free_loop;
          if (from1) {
            auto [oc, of] = an1.face_of_side(c.loop_arc, fi);
            lab = an1.region_of(oc, of);
          } else {
            auto [oc, of] = an2.face_of_side(c.loop_arc, fi);
            lab = offset2 + an2.region_of(oc, of);
          }
        }
      } else if (c.has_boundary && c.vertices.empty() && c.arcs.empty()) {
        lab = r1_of_corner(Corner{kBoundaryNode, n == 0 ? 0 : bg1});
      } else {
        // take any vertex corner of the face
        const Corner* rep = nullptr;
        for (const Corner& cc : c.faces[fi].corners)
          if (!is_boundary(cc.node)) {
            rep = &cc;
            break;
          }
        if (!rep) throw builder_error("glue: face without a vertex corner");
        lab = rep->node < vbase ? r1_of_corner(*rep) : r2_of_corner(*rep);
      }
      labels[{ci, fi}] = find(lab);
    }
  }
  g.nesting = detail::rebuild_nesting(an3, labels);
  return {std::move(g), std::move(upres)};
}

// --- certificate JSON ----------------------------------------------------

inline nlohmann::json certificate_to_json(const ConjugateProduct& cp, const Alphabet& alpha) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& f : cp.factors)
    arr.push_back({format_word(f.conjugator, alpha), f.relator, f.sign});
  return arr;
}

inline ConjugateProduct certificate_from_json(const nlohmann::json& j, const Alphabet& alpha) {
  ConjugateProduct cp;
  for (const auto& e : j) {
    CertificateFactor f;
    f.conjugator = parse_word(e.at(0).get<std::string>(), alpha);
    f.relator = e.at(1).get<int>();
    f.sign = e.at(2).get<int>();
    cp.factors.push_back(std::move(f));
  }
  return cp;
}

}  // namespace picalc

#endif  // PICALC_BUILDER_HPP
