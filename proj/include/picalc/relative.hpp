// Relative words over H * F(X): cyclic reduction in the relative sense, the
// *_x closure, orientability, and the augmentation of free-product words.
#ifndef PICALC_RELATIVE_HPP
#define PICALC_RELATIVE_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "picalc/freeprod.hpp"
#include "picalc/words.hpp"

namespace picalc {

class relative_error : public std::runtime_error {
 public:
  explicit relative_error(const std::string& what) : std::runtime_error(what) {}
};

/// Concrete backend for the coefficient group H: a finite table, a free
/// group, or a free product of table/cyclic factors.
class HGroup {
 public:
  using Elem = std::variant<long long, Word, FPElement>;

  explicit HGroup(FiniteTable t) : impl_(std::move(t)) {}
  explicit HGroup(Alphabet a) : impl_(std::move(a)) {}
  explicit HGroup(Factors f) : impl_(std::move(f)) {}

  Elem identity() const {
    if (auto* t = std::get_if<FiniteTable>(&impl_)) return static_cast<long long>(t->identity());
    if (std::holds_alternative<Alphabet>(impl_)) return Word();
    return FPElement{};
  }

  bool is_identity(const Elem& e) const { return equal(e, identity()); }

  Elem mult(const Elem& a, const Elem& b) const {
    if (auto* t = std::get_if<FiniteTable>(&impl_))
      return static_cast<long long>(t->mult(static_cast<int>(std::get<long long>(a)),
                                            static_cast<int>(std::get<long long>(b))));
    if (std::holds_alternative<Alphabet>(impl_)) return std::get<Word>(a) * std::get<Word>(b);
    return fp_mult(std::get<FPElement>(a), std::get<FPElement>(b), std::get<Factors>(impl_));
  }

  Elem inverse(const Elem& a) const {
    if (auto* t = std::get_if<FiniteTable>(&impl_))
      return static_cast<long long>(t->inverse(static_cast<int>(std::get<long long>(a))));
    if (std::holds_alternative<Alphabet>(impl_)) return std::get<Word>(a).inverse();
    return fp_inverse(std::get<FPElement>(a), std::get<Factors>(impl_));
  }

  bool equal(const Elem& a, const Elem& b) const { return a == b; }

  std::string format(const Elem& e) const {
    if (auto* t = std::get_if<FiniteTable>(&impl_))
      return t->name(static_cast<int>(std::get<long long>(e)));
    if (auto* a = std::get_if<Alphabet>(&impl_)) {
      std::string s = format_word(std::get<Word>(e), *a);
      return s.empty() ? "1" : s;
    }
    const auto& fp = std::get<FPElement>(e);
    if (fp.empty()) return "1";
    std::string s;
    for (const auto& syl : fp.syllables) {
      if (!s.empty()) s += '.';
      s += std::to_string(syl.factor) + ":" + std::to_string(syl.elem);
    }
    return s;
  }

  const std::variant<FiniteTable, Alphabet, Factors>& impl() const { return impl_; }

 private:
  std::variant<FiniteTable, Alphabet, Factors> impl_;
};

/// One syllable x^eps h of a relative word.
struct RelSyllable {
  int x = 0;       // index into the X alphabet
  int eps = 1;     // +1 or -1
  HGroup::Elem h;  // trailing coefficient
};

/// A word x1^e1 h1 x2^e2 h2 ... xn^en hn over H * F(X), read cyclically.
struct RelativeWord {
  std::vector<RelSyllable> syllables;

  int length() const { return static_cast<int>(syllables.size()); }
  bool empty() const { return syllables.empty(); }
};

inline bool rel_equal(const RelativeWord& a, const RelativeWord& b, const HGroup& h) {
  if (a.length() != b.length()) return false;
  for (int i = 0; i < a.length(); ++i) {
    const auto& sa = a.syllables[i];
    const auto& sb = b.syllables[i];
    if (sa.x != sb.x || sa.eps != sb.eps || !h.equal(sa.h, sb.h)) return false;
  }
  return true;
}

/// Cyclically reduced in the relative sense: never h_i = 1 with
/// x_i = x_{i+1} and eps_i != eps_{i+1}, indices mod n.  Syllables with
/// h_i = 1 but x_i != x_{i+1} are kept as written.
inline bool rel_is_cyclically_reduced(const RelativeWord& w, const HGroup& hg) {
  int n = w.length();
  if (n < 2) return n == 0 || true;
  for (int i = 0; i < n; ++i) {
    const auto& a = w.syllables[i];
    const auto& b = w.syllables[(i + 1) % n];
    if (hg.is_identity(a.h) && a.x == b.x && a.eps != b.eps) return false;
  }
  return true;
}

inline RelativeWord rel_cyclic_reduce(RelativeWord w, const HGroup& hg) {
  bool changed = true;
  while (changed && w.length() >= 2) {
    changed = false;
    int n = w.length();
    for (int i = 0; i < n; ++i) {
      const auto& a = w.syllables[i];
      const auto& b = w.syllables[(i + 1) % n];
      if (hg.is_identity(a.h) && a.x == b.x && a.eps != b.eps) {
        // x^e 1 x^-e h_b collapses; h_b multiplies into the previous syllable.
        HGroup::Elem carried = b.h;
        int prev = (i + n - 1) % n;
        if (n == 2) {
          if (!hg.is_identity(carried))
            throw relative_error("rel_cyclic_reduce: word collapses to a bare H coefficient");
          w.syllables.clear();
        } else {
          w.syllables[prev].h = hg.mult(w.syllables[prev].h, carried);
          int j1 = i, j2 = (i + 1) % n;
          if (j1 > j2) std::swap(j1, j2);
          w.syllables.erase(w.syllables.begin() + j2);
          w.syllables.erase(w.syllables.begin() + j1);
        }
        changed = true;
        break;
      }
    }
  }
  return w;
}

inline RelativeWord rel_inverse(const RelativeWord& w, const HGroup& hg) {
  // (x1^e1 h1 ... xn^en hn)^-1, rotated to begin with an X-symbol:
  // (xn, -en, h_{n-1}^-1) (x_{n-1}, -e_{n-1}, h_{n-2}^-1) ... (x1, -e1, hn^-1)
  RelativeWord r;
  int n = w.length();
  for (int k = 0; k < n; ++k) {
    int i = n - 1 - k;                 // syllable whose x we take
    int hprev = (i + n - 1) % n;       // its leading coefficient in w
    r.syllables.push_back({w.syllables[i].x, -w.syllables[i].eps,
                           hg.inverse(w.syllables[hprev].h)});
  }
  return r;
}

inline RelativeWord rel_rotate(const RelativeWord& w, int k) {
  if (w.empty()) return w;
  int n = w.length();
  k = ((k % n) + n) % n;
  RelativeWord r;
  r.syllables.insert(r.syllables.end(), w.syllables.begin() + k, w.syllables.end());
  r.syllables.insert(r.syllables.end(), w.syllables.begin(), w.syllables.begin() + k);
  return r;
}

/// S^{*_x}: all cyclic permutations of S and S^-1 that begin with an
/// X-symbol; these are exactly the whole-syllable rotations.
inline std::vector<RelativeWord> star_x(const std::vector<RelativeWord>& s, const HGroup& hg) {
  std::vector<RelativeWord> out;
  auto push_unique = [&](const RelativeWord& w) {
    for (const auto& o : out)
      if (rel_equal(o, w, hg)) return;
    out.push_back(w);
  };
  for (const RelativeWord& w : s) {
    if (!rel_is_cyclically_reduced(w, hg))
      throw relative_error("star_x: input not cyclically reduced");
    RelativeWord inv = rel_inverse(w, hg);
    for (int k = 0; k < w.length(); ++k) {
      push_unique(rel_rotate(w, k));
      push_unique(rel_rotate(inv, k));
    }
  }
  return out;
}

struct OrientabilityViolation {
  enum Kind { SharedRotation, SelfInverseRotation } kind;
  int relator_a;
  int relator_b;  // -1 for SelfInverseRotation
};

/// Orientable: for each r, {r}^{*_x} meets R only in r; and no element of R
/// is a cyclic permutation of its inverse.
inline std::optional<OrientabilityViolation> check_orientable(const std::vector<RelativeWord>& rset,
                                                              const HGroup& hg) {
  int n = static_cast<int>(rset.size());
  for (int i = 0; i < n; ++i) {
    if (!rel_is_cyclically_reduced(rset[i], hg))
      throw relative_error("check_orientable: input not cyclically reduced");
    RelativeWord inv = rel_inverse(rset[i], hg);
    for (int k = 0; k < rset[i].length(); ++k)
      if (rel_equal(rel_rotate(inv, k), rset[i], hg))
        return OrientabilityViolation{OrientabilityViolation::SelfInverseRotation, i, -1};
    std::vector<RelativeWord> star = star_x({rset[i]}, hg);
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      for (const RelativeWord& w : star)
        if (rel_equal(w, rset[j], hg))
          return OrientabilityViolation{OrientabilityViolation::SharedRotation, i, j};
    }
  }
  return std::nullopt;
}

/// u = u_1 ... u_m in free-product normal form becomes
/// x_{i1} u_1 x_{i1}^-1 1 x_{i2} u_2 x_{i2}^-1 1 ... over H * F(X), where
/// x_i is the adjoined generator for factor i.
inline RelativeWord augment(const FPElement& u, const Factors& fs) {
  require_normal_form(u, fs);
  if (u.length() < 2)
    throw relative_error("augment: free product length must be at least 2");
  RelativeWord out;
  for (const FPSyllable& syl : u.syllables) {
    FPElement h1;
    h1.syllables.push_back(syl);
    out.syllables.push_back({syl.factor, +1, HGroup::Elem(h1)});
    out.syllables.push_back({syl.factor, -1, HGroup::Elem(FPElement{})});
  }
  return out;
}

inline std::string format_relative(const RelativeWord& w, const Alphabet& xalpha, const HGroup& hg) {
  std::string s;
  for (const auto& syl : w.syllables) {
    if (!s.empty()) s += ' ';
    s += xalpha.name(syl.x);
    if (syl.eps < 0) s += "^-1";
    s += " { " + hg.format(syl.h) + " }";
  }
  return s;
}

}  // namespace picalc

#endif  // PICALC_RELATIVE_HPP
