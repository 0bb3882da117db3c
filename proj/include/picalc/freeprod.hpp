// Free products of concrete factor groups: normal forms, conjugacy, torsion.
// Factors are either finite groups given by multiplication table or the
// infinite cyclic group.
#ifndef PICALC_FREEPROD_HPP
#define PICALC_FREEPROD_HPP

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace picalc {

class freeprod_error : public std::runtime_error {
 public:
  explicit freeprod_error(const std::string& what) : std::runtime_error(what) {}
};

/// Finite group as a multiplication table. Element 0 need not be the
/// identity; the identity index is located and the axioms verified at load.
class FiniteTable {
 public:
  FiniteTable(std::vector<std::string> names, std::vector<std::vector<int>> mult)
      : names_(std::move(names)), mult_(std::move(mult)) {
    int n = static_cast<int>(names_.size());
    if (n == 0) throw freeprod_error("empty factor table");
    if (static_cast<int>(mult_.size()) != n)
      throw freeprod_error("table row count mismatch");
    for (const auto& row : mult_) {
      if (static_cast<int>(row.size()) != n) throw freeprod_error("table row length mismatch");
      for (int v : row)
        if (v < 0 || v >= n) throw freeprod_error("table entry out of range");
    }
    // identity
    id_ = -1;
    for (int e = 0; e < n; ++e) {
      bool ok = true;
      for (int x = 0; x < n && ok; ++x) ok = mult_[e][x] == x && mult_[x][e] == x;
      if (ok) { id_ = e; break; }
    }
    if (id_ < 0) throw freeprod_error("table has no identity");
    // inverses
    inv_.assign(n, -1);
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y)
        if (mult_[x][y] == id_ && mult_[y][x] == id_) { inv_[x] = y; break; }
      if (inv_[x] < 0) throw freeprod_error("element '" + names_[x] + "' has no inverse");
    }
    // associativity
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z)
          if (mult_[mult_[x][y]][z] != mult_[x][mult_[y][z]])
            throw freeprod_error("table is not associative");
  }

  int size() const { return static_cast<int>(names_.size()); }
  int identity() const { return id_; }
  int mult(int x, int y) const { return mult_.at(x).at(y); }
  int inverse(int x) const { return inv_.at(x); }
  const std::string& name(int x) const { return names_.at(x); }

  std::optional<int> find(const std::string& name) const {
    for (int i = 0; i < size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  int order_of(int x) const {
    int acc = x, k = 1;
    while (acc != id_) { acc = mult(acc, x); ++k; }
    return k;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  int id_;
};

struct InfiniteCyclic {};

using FactorGroup = std::variant<FiniteTable, InfiniteCyclic>;

/// One syllable of a free-product element: a nonidentity element of factor
/// `factor`. For InfiniteCyclic factors `elem` is the exponent; for table
/// factors it is the element index.
struct FPSyllable {
  int factor = 0;
  long long elem = 0;

  bool operator==(const FPSyllable& o) const { return factor == o.factor && elem == o.elem; }
};

struct FPElement {
  std::vector<FPSyllable> syllables;

  bool operator==(const FPElement& o) const { return syllables == o.syllables; }
  int length() const { return static_cast<int>(syllables.size()); }
  bool empty() const { return syllables.empty(); }
};

using Factors = std::vector<FactorGroup>;

namespace detail {
inline bool is_factor_identity(const FactorGroup& f, long long e) {
  if (std::holds_alternative<InfiniteCyclic>(f)) return e == 0;
  return static_cast<int>(e) == std::get<FiniteTable>(f).identity();
}
inline long long factor_mult(const FactorGroup& f, long long a, long long b) {
  if (std::holds_alternative<InfiniteCyclic>(f)) return a + b;
  return std::get<FiniteTable>(f).mult(static_cast<int>(a), static_cast<int>(b));
}
inline long long factor_inv(const FactorGroup& f, long long a) {
  if (std::holds_alternative<InfiniteCyclic>(f)) return -a;
  return std::get<FiniteTable>(f).inverse(static_cast<int>(a));
}
inline void check_factor_index(const Factors& fs, int i) {
  if (i < 0 || i >= static_cast<int>(fs.size()))
    throw freeprod_error("bad factor index " + std::to_string(i));
}
}  // namespace detail

inline FPElement fp_normal_form(const FPElement& e, const Factors& fs) {
  std::vector<FPSyllable> out;
  for (const FPSyllable& s : e.syllables) {
    detail::check_factor_index(fs, s.factor);
    FPSyllable cur = s;
    while (true) {
      if (detail::is_factor_identity(fs[cur.factor], cur.elem)) break;
      if (!out.empty() && out.back().factor == cur.factor) {
        cur.elem = detail::factor_mult(fs[cur.factor], out.back().elem, cur.elem);
        out.pop_back();
        continue;
      }
      out.push_back(cur);
      break;
    }
  }
  return FPElement{std::move(out)};
}

inline void require_normal_form(const FPElement& e, const Factors& fs) {
  if (!(fp_normal_form(e, fs) == e)) throw freeprod_error("element not in normal form");
}

inline FPElement fp_mult(const FPElement& a, const FPElement& b, const Factors& fs) {
  FPElement cat;
  cat.syllables = a.syllables;
  cat.syllables.insert(cat.syllables.end(), b.syllables.begin(), b.syllables.end());
  return fp_normal_form(cat, fs);
}

inline FPElement fp_inverse(const FPElement& a, const Factors& fs) {
  FPElement r;
  for (auto it = a.syllables.rbegin(); it != a.syllables.rend(); ++it)
    r.syllables.push_back({it->factor, detail::factor_inv(fs[it->factor], it->elem)});
  return r;
}

/// Remove conjugating syllables: returns (core, g) with g * core * g^-1 = e
/// and core cyclically reduced (first/last syllables in distinct factors, or
/// syllable length <= 1).
inline std::pair<FPElement, FPElement> fp_cyclic_reduce(const FPElement& e, const Factors& fs) {
  FPElement core = e;
  FPElement conj;  // product of stripped prefixes
  while (core.length() >= 2 && core.syllables.front().factor == core.syllables.back().factor) {
    FPSyllable first = core.syllables.front();
    FPSyllable last = core.syllables.back();
    core.syllables.erase(core.syllables.begin());
    core.syllables.pop_back();
    // f m l = f (m l f) f^-1: the merged syllable l*f lands at the back.
    long long merged = detail::factor_mult(fs[first.factor], last.elem, first.elem);
    if (!detail::is_factor_identity(fs[first.factor], merged))
      core.syllables.push_back({first.factor, merged});
    conj.syllables.push_back(first);
    if (core.length() < 2) break;
  }
  // conj as built conjugates by each stripped prefix in turn: e = g core g^-1
  // with g = s1 s2 ... applied outermost-first, i.e. g = s1 s2 ... as word.
  return {core, fp_normal_form(conj, fs)};
}

/// Conjugacy of single-factor elements inside their factor; witness in the
/// factor when conjugate.
inline std::optional<long long> factor_conjugator(const FactorGroup& f, long long x, long long y) {
  if (std::holds_alternative<InfiniteCyclic>(f))
    return x == y ? std::optional<long long>(0) : std::nullopt;
  const FiniteTable& t = std::get<FiniteTable>(f);
  for (int g = 0; g < t.size(); ++g)
    if (t.mult(t.mult(g, static_cast<int>(x)), t.inverse(g)) == static_cast<int>(y)) return g;
  return std::nullopt;
}

/// Decides conjugacy in the free product; returns g with g e1 g^-1 = e2 when
/// conjugate.
inline std::optional<FPElement> fp_conjugate(const FPElement& e1, const FPElement& e2,
                                             const Factors& fs) {
  require_normal_form(e1, fs);
  require_normal_form(e2, fs);
  auto [c1, g1] = fp_cyclic_reduce(e1, fs);
  auto [c2, g2] = fp_cyclic_reduce(e2, fs);
  if (c1.length() != c2.length()) return std::nullopt;
  if (c1.length() <= 1) {
    if (c1.empty()) return c2.empty() ? std::optional<FPElement>(FPElement{}) : std::nullopt;
    if (c1.syllables[0].factor != c2.syllables[0].factor) return std::nullopt;
    auto w = factor_conjugator(fs[c1.syllables[0].factor], c1.syllables[0].elem,
                               c2.syllables[0].elem);
    if (!w) return std::nullopt;
    FPElement mid;
    if (!detail::is_factor_identity(fs[c1.syllables[0].factor], *w))
      mid.syllables.push_back({c1.syllables[0].factor, *w});
    // e2 = g2 c2 g2^-1 = g2 (w c1 w^-1) g2^-1 = (g2 w g1^-1) e1 (...)^-1
    return fp_mult(fp_mult(g2, mid, fs), fp_inverse(g1, fs), fs);
  }
  // Cyclically reduced length >= 2: conjugate iff cyclic permutations match.
  int n = c1.length();
  for (int k = 0; k < n; ++k) {
    FPElement rot;
    rot.syllables.insert(rot.syllables.end(), c1.syllables.begin() + k, c1.syllables.end());
    rot.syllables.insert(rot.syllables.end(), c1.syllables.begin(), c1.syllables.begin() + k);
    if (rot == c2) {
      FPElement pre;
      pre.syllables.assign(c1.syllables.begin(), c1.syllables.begin() + k);
      // rot = pre^-1 c1 pre
      return fp_mult(fp_mult(g2, fp_inverse(pre, fs), fs), fp_inverse(g1, fs), fs);
    }
  }
  return std::nullopt;
}

struct FiniteOrderWitness {
  long long order = 1;
  FPElement conjugator;     // g with g^-1 e g inside the factor
  FPSyllable factor_elem;   // the factor element (identity encoded as order 1, empty elem)
};

struct TorsionVerdict {
  bool infinite = false;
  FiniteOrderWitness witness;  // meaningful when !infinite
};

/// Torsion in a free product: cyclically reduced elements of syllable length
/// >= 2 have infinite order; length <= 1 elements have the order of their
/// factor image.
inline TorsionVerdict fp_torsion_witness(const FPElement& e, const Factors& fs) {
  require_normal_form(e, fs);
  auto [core, g] = fp_cyclic_reduce(e, fs);
  if (core.length() >= 2) return {true, {}};
  if (core.empty()) return {false, {1, FPElement{}, FPSyllable{}}};
  const FPSyllable& s = core.syllables[0];
  if (std::holds_alternative<InfiniteCyclic>(fs[s.factor])) return {true, {}};
  long long ord = std::get<FiniteTable>(fs[s.factor]).order_of(static_cast<int>(s.elem));
  return {false, {ord, g, s}};
}

// Factor table file: first line element names, then one multiplication row
// per line (entries are element names).
inline FiniteTable parse_factor_table(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::vector<std::string> names;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) names.push_back(tok);
    if (!names.empty()) break;
  }
  if (names.empty()) throw freeprod_error("factor table: no element names");
  auto index_of = [&](const std::string& s) {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return static_cast<int>(i);
    throw freeprod_error("factor table: unknown element '" + s + "'");
  };
  std::vector<std::vector<int>> mult;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::vector<int> row;
    std::string tok;
    while (ls >> tok) row.push_back(index_of(tok));
    if (!row.empty()) mult.push_back(std::move(row));
  }
  return FiniteTable(std::move(names), std::move(mult));
}

/// Z_n as a table factor, elements named e, g, g2, ...
inline FiniteTable cyclic_table(int n) {
  std::vector<std::string> names;
  for (int i = 0; i < n; ++i)
    names.push_back(i == 0 ? "e" : (i == 1 ? "g" : "g" + std::to_string(i)));
  std::vector<std::vector<int>> mult(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mult[i][j] = (i + j) % n;
  return FiniteTable(std::move(names), std::move(mult));
}

}  // namespace picalc

#endif  // PICALC_FREEPROD_HPP
