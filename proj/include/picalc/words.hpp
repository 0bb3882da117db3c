// Free-group word algebra: reduction, cyclic reduction, roots and periods,
// conjugacy, and the symmetrized closure R*.
#ifndef PICALC_WORDS_HPP
#define PICALC_WORDS_HPP

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace picalc {

class word_error : public std::runtime_error {
 public:
  explicit word_error(const std::string& what) : std::runtime_error(what) {}
};

/// Ordered alphabet of generator names. Names are unique, ASCII
/// [A-Za-z][A-Za-z0-9_]*, and generators are referenced by index.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> names) {
    for (auto& n : names) add(std::move(n));
  }

  int add(std::string name) {
    if (!valid_name(name)) throw word_error("bad generator name: '" + name + "'");
    if (index_.count(name)) throw word_error("duplicate generator: '" + name + "'");
    int id = static_cast<int>(names_.size());
    index_.emplace(name, id);
    names_.push_back(std::move(name));
    return id;
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int g) const { return names_.at(g); }

  std::optional<int> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool all_single_lowercase() const {
    for (const auto& n : names_)
      if (n.size() != 1 || !std::islower(static_cast<unsigned char>(n[0]))) return false;
    return !names_.empty();
  }

  static bool valid_name(const std::string& s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
      if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
  }

  bool operator==(const Alphabet& o) const { return names_ == o.names_; }

 private:
  std::vector<std::string> names_;
  std::map<std::string, int> index_;
};

/// One signed generator occurrence.
struct Letter {
  int gen = 0;
  int sign = 1;  // +1 or -1

  Letter() = default;
  Letter(int g, int s) : gen(g), sign(s) {}

  Letter inverse() const { return Letter(gen, -sign); }

  bool operator==(const Letter& o) const { return gen == o.gen && sign == o.sign; }
  bool operator!=(const Letter& o) const { return !(*this == o); }
  bool operator<(const Letter& o) const {
    return gen != o.gen ? gen < o.gen : sign < o.sign;
  }
};

using LetterSeq = std::vector<Letter>;

inline LetterSeq inverse(const LetterSeq& w) {
  LetterSeq r;
  r.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back(it->inverse());
  return r;
}

inline LetterSeq rotate(const LetterSeq& w, int k) {
  if (w.empty()) return w;
  int n = static_cast<int>(w.size());
  k = ((k % n) + n) % n;
  LetterSeq r(w.begin() + k, w.end());
  r.insert(r.end(), w.begin(), w.begin() + k);
  return r;
}

/// A freely reduced word. The constructor reduces eagerly, so any Word value
/// is in free-group normal form.
class Word {
 public:
  Word() = default;

  explicit Word(LetterSeq letters) : letters_(reduce_seq(std::move(letters))) {}

  static Word from_reduced(LetterSeq letters) {
    Word w;
    w.letters_ = std::move(letters);
    return w;
  }

  const LetterSeq& letters() const { return letters_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }

  Word inverse() const { return from_reduced(picalc::inverse(letters_)); }

  Word operator*(const Word& o) const {
    LetterSeq cat = letters_;
    cat.insert(cat.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(cat));
  }

  Word pow(int k) const {
    Word acc;
    Word base = k < 0 ? inverse() : *this;
    for (int i = 0; i < std::abs(k); ++i) acc = acc * base;
    return acc;
  }

  bool cyclically_reduced() const {
    return letters_.size() < 2 || letters_.front() != letters_.back().inverse();
  }

  bool operator==(const Word& o) const { return letters_ == o.letters_; }
  bool operator!=(const Word& o) const { return !(*this == o); }
  bool operator<(const Word& o) const { return letters_ < o.letters_; }

  // Stack-based free reduction.
  static LetterSeq reduce_seq(LetterSeq in) {
    LetterSeq out;
    out.reserve(in.size());
    for (const Letter& l : in) {
      if (!out.empty() && out.back() == l.inverse())
        out.pop_back();
      else
        out.push_back(l);
    }
    return out;
  }

 private:
  LetterSeq letters_;
};

inline Word reduce(const LetterSeq& seq) { return Word(seq); }

/// Decomposition w = root^period with the root not a proper power.
struct RootPeriod {
  Word root;
  int period = 1;
};

/// Strip conjugating letters: returns (core, conjugator) with
/// conjugator * core * conjugator^-1 freely equal to the input.
inline std::pair<Word, Word> cyclic_reduce(const Word& w) {
  LetterSeq core = w.letters();
  LetterSeq conj;
  while (core.size() >= 2 && core.front() == core.back().inverse()) {
    conj.push_back(core.front());
    core.erase(core.begin());
    core.pop_back();
  }
  return {Word::from_reduced(core), Word::from_reduced(conj)};
}

inline RootPeriod root_and_period(const Word& w) {
  if (w.empty()) throw word_error("root_and_period: empty word");
  if (!w.cyclically_reduced()) throw word_error("root_and_period: not cyclically reduced");
  const LetterSeq& l = w.letters();
  int n = w.length();
  for (int d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    bool ok = true;
    for (int i = d; i < n && ok; ++i) ok = l[i] == l[i - d];
    if (ok) {
      RootPeriod rp;
      rp.root = Word::from_reduced(LetterSeq(l.begin(), l.begin() + d));
      rp.period = n / d;
      return rp;
    }
  }
  throw std::logic_error("unreachable");
}

/// Conjugacy in the free group via cyclic reduction and cyclic-permutation
/// matching of the cores. When conjugate, returns g with g u g^-1 = v.
inline std::optional<Word> are_conjugate(const Word& u, const Word& v) {
  auto [cu, gu] = cyclic_reduce(u);  // gu cu gu^-1 = u
  auto [cv, gv] = cyclic_reduce(v);
  if (cu.length() != cv.length()) return std::nullopt;
  if (cu.empty()) return Word();  // both trivial
  int n = cu.length();
  for (int k = 0; k < n; ++k) {
    if (rotate(cu.letters(), k) == cv.letters()) {
      // rot_k(cu) = p^-1 cu p with p = first k letters of cu.
      Word p = Word::from_reduced(LetterSeq(cu.letters().begin(), cu.letters().begin() + k));
      // v = gv rot_k(cu) gv^-1 = (gv p^-1 gu^-1) u (.. )^-1
      return gv * p.inverse() * gu.inverse();
    }
  }
  return std::nullopt;
}

/// R*: all cyclic permutations of the words of R and of their inverses.
inline std::set<Word> star_closure(const std::set<Word>& rset) {
  std::set<Word> out;
  for (const Word& r : rset) {
    if (r.empty()) throw word_error("star_closure: empty word");
    if (!r.cyclically_reduced()) throw word_error("star_closure: not cyclically reduced");
    for (int k = 0; k < r.length(); ++k) {
      out.insert(Word::from_reduced(rotate(r.letters(), k)));
      out.insert(Word::from_reduced(rotate(r.inverse().letters(), k)));
    }
  }
  return out;
}

// --- text I/O ------------------------------------------------------------
//
// word := token* ; token := name ('^' signed-int)? ; whitespace separates
// tokens; empty input is the identity. When every generator is a single
// lowercase letter, an uppercase letter is shorthand for its inverse.

inline Word parse_word(const std::string& text, const Alphabet& alpha) {
  LetterSeq seq;
  const bool shorthand = alpha.all_single_lowercase();
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (!std::isalpha(static_cast<unsigned char>(text[i])))
      throw word_error("parse error at position " + std::to_string(i) + " in word '" + text + "'");
    std::size_t start = i;
    if (shorthand) {
      ++i;  // single-letter names; tokens may abut without whitespace
    } else {
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_'))
        ++i;
    }
    std::string name = text.substr(start, i - start);
    int gen;
    int base_sign = 1;
    if (auto g = alpha.find(name)) {
      gen = *g;
    } else if (shorthand && name.size() == 1 &&
               std::isupper(static_cast<unsigned char>(name[0]))) {
      std::string lower(1, static_cast<char>(std::tolower(name[0])));
      auto g2 = alpha.find(lower);
      if (!g2) throw word_error("unknown generator '" + name + "'");
      gen = *g2;
      base_sign = -1;
    } else {
      throw word_error("unknown generator '" + name + "'");
    }
    long long exp = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      std::size_t estart = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (i == estart || (i == estart + 1 && !std::isdigit(static_cast<unsigned char>(text[estart]))))
        throw word_error("bad exponent in word '" + text + "'");
      exp = std::stoll(text.substr(estart, i - estart));
    }
    long long total = base_sign * exp;
    int s = total >= 0 ? 1 : -1;
    for (long long k = 0; k < std::llabs(total); ++k) seq.emplace_back(gen, s);
    skip_ws();
  }
  return Word(std::move(seq));
}

inline std::string format_seq(const LetterSeq& seq, const Alphabet& alpha) {
  std::ostringstream os;
  std::size_t i = 0;
  bool first = true;
  while (i < seq.size()) {
    std::size_t j = i;
    while (j < seq.size() && seq[j] == seq[i]) ++j;
    long long e = static_cast<long long>(j - i) * seq[i].sign;
    if (!first) os << ' ';
    first = false;
    os << alpha.name(seq[i].gen);
    if (e != 1) os << '^' << e;
    i = j;
  }
  return os.str();
}

inline std::string format_word(const Word& w, const Alphabet& alpha) {
  return format_seq(w.letters(), alpha);
}

}  // namespace picalc

#endif  // PICALC_WORDS_HPP
