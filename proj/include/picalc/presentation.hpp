// Group presentations and their hygiene: condition RC, proper-power census,
// disjointness of symmetrized closures, pieces, and the C(p) check.
#ifndef PICALC_PRESENTATION_HPP
#define PICALC_PRESENTATION_HPP

#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "picalc/abelian.hpp"
#include "picalc/words.hpp"

namespace picalc {

class Presentation {
 public:
  Presentation() = default;
  Presentation(Alphabet alphabet, std::vector<Word> relators)
      : alphabet_(std::move(alphabet)), relators_(std::move(relators)) {
    roots_.reserve(relators_.size());
    for (const Word& r : relators_) {
      if (!r.empty() && r.cyclically_reduced())
        roots_.push_back(root_and_period(r));
      else
        roots_.push_back(std::nullopt);  // reported by check_rc, not fixed
    }
  }

  const Alphabet& alphabet() const { return alphabet_; }
  const std::vector<Word>& relators() const { return relators_; }
  const Word& relator(int i) const { return relators_.at(i); }
  int num_relators() const { return static_cast<int>(relators_.size()); }

  const RootPeriod& root_period(int i) const {
    const auto& rp = roots_.at(i);
    if (!rp) throw word_error("relator " + std::to_string(i) + " is not cyclically reduced");
    return *rp;
  }

 private:
  Alphabet alphabet_;
  std::vector<Word> relators_;
  std::vector<std::optional<RootPeriod>> roots_;
};

// --- condition RC --------------------------------------------------------

enum class RcViolationKind {
  NotCyclicallyReduced,
  EmptyRelator,
  ConjugatePair,
  ConjugateToInverse,
};

struct RcViolation {
  RcViolationKind kind;
  int relator_a = -1;
  int relator_b = -1;  // second index for pair kinds, else -1
};

struct RcReport {
  std::vector<RcViolation> violations;
  bool holds() const { return violations.empty(); }
};

inline const char* to_string(RcViolationKind k) {
  switch (k) {
    case RcViolationKind::NotCyclicallyReduced: return "NotCyclicallyReduced";
    case RcViolationKind::EmptyRelator: return "EmptyRelator";
    case RcViolationKind::ConjugatePair: return "ConjugatePair";
    case RcViolationKind::ConjugateToInverse: return "ConjugateToInverse";
  }
  return "?";
}

inline RcReport check_rc(const Presentation& p) {
  RcReport rep;
  int n = p.num_relators();
  for (int i = 0; i < n; ++i) {
    const Word& r = p.relator(i);
    if (r.empty()) {
      rep.violations.push_back({RcViolationKind::EmptyRelator, i, -1});
      continue;
    }
    if (!r.cyclically_reduced())
      rep.violations.push_back({RcViolationKind::NotCyclicallyReduced, i, -1});
  }
  for (int i = 0; i < n; ++i) {
    if (p.relator(i).empty()) continue;
    if (are_conjugate(p.relator(i), p.relator(i).inverse()))
      rep.violations.push_back({RcViolationKind::ConjugateToInverse, i, i});
    for (int j = i + 1; j < n; ++j) {
      if (p.relator(j).empty()) continue;
      if (are_conjugate(p.relator(i), p.relator(j)) ||
          are_conjugate(p.relator(i), p.relator(j).inverse()))
        rep.violations.push_back({RcViolationKind::ConjugatePair, i, j});
    }
  }
  return rep;
}

class rc_violated : public word_error {
 public:
  rc_violated() : word_error("presentation violates condition RC") {}
};

inline void require_rc(const Presentation& p) {
  if (!check_rc(p).holds()) throw rc_violated();
}

// --- proper powers -------------------------------------------------------

inline std::vector<std::pair<int, RootPeriod>> proper_power_census(const Presentation& p) {
  std::vector<std::pair<int, RootPeriod>> out;
  for (int i = 0; i < p.num_relators(); ++i) {
    const RootPeriod& rp = p.root_period(i);  // throws if not cyclically reduced
    if (rp.period > 1) out.emplace_back(i, rp);
  }
  return out;
}

// --- star closures -------------------------------------------------------

inline std::optional<Word> stars_common_element(const std::set<Word>& r1, const std::set<Word>& r2) {
  std::set<Word> s1 = star_closure(r1);
  std::set<Word> s2 = star_closure(r2);
  for (const Word& w : s1)
    if (s2.count(w)) return w;
  return std::nullopt;
}

inline bool stars_disjoint(const std::set<Word>& r1, const std::set<Word>& r2) {
  return !stars_common_element(r1, r2).has_value();
}

// --- pieces and small cancellation ---------------------------------------
//
// A nonempty word u is a piece iff u is a prefix of at least two distinct
// elements of R* (the standard symmetrized-closure definition).

struct Piece {
  Word word;
  std::vector<Word> hosts;  // distinct R* elements having the piece as prefix
};

inline std::vector<Piece> pieces(const Presentation& p) {
  require_rc(p);
  std::set<Word> rset(p.relators().begin(), p.relators().end());
  std::set<Word> star = star_closure(rset);
  std::map<Word, std::vector<Word>> by_prefix;
  for (const Word& w : star)
    for (int len = 1; len < w.length(); ++len)
      by_prefix[Word::from_reduced(LetterSeq(w.letters().begin(), w.letters().begin() + len))]
          .push_back(w);
  // Full-length prefixes too: u = w itself can be a prefix of a longer element.
  for (const Word& w : star) {
    auto it = by_prefix.find(w);
    if (it != by_prefix.end()) it->second.push_back(w);
  }
  std::vector<Piece> out;
  for (auto& [w, hosts] : by_prefix)
    if (hosts.size() >= 2) out.push_back({w, std::move(hosts)});
  return out;
}

constexpr int kNoDecomposition = std::numeric_limits<int>::max();

struct SmallCancellationReport {
  bool holds = true;
  std::vector<int> min_pieces;  // per relator; kNoDecomposition when impossible
};

/// C(p): no relator, as a cyclic word, is a concatenation of fewer than p
/// pieces. Minimal counts are computed over every cyclic rotation.
inline SmallCancellationReport check_small_cancellation(const Presentation& p, int bound) {
  require_rc(p);
  std::set<Word> piece_set;
  for (const Piece& pc : pieces(p)) piece_set.insert(pc.word);
  SmallCancellationReport rep;
  for (int ri = 0; ri < p.num_relators(); ++ri) {
    const Word& r = p.relator(ri);
    int best = kNoDecomposition;
    for (int rot = 0; rot < r.length(); ++rot) {
      LetterSeq w = rotate(r.letters(), rot);
      int n = static_cast<int>(w.size());
      std::vector<int> dp(n + 1, kNoDecomposition);
      dp[0] = 0;
      for (int i = 0; i < n; ++i) {
        if (dp[i] == kNoDecomposition) continue;
        for (int j = i + 1; j <= n; ++j) {
          Word seg = Word::from_reduced(LetterSeq(w.begin() + i, w.begin() + j));
          if (piece_set.count(seg) && dp[i] + 1 < dp[j]) dp[j] = dp[i] + 1;
        }
      }
      best = std::min(best, dp[n]);
    }
    rep.min_pieces.push_back(best);
    if (best < bound) rep.holds = false;
  }
  return rep;
}

// --- abelianization ------------------------------------------------------

inline IntMatrix exponent_matrix(const Presentation& p) {
  IntMatrix m(p.num_relators(), p.alphabet().size());
  for (int i = 0; i < p.num_relators(); ++i)
    for (const Letter& l : p.relator(i).letters()) m(i, l.gen) += l.sign;
  return m;
}

inline AbelianInvariants abelianization(const Presentation& p) {
  return quotient_invariants(exponent_matrix(p));
}

// --- presentation file format --------------------------------------------
//
// [generators] section: whitespace-separated names; [relators] section: one
// word per line.  '#' starts a comment line.

inline Presentation parse_presentation(const std::string& text) {
  Alphabet alpha;
  std::vector<std::string> relator_lines;
  enum { None, Generators, Relators } section = None;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    std::size_t h = line.find_first_not_of(" \t\r");
    if (h == std::string::npos || line[h] == '#') continue;
    std::string trimmed = line.substr(h);
    while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (trimmed == "[generators]") { section = Generators; continue; }
    if (trimmed == "[relators]") { section = Relators; continue; }
    if (section == Generators) {
      std::istringstream ls(trimmed);
      std::string name;
      while (ls >> name) alpha.add(name);
    } else if (section == Relators) {
      relator_lines.push_back(trimmed);
    } else {
      throw word_error("line " + std::to_string(lineno) + ": content before any section header");
    }
  }
  std::vector<Word> relators;
  for (const std::string& rl : relator_lines) relators.push_back(parse_word(rl, alpha));
  return Presentation(std::move(alpha), std::move(relators));
}

}  // namespace picalc

#endif  // PICALC_PRESENTATION_HPP
