// Presentation hygiene: condition RC, proper powers, star closures, pieces,
// and the C(p) check.
//
// The small-cancellation cases are cross-checked by a brute-force oracle that
// recomputes pieces from first principles (prefix counting over an explicit
// enumeration of the symmetrized closure) and minimal decompositions by
// exhaustive segmentation.
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "picalc/presentation.hpp"

using namespace picalc;

namespace {

Presentation pres(const std::string& gens, const std::vector<std::string>& rels) {
  std::string text = "[generators]\n" + gens + "\n[relators]\n";
  for (const auto& r : rels) text += r + "\n";
  return parse_presentation(text);
}

// Independent piece oracle: count, per candidate word u, the elements of R*
// having u as a (not necessarily proper) prefix.
std::set<Word> oracle_pieces(const Presentation& p) {
  std::set<Word> rset(p.relators().begin(), p.relators().end());
  std::set<Word> star = star_closure(rset);
  std::map<Word, int> count;
  for (const Word& w : star) {
    for (int len = 1; len <= w.length(); ++len)
      ++count[Word::from_reduced(LetterSeq(w.letters().begin(), w.letters().begin() + len))];
  }
  std::set<Word> out;
  for (const auto& [u, c] : count)
    if (c >= 2) out.insert(u);
  return out;
}

// Exhaustive minimal piece-decomposition of a cyclic word.
int oracle_min_pieces(const Word& r, const std::set<Word>& piece_set) {
  int best = kNoDecomposition;
  for (int rot = 0; rot < r.length(); ++rot) {
    LetterSeq w = rotate(r.letters(), rot);
    int n = static_cast<int>(w.size());
    std::vector<int> dp(n + 1, kNoDecomposition);
    dp[0] = 0;
    for (int i = 0; i < n; ++i) {
      if (dp[i] == kNoDecomposition) continue;
      for (int j = i + 1; j <= n; ++j)
        if (piece_set.count(Word::from_reduced(LetterSeq(w.begin() + i, w.begin() + j))))
          dp[j] = std::min(dp[j], dp[i] + 1);
    }
    best = std::min(best, dp[n]);
  }
  return best;
}

}  // namespace

TEST_CASE("check_rc: accepting and rejecting cases") {
  CHECK(check_rc(pres("a", {"a a"})).holds());
  CHECK(check_rc(pres("a b", {"a b a b", "b b b"})).holds());
  {
    // not cyclically reduced
    RcReport rep = check_rc(pres("a b", {"a b a^-1"}));
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations[0].kind == RcViolationKind::NotCyclicallyReduced);
    CHECK(rep.violations[0].relator_a == 0);
  }
  {
    // conjugate pair: b a b^-1 reduces nothing, but a b and b a are conjugate
    RcReport rep = check_rc(pres("a b", {"a b", "b a"}));
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations[0].kind == RcViolationKind::ConjugatePair);
  }
  {
    // conjugate to an inverse of another relator
    RcReport rep = check_rc(pres("a b", {"a b", "a^-1 b^-1"}));
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations[0].kind == RcViolationKind::ConjugatePair);
  }
  {
    // no nontrivial free-group element is conjugate to its own inverse
    // (free groups are bi-orderable), so the commutator passes RC
    CHECK(check_rc(pres("a b", {"a b a^-1 b^-1"})).holds());
  }
  {
    // parse_presentation skips blank lines, so build the empty relator directly
    Presentation p(Alphabet({"a"}), {Word()});
    RcReport rep = check_rc(p);
    REQUIRE_FALSE(rep.holds());
    CHECK(rep.violations[0].kind == RcViolationKind::EmptyRelator);
  }
  CHECK_THROWS_AS(require_rc(pres("a b", {"a b", "b a"})), rc_violated);
  CHECK_NOTHROW(require_rc(pres("a", {"a a"})));
}

TEST_CASE("check_rc vs brute-force conjugacy oracle") {
  // Enumerate small relator sets over 2 generators and compare ConjugatePair /
  // ConjugateToInverse findings against conjugation by all words of length<=4.
  Alphabet alpha({"a", "b"});
  std::vector<Word> universe;  // cyclically reduced words, length 1..3
  std::vector<Word> all;
  all.push_back(Word());
  for (int len = 1; len <= 4; ++len) {
    std::vector<Word> next;
    for (const Word& w : all)
      if (w.length() == len - 1)
        for (int g = 0; g < 2; ++g)
          for (int s : {1, -1}) {
            Word v = w * Word(LetterSeq{Letter(g, s)});
            if (v.length() == len) next.push_back(v);
          }
    for (const Word& v : next) {
      all.push_back(v);
      if (len <= 3 && v.cyclically_reduced()) universe.push_back(v);
    }
  }
  auto brute_conjugate = [&](const Word& u, const Word& v) {
    for (const Word& g : all)
      if (g * u * g.inverse() == v) return true;
    return false;
  };
  std::mt19937 rng(5150);
  std::uniform_int_distribution<std::size_t> pick(0, universe.size() - 1);
  for (int trial = 0; trial < 150; ++trial) {
    Word r1 = universe[pick(rng)], r2 = universe[pick(rng)];
    Presentation p(alpha, {r1, r2});
    RcReport rep = check_rc(p);
    bool pair = false, self_inv = false;
    for (const auto& v : rep.violations) {
      if (v.kind == RcViolationKind::ConjugatePair) pair = true;
      if (v.kind == RcViolationKind::ConjugateToInverse) self_inv = true;
    }
    CHECK(pair == (brute_conjugate(r1, r2) || brute_conjugate(r1, r2.inverse())));
    CHECK(self_inv == (brute_conjugate(r1, r1.inverse()) || brute_conjugate(r2, r2.inverse())));
  }
}

TEST_CASE("proper_power_census") {
  {
    auto census = proper_power_census(pres("a b", {"a a a", "a b"}));
    REQUIRE(census.size() == 1);
    CHECK(census[0].first == 0);
    CHECK(census[0].second.period == 3);
    CHECK(census[0].second.root.length() == 1);
  }
  {
    auto census = proper_power_census(pres("a b", {"a b a b"}));
    REQUIRE(census.size() == 1);
    CHECK(census[0].second.period == 2);
  }
  CHECK(proper_power_census(pres("a b", {"a b"})).empty());
  for (int l = 1; l <= 6; ++l) {
    std::string rel;
    for (int i = 0; i < l; ++i) rel += "a ";
    auto census = proper_power_census(pres("a", {rel}));
    if (l == 1) {
      CHECK(census.empty());
    } else {
      REQUIRE(census.size() == 1);
      CHECK(census[0].second.period == l);
    }
  }
}

TEST_CASE("stars_disjoint and stars_common_element") {
  Alphabet alpha({"a", "b"});
  auto W = [&](const std::string& s) { return parse_word(s, alpha); };
  CHECK(stars_disjoint({W("a a")}, {W("b b b")}));
  CHECK_FALSE(stars_disjoint({W("a b")}, {W("b a")}));
  {
    auto c = stars_common_element({W("a b")}, {W("b^-1 a^-1")});
    REQUIRE(c.has_value());
    // the witness must genuinely lie in both closures
    std::set<Word> s1 = star_closure({W("a b")});
    std::set<Word> s2 = star_closure({W("b^-1 a^-1")});
    CHECK(s1.count(*c));
    CHECK(s2.count(*c));
  }
  CHECK(stars_disjoint({}, {W("a")}));
}

TEST_CASE("pieces: hand cases") {
  {
    // <a | a a>: R* = {a^2, a^-2}; no word prefixes two distinct elements
    CHECK(pieces(pres("a", {"a a"})).empty());
  }
  {
    // commutator: exactly the four single letters
    auto ps = pieces(pres("a b", {"a b a^-1 b^-1"}));
    std::set<Word> got;
    for (const auto& pc : ps) {
      CHECK(pc.hosts.size() >= 2);
      got.insert(pc.word);
    }
    Alphabet alpha({"a", "b"});
    std::set<Word> want = {parse_word("a", alpha), parse_word("b", alpha),
                           parse_word("a^-1", alpha), parse_word("b^-1", alpha)};
    CHECK(got == want);
  }
}

TEST_CASE("pieces vs oracle on random presentations") {
  Alphabet alpha({"a", "b"});
  std::mt19937 rng(424242);
  std::uniform_int_distribution<int> len(1, 4), gen(0, 1), sgn(0, 1);
  int done = 0;
  while (done < 80) {
    std::vector<Word> rels;
    for (int k = 0; k < 2; ++k) {
      LetterSeq seq;
      int l = len(rng);
      for (int i = 0; i < l; ++i) seq.push_back(Letter(gen(rng), sgn(rng) ? 1 : -1));
      rels.push_back(Word(seq));
    }
    Presentation p(alpha, rels);
    if (!check_rc(p).holds()) continue;
    ++done;
    std::set<Word> got;
    for (const auto& pc : pieces(p)) got.insert(pc.word);
    CHECK(got == oracle_pieces(p));
  }
}

TEST_CASE("check_small_cancellation: hand cases") {
  {
    // <a | a a> has no pieces, so C(6) holds vacuously
    auto rep = check_small_cancellation(pres("a", {"a a"}), 6);
    CHECK(rep.holds);
    REQUIRE(rep.min_pieces.size() == 1);
    CHECK(rep.min_pieces[0] == kNoDecomposition);
  }
  {
    // commutator fails C(6): minimal decomposition into pieces has 4 factors
    auto rep = check_small_cancellation(pres("a b", {"a b a^-1 b^-1"}), 6);
    CHECK_FALSE(rep.holds);
    REQUIRE(rep.min_pieces.size() == 1);
    CHECK(rep.min_pieces[0] == 4);
    // and therefore C(4) holds while C(5) fails
    CHECK(check_small_cancellation(pres("a b", {"a b a^-1 b^-1"}), 4).holds);
    CHECK_FALSE(check_small_cancellation(pres("a b", {"a b a^-1 b^-1"}), 5).holds);
  }
  CHECK_THROWS_AS(check_small_cancellation(pres("a b", {"a b", "b a"}), 6), rc_violated);
}

TEST_CASE("check_small_cancellation: antitone in the bound, oracle agreement") {
  Alphabet alpha({"a", "b"});
  std::mt19937 rng(31337);
  std::uniform_int_distribution<int> len(2, 5), gen(0, 1), sgn(0, 1);
  int done = 0;
  while (done < 60) {
    std::vector<Word> rels;
    for (int k = 0; k < 2; ++k) {
      LetterSeq seq;
      int l = len(rng);
      for (int i = 0; i < l; ++i) seq.push_back(Letter(gen(rng), sgn(rng) ? 1 : -1));
      rels.push_back(Word(seq));
    }
    Presentation p(alpha, rels);
    if (!check_rc(p).holds()) continue;
    ++done;
    std::set<Word> piece_set = oracle_pieces(p);
    auto rep = check_small_cancellation(p, 6);
    for (int ri = 0; ri < p.num_relators(); ++ri)
      CHECK(rep.min_pieces[ri] == oracle_min_pieces(p.relator(ri), piece_set));
    // antitone: if C(p) holds then C(p-1) holds
    for (int b = 6; b >= 2; --b) {
      if (check_small_cancellation(p, b).holds)
        CHECK(check_small_cancellation(p, b - 1).holds);
    }
  }
}

TEST_CASE("exponent_matrix") {
  IntMatrix m = exponent_matrix(pres("a b", {"a b a b", "b^-1 a"}));
  REQUIRE(m.rows() == 2);
  REQUIRE(m.cols() == 2);
  CHECK(m(0, 0) == 2);
  CHECK(m(0, 1) == 2);
  CHECK(m(1, 0) == 1);
  CHECK(m(1, 1) == -1);
}

TEST_CASE("parse_presentation: format details") {
  Presentation p = parse_presentation(
      "# comment\n[generators]\na b\n\n[relators]\na b a^-1 b^-1\n# more\nb b\n");
  CHECK(p.alphabet().size() == 2);
  REQUIRE(p.num_relators() == 2);
  CHECK(p.relator(1).length() == 2);
  CHECK_THROWS_AS(parse_presentation("a b\n"), word_error);
}
