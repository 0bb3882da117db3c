// picalc: command-line front end for the picture-calculus library.
//
// Exit codes: 0 success / property holds, 1 check failed (RC violated, C(p)
// fails, not orientable, word not found, ...), 2 input or usage errors.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "picalc/builder.hpp"
#include "picalc/moves.hpp"
#include "picalc/picture_json.hpp"
#include "picalc/relative.hpp"

using namespace picalc;
using nlohmann::json;

namespace {

constexpr int kOk = 0, kCheckFailed = 1, kInputError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Presentation load_presentation(const std::string& path) {
  return parse_presentation(slurp(path));
}

Picture load_picture(const std::string& path, std::string* ref = nullptr) {
  return picture_from_json(json::parse(slurp(path)), ref);
}

// Shared output plumbing: collect a JSON report and text lines, emit one.
struct Report {
  bool as_json = false;
  json j = json::object();
  std::ostringstream text;

  int finish(int code) {
    j["exit"] = code;
    if (as_json)
      std::cout << j.dump(2) << "\n";
    else
      std::cout << text.str();
    return code;
  }
};

// "Z" | "Zn" | "@tablefile" -> factor group
FactorGroup parse_factor_spec(const std::string& spec) {
  if (spec == "Z") return InfiniteCyclic{};
  if (spec.size() > 1 && spec[0] == 'Z') return cyclic_table(std::stoi(spec.substr(1)));
  if (!spec.empty() && spec[0] == '@') return parse_factor_table(slurp(spec.substr(1)));
  throw std::runtime_error("bad factor spec '" + spec + "' (use Z, Zn, or @file)");
}

// "f:e f:e ..." ("1" or "" = identity) -> free-product element
FPElement parse_fp_element(const std::string& text, const Factors& fs) {
  FPElement e;
  std::istringstream is(text);
  std::string tok;
  while (is >> tok) {
    if (tok == "1") continue;
    auto colon = tok.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("bad syllable '" + tok + "' (use factor:element)");
    e.syllables.push_back({std::stoi(tok.substr(0, colon)),
                           std::stoll(tok.substr(colon + 1))});
  }
  require_normal_form(e, fs);
  return e;
}

std::string fp_to_string(const FPElement& e) {
  if (e.empty()) return "1";
  std::string s;
  for (const auto& syl : e.syllables) {
    if (!s.empty()) s += ' ';
    s += std::to_string(syl.factor) + ":" + std::to_string(syl.elem);
  }
  return s;
}

// Relative word text: alternating `name` or `name^-1` and `{ h-expression }`
// blocks; the h-expression uses the free-product element syntax above.
RelativeWord parse_relative_word(const std::string& line, const Alphabet& x, const Factors& fs) {
  RelativeWord w;
  std::istringstream is(line);
  std::string tok;
  while (is >> tok) {
    RelSyllable syl;
    syl.eps = 1;
    if (tok.size() > 3 && tok.substr(tok.size() - 3) == "^-1") {
      syl.eps = -1;
      tok = tok.substr(0, tok.size() - 3);
    }
    auto gi = x.find(tok);
    if (!gi) throw std::runtime_error("unknown X generator '" + tok + "'");
    syl.x = *gi;
    std::string brace;
    if (!(is >> brace) || brace != "{")
      throw std::runtime_error("expected '{' after " + tok);
    std::string hexpr, part;
    while (is >> part && part != "}") hexpr += part + " ";
    if (part != "}") throw std::runtime_error("unterminated h-expression");
    syl.h = HGroup::Elem(parse_fp_element(hexpr, fs));
    w.syllables.push_back(std::move(syl));
  }
  return w;
}

json invariants_json(const AbelianInvariants& inv) {
  json t = json::array();
  for (const auto& d : inv.torsion) t.push_back(d.str());
  return {{"free_rank", inv.free_rank}, {"torsion", t}};
}

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int jj = 0; jj < m.cols(); ++jj) row.push_back(m(i, jj).str());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<int> parse_index_list(const std::string& s) {
  std::vector<int> out;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) out.push_back(std::stoi(tok));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"picture calculus toolkit"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));

  // ---- presentation checks ----
  std::string pres_file, bound_str;
  int c_bound = 6;
  auto* c_rc = app.add_subcommand("check-rc", "check condition RC");
  c_rc->add_option("presentation", pres_file)->required();
  auto* c_c = app.add_subcommand("check-c", "check small cancellation C(p)");
  c_c->add_option("presentation", pres_file)->required();
  c_c->add_option("--bound", c_bound, "the p in C(p)")->capture_default_str();
  auto* c_pieces = app.add_subcommand("pieces", "list the pieces of a presentation");
  c_pieces->add_option("presentation", pres_file)->required();
  std::string first_idx = "0", second_idx = "1";
  auto* c_stars = app.add_subcommand("stars-disjoint",
                                     "disjointness of two relator-set star closures");
  c_stars->add_option("presentation", pres_file)->required();
  c_stars->add_option("--first", first_idx, "comma-separated relator indices")
      ->capture_default_str();
  c_stars->add_option("--second", second_idx, "comma-separated relator indices")
      ->capture_default_str();

  // ---- abelian ----
  std::string matrix_file;
  auto* c_snf = app.add_subcommand("snf", "Smith normal form of an integer matrix");
  c_snf->add_option("matrix", matrix_file)->required();
  auto* c_ab = app.add_subcommand("abelianization", "abelianization invariants");
  c_ab->add_option("presentation", pres_file)->required();

  // ---- witness search ----
  std::string word_text;
  int max_factors = 3, max_conj = 2;
  auto* c_wit = app.add_subcommand("witness", "bounded normal-closure membership search");
  c_wit->add_option("presentation", pres_file)->required();
  c_wit->add_option("--word", word_text, "target word")->required();
  c_wit->add_option("--max-factors", max_factors)->capture_default_str();
  c_wit->add_option("--max-conj", max_conj)->capture_default_str();

  // ---- pictures ----
  std::string pic_file, pic_file2;
  int budget = 10000;
  auto* c_pval = app.add_subcommand("picture-validate", "validate a picture file");
  c_pval->add_option("presentation", pres_file)->required();
  c_pval->add_option("picture", pic_file)->required();
  auto* c_pbd = app.add_subcommand("picture-boundary", "boundary label of a picture");
  c_pbd->add_option("presentation", pres_file)->required();
  c_pbd->add_option("picture", pic_file)->required();
  auto* c_pdip = app.add_subcommand("picture-dipoles", "list dipoles of a picture");
  c_pdip->add_option("presentation", pres_file)->required();
  c_pdip->add_option("picture", pic_file)->required();
  auto* c_pred = app.add_subcommand("picture-reduce", "greedily reduce a spherical picture");
  c_pred->add_option("presentation", pres_file)->required();
  c_pred->add_option("picture", pic_file)->required();
  c_pred->add_option("--budget", budget, "maximum number of moves")->capture_default_str();
  auto* c_glue = app.add_subcommand("glue", "glue a picture to a mirror copy of another");
  c_glue->add_option("presentation", pres_file)->required();
  c_glue->add_option("picture1", pic_file)->required();
  c_glue->add_option("picture2", pic_file2)->required();

  // ---- free products / relative words ----
  std::vector<std::string> factor_specs;
  std::string element_text, rel_file;
  std::string xgens = "";
  auto* c_fpo = app.add_subcommand("fp-order", "order of a free-product element");
  c_fpo->add_option("--factor", factor_specs, "factor group (Z, Zn, or @file); repeatable")
      ->required();
  c_fpo->add_option("--element", element_text, "syllables factor:element ...")->required();
  auto* c_rori = app.add_subcommand("rel-orientable", "orientability of relative words");
  c_rori->add_option("words", rel_file, "file with one relative word per line")->required();
  c_rori->add_option("--factor", factor_specs, "coefficient factor; repeatable")->required();
  c_rori->add_option("--xgens", xgens, "space-separated X generator names")->required();
  auto* c_aug = app.add_subcommand("augment", "augmented relative word of a free-product element");
  c_aug->add_option("--factor", factor_specs, "factor group; repeatable")->required();
  c_aug->add_option("--element", element_text, "syllables factor:element ...")->required();

  CLI11_PARSE(app, argc, argv);
  Report rep;
  rep.as_json = format == "json";

  try {
    if (c_rc->parsed()) {
      Presentation p = load_presentation(pres_file);
      RcReport rc = check_rc(p);
      rep.j["holds"] = rc.holds();
      json vs = json::array();
      for (const auto& v : rc.violations) {
        vs.push_back({{"kind", to_string(v.kind)},
                      {"relator_a", v.relator_a},
                      {"relator_b", v.relator_b}});
        rep.text << "violation: " << to_string(v.kind) << " relator " << v.relator_a
                 << (v.relator_b >= 0 ? " / " + std::to_string(v.relator_b) : "") << "\n";
      }
      rep.j["violations"] = vs;
      rep.text << (rc.holds() ? "RC holds\n" : "RC violated\n");
      return rep.finish(rc.holds() ? kOk : kCheckFailed);
    }

    if (c_c->parsed()) {
      Presentation p = load_presentation(pres_file);
      auto r = check_small_cancellation(p, c_bound);
      rep.j["bound"] = c_bound;
      rep.j["holds"] = r.holds;
      json mp = json::array();
      for (int m : r.min_pieces)
        mp.push_back(m == kNoDecomposition ? json(nullptr) : json(m));
      rep.j["min_pieces"] = mp;
      for (std::size_t i = 0; i < r.min_pieces.size(); ++i) {
        rep.text << "relator " << i << ": ";
        if (r.min_pieces[i] == kNoDecomposition)
          rep.text << "no piece decomposition\n";
        else
          rep.text << "minimal decomposition " << r.min_pieces[i] << " pieces\n";
      }
      rep.text << "C(" << c_bound << ") " << (r.holds ? "holds" : "fails") << "\n";
      return rep.finish(r.holds ? kOk : kCheckFailed);
    }

    if (c_pieces->parsed()) {
      Presentation p = load_presentation(pres_file);
      json arr = json::array();
      for (const Piece& pc : pieces(p)) {
        std::string w = format_word(pc.word, p.alphabet());
        arr.push_back({{"word", w}, {"hosts", pc.hosts.size()}});
        rep.text << w << " (" << pc.hosts.size() << " hosts)\n";
      }
      rep.j["pieces"] = arr;
      return rep.finish(kOk);
    }

    if (c_stars->parsed()) {
      Presentation p = load_presentation(pres_file);
      std::set<Word> s1, s2;
      for (int i : parse_index_list(first_idx)) s1.insert(p.relator(i));
      for (int i : parse_index_list(second_idx)) s2.insert(p.relator(i));
      auto common = stars_common_element(s1, s2);
      rep.j["disjoint"] = !common.has_value();
      if (common) {
        rep.j["common"] = format_word(*common, p.alphabet());
        rep.text << "closures intersect: " << format_word(*common, p.alphabet()) << "\n";
      } else {
        rep.text << "closures are disjoint\n";
      }
      return rep.finish(common ? kCheckFailed : kOk);
    }

    if (c_snf->parsed()) {
      IntMatrix a = parse_matrix(slurp(matrix_file));
      SNFResult s = smith_normal_form(a);
      rep.j["d"] = matrix_json(s.d);
      rep.j["u"] = matrix_json(s.u);
      rep.j["v"] = matrix_json(s.v);
      rep.text << "diagonal:";
      for (int i = 0; i < std::min(s.d.rows(), s.d.cols()); ++i) rep.text << " " << s.d(i, i);
      rep.text << "\n";
      return rep.finish(kOk);
    }

    if (c_ab->parsed()) {
      Presentation p = load_presentation(pres_file);
      AbelianInvariants inv = abelianization(p);
      rep.j["invariants"] = invariants_json(inv);
      rep.text << "rank " << inv.free_rank << ", torsion [";
      for (std::size_t i = 0; i < inv.torsion.size(); ++i)
        rep.text << (i ? ", " : "") << inv.torsion[i];
      rep.text << "]\n";
      return rep.finish(kOk);
    }

    if (c_wit->parsed()) {
      Presentation p = load_presentation(pres_file);
      Word w = parse_word(word_text, p.alphabet());
      MembershipVerdict v = witness_search(w, p, max_factors, max_conj);
      switch (v.status) {
        case MembershipVerdict::Found:
          rep.j["status"] = "found";
          rep.j["certificate"] = certificate_to_json(v.certificate, p.alphabet());
          rep.text << "found: " << certificate_to_json(v.certificate, p.alphabet()).dump()
                   << "\n";
          return rep.finish(kOk);
        case MembershipVerdict::RefutedByAbelianization:
          rep.j["status"] = "refuted";
          rep.j["reason"] = v.reason;
          rep.text << "refuted: " << v.reason << "\n";
          return rep.finish(kCheckFailed);
        default:
          rep.j["status"] = "not_found_within_bounds";
          rep.text << "not found within bounds (factors <= " << max_factors
                   << ", conjugators <= " << max_conj << ")\n";
          return rep.finish(kCheckFailed);
      }
    }

    if (c_pval->parsed()) {
      Presentation p = load_presentation(pres_file);
      Picture pic = load_picture(pic_file);
      ValidationReport r = validate(pic, p);
      rep.j["valid"] = r.valid();
      rep.j["findings"] = r.findings;
      for (const auto& f : r.findings) rep.text << f << "\n";
      rep.text << (r.valid() ? "valid\n" : "invalid\n");
      return rep.finish(r.valid() ? kOk : kCheckFailed);
    }

    if (c_pbd->parsed()) {
      Presentation p = load_presentation(pres_file);
      Picture pic = load_picture(pic_file);
      LetterSeq label = boundary_label(pic);
      std::string spelled = format_seq(label, p.alphabet());
      std::string reduced = format_word(Word(label), p.alphabet());
      rep.j["boundary"] = spelled;
      rep.j["reduced"] = reduced;
      rep.text << "boundary: " << spelled << "\nreduced: " << reduced << "\n";
      return rep.finish(kOk);
    }

    if (c_pdip->parsed()) {
      Presentation p = load_presentation(pres_file);
      Picture pic = load_picture(pic_file);
      Analysis an(pic);
      json arr = json::array();
      for (const Dipole& d : find_dipoles(pic, an, p)) {
        arr.push_back({{"arc", d.arc},
                       {"c1", {{"vertex", d.c1.node}, {"gap", d.c1.gap}}},
                       {"c2", {{"vertex", d.c2.node}, {"gap", d.c2.gap}}}});
        rep.text << "arc " << d.arc << ": corners (" << d.c1.node << "," << d.c1.gap << ") / ("
                 << d.c2.node << "," << d.c2.gap << ")\n";
      }
      rep.j["dipoles"] = arr;
      if (arr.empty()) rep.text << "no dipoles\n";
      return rep.finish(kOk);
    }

    if (c_pred->parsed()) {
      Presentation p = load_presentation(pres_file);
      Picture pic = load_picture(pic_file);
      XSet x = build_xset(p);
      ReductionResult r = reduce_spherical(pic, p, x, budget);
      rep.j["emptied"] = r.emptied;
      rep.j["trace"] = trace_to_json(r);
      rep.j["picture"] = picture_to_json(r.picture, "reduced");
      rep.text << r.trace.size() << " moves, " << (r.emptied ? "emptied" : "stuck") << "\n";
      return rep.finish(r.emptied ? kOk : kCheckFailed);
    }

    if (c_glue->parsed()) {
      Presentation p = load_presentation(pres_file);
      Picture p1 = load_picture(pic_file);
      Picture p2 = load_picture(pic_file2);
      GlueResult g = glue(p1, p, p2, p);
      rep.j["picture"] = picture_to_json(g.picture, "glued");
      rep.text << picture_to_json(g.picture, "glued").dump(2) << "\n";
      return rep.finish(kOk);
    }

    if (c_fpo->parsed()) {
      Factors fs;
      for (const auto& s : factor_specs) fs.push_back(parse_factor_spec(s));
      FPElement e = parse_fp_element(element_text, fs);
      TorsionVerdict v = fp_torsion_witness(e, fs);
      if (v.infinite) {
        rep.j["order"] = "infinite";
        rep.text << "infinite order\n";
      } else {
        rep.j["order"] = v.witness.order;
        rep.j["conjugator"] = fp_to_string(v.witness.conjugator);
        rep.text << "order " << v.witness.order << " (conjugator "
                 << fp_to_string(v.witness.conjugator) << ")\n";
      }
      return rep.finish(kOk);
    }

    if (c_rori->parsed()) {
      Factors fs;
      for (const auto& s : factor_specs) fs.push_back(parse_factor_spec(s));
      std::istringstream xs(xgens);
      std::vector<std::string> names;
      std::string n;
      while (xs >> n) names.push_back(n);
      Alphabet x(names);
      HGroup hg((Factors(fs)));
      std::vector<RelativeWord> words;
      std::istringstream in(slurp(rel_file));
      std::string line;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        words.push_back(parse_relative_word(line, x, fs));
      }
      auto v = check_orientable(words, hg);
      rep.j["orientable"] = !v.has_value();
      if (v) {
        rep.j["violation"] = {{"kind", v->kind == OrientabilityViolation::SharedRotation
                                           ? "shared_rotation"
                                           : "self_inverse_rotation"},
                              {"relator_a", v->relator_a},
                              {"relator_b", v->relator_b}};
        rep.text << "not orientable\n";
      } else {
        rep.text << "orientable\n";
      }
      return rep.finish(v ? kCheckFailed : kOk);
    }

    if (c_aug->parsed()) {
      Factors fs;
      for (const auto& s : factor_specs) fs.push_back(parse_factor_spec(s));
      FPElement e = parse_fp_element(element_text, fs);
      RelativeWord w = augment(e, fs);
      std::vector<std::string> names;
      for (std::size_t i = 0; i < fs.size(); ++i) names.push_back("x" + std::to_string(i + 1));
      Alphabet x(names);
      HGroup hg((Factors(fs)));
      std::string formatted = format_relative(w, x, hg);
      rep.j["augmented"] = formatted;
      rep.text << formatted << "\n";
      return rep.finish(kOk);
    }

    rep.text << "no subcommand\n";
    return rep.finish(kInputError);
  } catch (const std::exception& e) {
    if (rep.as_json) {
      json err = {{"error", e.what()}, {"exit", kInputError}};
      std::cout << err.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return kInputError;
  }
}
