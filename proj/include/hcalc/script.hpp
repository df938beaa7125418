#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hcalc/heegaard.hpp"
#include "hcalc/kirby.hpp"
#include "hcalc/legendrian.hpp"
#include "hcalc/normalize.hpp"
#include "hcalc/openbook.hpp"
#include "hcalc/trace_io.hpp"

namespace hcalc {

// Line-oriented command language over all the calculi.  '#' starts a
// comment.  Statements define named objects, apply moves to them in place,
// print invariants, and assert expected values.
//
// Exit codes: 0 all statements ran and every assertion held, 1 an assertion
// or a claimed certificate failed, 2 parse errors, unsupported input, or an
// exhausted search budget.
struct ScriptOptions {
  std::size_t normalize_budget = 100000;
};

struct ScriptResult {
  std::vector<std::string> lines;
  std::vector<AnyTrace> traces;
  int exit_code = 0;
};

namespace detail {

struct Token {
  std::string text;
  std::size_t col = 0;
  bool quoted = false;
};

inline std::vector<Token> tokenize_line(const std::string& line, std::size_t lineno) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::string puncts = "={}[](),;:";
  while (i < line.size()) {
    char c = line[i];
    if (std::isspace((unsigned char)c)) { ++i; continue; }
    if (c == '#') break;
    std::size_t col = i + 1;
    if (c == '"') {
      std::size_t end = line.find('"', i + 1);
      if (end == std::string::npos) throw parse_error("unterminated string", lineno, col);
      out.push_back({line.substr(i + 1, end - i - 1), col, true});
      i = end + 1;
      continue;
    }
    if (c == '~' && i + 1 < line.size() && line[i + 1] == '~') {
      out.push_back({"~~", col, false});
      i += 2;
      continue;
    }
    if (c == '=' && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({"==", col, false});
      i += 2;
      continue;
    }
    if (puncts.find(c) != std::string::npos) {
      out.push_back({std::string(1, c), col, false});
      ++i;
      continue;
    }
    if (c == '-' && (i + 1 >= line.size() || !std::isdigit((unsigned char)line[i + 1]))) {
      out.push_back({"-", col, false});
      ++i;
      continue;
    }
    if (c == '+' ) {
      out.push_back({"+", col, false});
      ++i;
      continue;
    }
    std::size_t j = i;
    if (line[j] == '-') ++j;
    while (j < line.size() && (std::isalnum((unsigned char)line[j]) || line[j] == '_' ||
                               line[j] == '^' || line[j] == '/' || line[j] == '~' ||
                               line[j] == '.'))
      ++j;
    if (j == i) throw parse_error(std::string("stray character '") + c + "'", lineno, col);
    out.push_back({line.substr(i, j - i), col, false});
    i = j;
  }
  return out;
}

// Cursor over one line of tokens.
class Cursor {
public:
  Cursor(std::vector<Token> toks, std::size_t lineno)
      : toks_(std::move(toks)), lineno_(lineno) {}

  bool done() const { return at_ >= toks_.size(); }
  const Token& peek() const {
    if (done()) throw parse_error("unexpected end of line", lineno_, last_col());
    return toks_[at_];
  }
  Token next() {
    const Token& t = peek();
    ++at_;
    return t;
  }
  void expect(const std::string& text) {
    Token t = next();
    if (t.quoted || t.text != text)
      throw parse_error("expected '" + text + "', got '" + t.text + "'", lineno_, t.col);
  }
  bool accept(const std::string& text) {
    if (done() || toks_[at_].quoted || toks_[at_].text != text) return false;
    ++at_;
    return true;
  }
  std::string ident() {
    Token t = next();
    if (t.quoted || t.text.empty() || !std::isalpha((unsigned char)t.text[0]))
      throw parse_error("expected a name, got '" + t.text + "'", lineno_, t.col);
    return t.text;
  }
  std::string quoted() {
    Token t = next();
    if (!t.quoted) throw parse_error("expected a quoted string", lineno_, t.col);
    return t.text;
  }
  long integer() {
    Token t = next();
    try {
      if (t.quoted) throw 0;
      std::size_t used = 0;
      long v = std::stol(t.text, &used);
      if (used != t.text.size()) throw 0;
      return v;
    } catch (...) {
      throw parse_error("expected an integer, got '" + t.text + "'", lineno_, t.col);
    }
  }
  int sign() {
    Token t = next();
    if (!t.quoted && t.text == "+") return 1;
    if (!t.quoted && t.text == "-") return -1;
    throw parse_error("expected + or -, got '" + t.text + "'", lineno_, t.col);
  }
  void finish() {
    if (!done())
      throw parse_error("trailing input '" + peek().text + "'", lineno_, peek().col);
  }
  std::size_t lineno() const { return lineno_; }
  std::size_t last_col() const { return toks_.empty() ? 1 : toks_.back().col + toks_.back().text.size(); }

private:
  std::vector<Token> toks_;
  std::size_t lineno_;
  std::size_t at_ = 0;
};

inline IntMatrix parse_matrix_tokens(Cursor& c) {
  std::vector<std::vector<Int>> rows;
  c.expect("[");
  if (!c.accept("]")) {
    for (;;) {
      c.expect("[");
      std::vector<Int> row;
      if (!c.accept("]")) {
        for (;;) {
          row.push_back(Int(c.integer()));
          if (c.accept(",")) continue;
          c.expect("]");
          break;
        }
      }
      rows.push_back(std::move(row));
      if (c.accept(",")) continue;
      c.expect("]");
      break;
    }
  }
  if (rows.empty()) return IntMatrix();
  for (const auto& r : rows)
    if (r.size() != rows[0].size())
      throw parse_error("ragged matrix literal", c.lineno(), 1);
  IntMatrix m(rows.size(), rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[0].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

inline std::vector<FrontEvent> parse_front_tokens(Cursor& c) {
  std::vector<FrontEvent> evs;
  c.expect("[");
  if (!c.accept("]")) {
    for (;;) {
      Token t = c.next();
      FrontEvent e{FrontEvent::crossing, 0};
      std::string digits;
      if (t.text.rfind("Lc", 0) == 0) { e.kind = FrontEvent::left_cusp; digits = t.text.substr(2); }
      else if (t.text.rfind("Rc", 0) == 0) { e.kind = FrontEvent::right_cusp; digits = t.text.substr(2); }
      else if (t.text.rfind("X", 0) == 0) { e.kind = FrontEvent::crossing; digits = t.text.substr(1); }
      else throw parse_error("expected Lc<k>, Rc<k> or X<k>, got '" + t.text + "'",
                             c.lineno(), t.col);
      try {
        std::size_t used = 0;
        e.slot = std::stoul(digits, &used);
        if (used != digits.size() || digits.empty()) throw 0;
      } catch (...) {
        throw parse_error("bad slot in '" + t.text + "'", c.lineno(), t.col);
      }
      evs.push_back(e);
      if (c.accept(",")) continue;
      c.expect("]");
      break;
    }
  }
  return evs;
}

inline AbelianGroup parse_group_tokens(Cursor& c) {
  std::size_t free = 0;
  std::vector<Int> torsion;
  for (;;) {
    Token t = c.next();
    if (t.text == "0" && free == 0 && torsion.empty() && c.done()) return AbelianGroup();
    if (t.text == "Z") ++free;
    else if (t.text.rfind("Z^", 0) == 0) {
      try { free += std::stoul(t.text.substr(2)); }
      catch (...) { throw parse_error("bad group term '" + t.text + "'", c.lineno(), t.col); }
    } else if (t.text.rfind("Z/", 0) == 0) {
      try { torsion.push_back(Int(t.text.substr(2))); }
      catch (...) { throw parse_error("bad group term '" + t.text + "'", c.lineno(), t.col); }
    } else {
      throw parse_error("bad group term '" + t.text + "'", c.lineno(), t.col);
    }
    if (c.accept("+")) continue;
    break;
  }
  return AbelianGroup(free, torsion);
}

} // namespace detail

class ScriptEngine {
public:
  explicit ScriptEngine(ScriptOptions opts = {}) : opts_(opts) {}

  ScriptResult run(const std::string& text) {
    ScriptResult res;
    std::istringstream is(text);
    std::string raw;
    std::size_t lineno = 0;
    try {
      while (std::getline(is, raw)) {
        ++lineno;
        auto toks = detail::tokenize_line(raw, lineno);
        if (toks.empty()) continue;
        detail::Cursor c(std::move(toks), lineno);
        if (!exec_statement(c, res)) {
          res.exit_code = 1;
          return res;
        }
      }
    } catch (const parse_error& e) {
      res.lines.push_back(std::string("parse error: ") + e.what());
      res.exit_code = 2;
    } catch (const budget_error& e) {
      res.lines.push_back(std::string("budget exceeded: ") + e.what());
      res.exit_code = 2;
    } catch (const unsupported_error& e) {
      res.lines.push_back(std::string("unsupported: ") + e.what());
      res.exit_code = 2;
    } catch (const std::exception& e) {
      res.lines.push_back(std::string("error: ") + e.what());
      res.exit_code = 2;
    }
    return res;
  }

private:
  template <class M>
  typename M::mapped_type& lookup(M& m, const std::string& name, std::size_t lineno,
                                  const char* what) {
    auto it = m.find(name);
    if (it == m.end())
      throw parse_error(std::string("unknown ") + what + " '" + name + "'", lineno, 1);
    return it->second;
  }

  // Returns false on a failed assertion or certificate.
  bool exec_statement(detail::Cursor& c, ScriptResult& res) {
    auto say = [&](const std::string& s) { res.lines.push_back(s); };
    const std::string head = c.ident();
    const std::size_t ln = c.lineno();

    if (head == "surface") {
      std::string name = c.ident();
      c.expect("=");
      SurfaceWord w = SurfaceWord::parse(c.quoted());
      c.finish();
      validate(w);
      words_[name] = w;
      say("surface " + name + " = " + w.str());
    } else if (head == "rotate") {
      std::string name = c.ident();
      std::string dir = c.ident();
      c.finish();
      SurfaceWord& w = lookup(words_, name, ln, "surface");
      if (dir != "left" && dir != "right")
        throw parse_error("rotate wants left or right", ln, 1);
      w = apply_move(w, {dir == "left" ? SurfaceMoveKind::rotate_left
                                       : SurfaceMoveKind::rotate_right});
      say("rotate " + name + ": " + w.str());
    } else if (head == "slide") {
      std::string name = c.ident();
      long pos = c.integer();
      c.expect("over");
      std::string over = c.ident();
      c.finish();
      SurfaceWord& w = lookup(words_, name, ln, "surface");
      if (pos < 0 || (std::size_t)pos >= w.size()) throw move_error("slide position out of range");
      bool from_left = (std::size_t)pos + 1 < w.size() && w[(std::size_t)pos + 1].label == over;
      bool twisted = is_twisted(w, over);
      SurfaceMoveKind k = from_left ? (twisted ? SurfaceMoveKind::slide_t : SurfaceMoveKind::slide_u)
                                    : (twisted ? SurfaceMoveKind::slide_t_inv
                                               : SurfaceMoveKind::slide_u_inv);
      w = apply_move(w, {k, (std::size_t)pos, over});
      say("slide " + name + ": " + w.str());
    } else if (head == "cancel") {
      std::string name = c.ident();
      std::string label = c.ident();
      c.finish();
      SurfaceWord& w = lookup(words_, name, ln, "surface");
      w = apply_move(w, {SurfaceMoveKind::cancel, 0, label});
      say("cancel " + name + ": " + w.str());
    } else if (head == "create") {
      std::string name = c.ident();
      std::string label = c.ident();
      long pos = c.integer();
      int s = c.sign();
      c.finish();
      SurfaceWord& w = lookup(words_, name, ln, "surface");
      if (pos < 0) throw move_error("create position out of range");
      w = apply_move(w, {SurfaceMoveKind::create, (std::size_t)pos, label, s});
      say("create " + name + ": " + w.str());
    } else if (head == "normalize") {
      std::string name = c.ident();
      c.finish();
      SurfaceWord& w = lookup(words_, name, ln, "surface");
      NormalizeResult nr = normalize(w, opts_.normalize_budget);
      w = nr.word;
      res.traces.push_back(nr.trace);
      say("normalize " + name + ": " + std::to_string(nr.trace.moves.size()) + " moves -> " +
          w.str());
    } else if (head == "classify") {
      std::string name = c.ident();
      c.finish();
      say("classify " + name + ": " + classify(lookup(words_, name, ln, "surface")).str());
    } else if (head == "heegaard") {
      std::string name = c.ident();
      c.expect("=");
      c.expect("genus");
      long g = c.integer();
      if (g < 0) throw parse_error("genus must be non-negative", ln, 1);
      HeegaardDiagram d;
      d.genus = (std::size_t)g;
      c.expect(":");
      if (!c.done()) {
        for (;;) {
          d.relators.push_back(parse_relator(c.quoted(), d.genus));
          if (c.accept(",")) continue;
          break;
        }
      }
      c.finish();
      validate(d);
      heegaards_[name] = d;
      say("heegaard " + name + ": genus " + std::to_string(d.genus));
    } else if (head == "h1") {
      std::string name = c.ident();
      c.finish();
      say("h1 " + name + ": " + h1(lookup(heegaards_, name, ln, "heegaard diagram")).str());
    } else if (head == "pi1") {
      std::string name = c.ident();
      c.finish();
      say("pi1 " + name + ": " +
          pi1_presentation(lookup(heegaards_, name, ln, "heegaard diagram")).str());
    } else if (head == "kirby") {
      std::string name = c.ident();
      c.expect("{");
      std::optional<long> ones;
      std::optional<IntMatrix> linking, incidence;
      while (!c.accept("}")) {
        std::string key = c.ident();
        c.expect("=");
        if (key == "one_handles") ones = c.integer();
        else if (key == "linking") linking = detail::parse_matrix_tokens(c);
        else if (key == "incidence") incidence = detail::parse_matrix_tokens(c);
        else throw parse_error("unknown kirby field '" + key + "'", ln, 1);
        if (!c.accept(";") && !(c.peek().text == "}")) c.expect(";");
      }
      c.finish();
      if (!ones || *ones < 0) throw parse_error("kirby needs one_handles >= 0", ln, 1);
      if (!linking) throw parse_error("kirby needs a linking matrix", ln, 1);
      IntMatrix inc = incidence.value_or(IntMatrix());
      if (inc.rows() == 0 && inc.cols() == 0)
        inc = IntMatrix((std::size_t)*ones, linking->rows());
      else if (inc.rows() == 0)
        inc = IntMatrix(0, linking->rows());
      kirbys_[name] = make_kirby((std::size_t)*ones, *linking, inc);
      say("kirby " + name + ": 1-handles=" + std::to_string(*ones) +
          " 2-handles=" + std::to_string(linking->rows()));
    } else if (head == "kslide") {
      std::string name = c.ident();
      long i = c.integer();
      c.expect("over");
      long j = c.integer();
      int s = c.sign();
      c.finish();
      KirbyDiagram& d = lookup(kirbys_, name, ln, "kirby diagram");
      if (i < 0 || j < 0) throw move_error("bad handle slide indices");
      d = handle_slide(d, (std::size_t)i, (std::size_t)j, s);
      say("kslide " + name + ": linking " + d.linking.str());
    } else if (head == "blowup") {
      std::string name = c.ident();
      int s = c.sign();
      c.finish();
      KirbyDiagram& d = lookup(kirbys_, name, ln, "kirby diagram");
      d = blow_up(d, s);
      say("blowup " + name + ": linking " + d.linking.str());
    } else if (head == "blowdown") {
      std::string name = c.ident();
      long i = c.integer();
      c.finish();
      KirbyDiagram& d = lookup(kirbys_, name, ln, "kirby diagram");
      if (i < 0) throw move_error("bad blow down index");
      d = blow_down(d, (std::size_t)i);
      say("blowdown " + name + ": linking " + d.linking.str());
    } else if (head == "boundary") {
      std::string name = c.ident();
      c.finish();
      say("boundary " + name + ": " +
          boundary_h1(lookup(kirbys_, name, ln, "kirby diagram")).str());
    } else if (head == "invariants") {
      std::string name = c.ident();
      c.finish();
      if (kirbys_.count(name)) {
        ClosedInvariants ci = closed_invariants(kirbys_.at(name));
        std::string even = ci.even ? (*ci.even ? "yes" : "no") : "unknown";
        say("invariants " + name + ": euler=" + std::to_string(ci.euler) +
            " signature=" + std::to_string(ci.signature) + " even=" + even +
            " three_handles=" + std::to_string(ci.three_handles));
      } else if (openbooks_.count(name)) {
        FiveManifoldHomology fm = five_invariants(openbooks_.at(name));
        std::string s = "invariants " + name + ":";
        for (std::size_t i = 0; i < 6; ++i)
          s += " H" + std::to_string(i) + "=" + fm.h[i].str();
        say(s);
      } else {
        throw parse_error("unknown diagram '" + name + "'", ln, 1);
      }
    } else if (head == "front") {
      std::string name = c.ident();
      c.expect("=");
      FrontDiagram f;
      f.events = detail::parse_front_tokens(c);
      c.finish();
      validate(f);
      fronts_[name] = f;
      say("front " + name + ": " + std::to_string(component_count(f)) + " components");
    } else if (head == "stabilize") {
      std::string name = c.ident();
      int s = c.sign();
      c.finish();
      FrontDiagram& f = lookup(fronts_, name, ln, "front");
      f = stabilize(f, s);
      FrontInvariants fi = classical_invariants(f);
      std::string tbs, rots;
      for (const auto& comp : fi.components) {
        if (!tbs.empty()) { tbs += ","; rots += ","; }
        tbs += std::to_string(comp.tb);
        rots += std::to_string(comp.rot);
      }
      say("stabilize " + name + ": tb=[" + tbs + "] rot=[" + rots + "]");
    } else if (head == "openbook") {
      std::string name = c.ident();
      c.expect("=");
      c.expect("pages");
      c.expect("(");
      std::string page = c.ident();
      c.expect(")");
      c.finish();
      openbooks_[name] = OpenBook{lookup(kirbys_, page, ln, "kirby diagram")};
      say("openbook " + name + " = pages(" + page + ")");
    } else if (head == "cert") {
      std::string a = c.ident();
      c.expect("~~");
      std::string b = c.ident();
      c.expect("budget");
      long budget = c.integer();
      c.finish();
      if (budget < 0) throw parse_error("budget must be non-negative", ln, 1);
      IntMatrix ma = intersection_form(lookup(kirbys_, a, ln, "kirby diagram"));
      IntMatrix mb = intersection_form(lookup(kirbys_, b, ln, "kirby diagram"));
      CongruenceSearchResult sr = congruence_search_ex(ma, mb, (std::size_t)budget);
      if (sr.outcome == SearchOutcome::refused) {
        say("cert " + a + " ~~ " + b + ": refused, invariants differ");
        return false;
      }
      if (sr.outcome == SearchOutcome::exhausted)
        throw budget_error("no certificate within " + std::to_string(budget) + " steps",
                           (std::size_t)budget);
      res.traces.push_back(CongruenceTrace{ma, *sr.cert, mb});
      say("cert " + a + " ~~ " + b + ": found, " + std::to_string(sr.cert->size()) + " moves");
    } else if (head == "assert") {
      return exec_assert(c, res);
    } else {
      throw parse_error("unknown statement '" + head + "'", ln, c.last_col());
    }
    return true;
  }

  bool exec_assert(detail::Cursor& c, ScriptResult& res) {
    auto say = [&](const std::string& s) { res.lines.push_back(s); };
    const std::size_t ln = c.lineno();
    std::string what = c.ident();
    auto pass = [&](const std::string& detail) {
      say("assert ok: " + detail);
      return true;
    };
    auto fail = [&](const std::string& detail) {
      say("assert failed (line " + std::to_string(ln) + "): " + detail);
      return false;
    };

    if (what == "class") {
      std::string a = c.ident();
      c.expect("==");
      SurfaceClass ca = classify(lookup(words_, a, ln, "surface"));
      SurfaceClass cb;
      std::string rhs;
      if (c.accept("class")) {
        std::string b = c.ident();
        cb = classify(lookup(words_, b, ln, "surface"));
        rhs = b;
      } else {
        std::string kind = c.ident();
        long n = c.integer();
        if (kind == "orientable") cb = {true, (std::size_t)n};
        else if (kind == "nonorientable") cb = {false, (std::size_t)n};
        else throw parse_error("expected class, orientable or nonorientable", ln, 1);
        rhs = cb.str();
      }
      c.finish();
      if (ca == cb) return pass("class " + a + " == " + rhs);
      return fail("class " + a + " is " + ca.str() + ", expected " + cb.str());
    }
    if (what == "word") {
      std::string a = c.ident();
      c.expect("==");
      std::string b = c.ident();
      c.finish();
      const SurfaceWord& wa = lookup(words_, a, ln, "surface");
      const SurfaceWord& wb = lookup(words_, b, ln, "surface");
      if (same_up_to_relabeling(wa, wb)) return pass("word " + a + " == " + b);
      return fail("word " + a + " = '" + wa.str() + "' differs from " + b + " = '" + wb.str() +
                  "'");
    }
    if (what == "canonical") {
      std::string a = c.ident();
      c.finish();
      const SurfaceWord& w = lookup(words_, a, ln, "surface");
      if (is_canonical(w)) return pass("canonical " + a);
      return fail(a + " = '" + w.str() + "' is not canonical");
    }
    if (what == "h1") {
      std::string a = c.ident();
      c.expect("==");
      AbelianGroup want = detail::parse_group_tokens(c);
      c.finish();
      AbelianGroup got = h1(lookup(heegaards_, a, ln, "heegaard diagram"));
      if (got == want) return pass("h1 " + a + " == " + want.str());
      return fail("h1 " + a + " is " + got.str() + ", expected " + want.str());
    }
    if (what == "boundary") {
      std::string a = c.ident();
      c.expect("==");
      AbelianGroup want = detail::parse_group_tokens(c);
      c.finish();
      AbelianGroup got = boundary_h1(lookup(kirbys_, a, ln, "kirby diagram"));
      if (got == want) return pass("boundary " + a + " == " + want.str());
      return fail("boundary " + a + " is " + got.str() + ", expected " + want.str());
    }
    if (what == "tb" || what == "rot") {
      std::string a = c.ident();
      c.expect("==");
      long want = c.integer();
      c.finish();
      FrontInvariants fi = classical_invariants(lookup(fronts_, a, ln, "front"));
      if (fi.components.empty()) return fail(a + " has no components");
      long got = what == "tb" ? fi.components[0].tb : fi.components[0].rot;
      if (got == want) return pass(what + " " + a + " == " + std::to_string(want));
      return fail(what + " " + a + " is " + std::to_string(got) + ", expected " +
                  std::to_string(want));
    }
    if (what == "identify") {
      std::string a = c.ident();
      c.expect("==");
      std::string want = c.ident();
      c.finish();
      auto got = identify_known(lookup(openbooks_, a, ln, "open book"));
      if (got && *got == want) return pass("identify " + a + " == " + want);
      return fail("identify " + a + " is " + (got ? *got : std::string("unknown")) +
                  ", expected " + want);
    }
    throw parse_error("unknown assertion '" + what + "'", ln, 1);
  }

  ScriptOptions opts_;
  std::map<std::string, SurfaceWord> words_;
  std::map<std::string, HeegaardDiagram> heegaards_;
  std::map<std::string, KirbyDiagram> kirbys_;
  std::map<std::string, FrontDiagram> fronts_;
  std::map<std::string, OpenBook> openbooks_;
};

inline ScriptResult run_script(const std::string& text, ScriptOptions opts = {}) {
  return ScriptEngine(opts).run(text);
}

} // namespace hcalc
