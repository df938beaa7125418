#include <catch2/catch_amalgamated.hpp>

#include "hcalc/script.hpp"

using hcalc::AnyTrace;
using hcalc::CongruenceTrace;
using hcalc::IntMatrix;
using hcalc::MoveTrace;
using hcalc::ScriptOptions;
using hcalc::ScriptResult;
using hcalc::SurfaceWord;

namespace {

ScriptResult run(const std::string& text, ScriptOptions opts = {}) {
  return hcalc::run_script(text, opts);
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

} // namespace

TEST_CASE("surface statements report each step") {
  ScriptResult r = run("surface w = \"a+ b+ a- b-\"\n"
                       "classify w\n"
                       "rotate w left\n"
                       "slide w 0 over a\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "surface w = a+ b+ a- b-",
              "classify w: orientable genus=1",
              "rotate w: b+ a- b- a+",
              "slide w: a- b- a+ b+",
          });
}

TEST_CASE("create and cancel statements") {
  ScriptResult r = run("surface p = \"x+ x-\"\n"
                       "create p y 1 -\n"
                       "cancel p y\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "surface p = x+ x-",
              "create p: x+ y- y+ x-",
              "cancel p: x+ x-",
          });
}

TEST_CASE("comments and blank lines keep statement line numbers") {
  ScriptResult r = run("# torus with one crosscap missing\n"
                       "surface w = \"a+ b+ a- b-\"\n"
                       "\n"
                       "classify w  # trailing comment\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "surface w = a+ b+ a- b-",
              "classify w: orientable genus=1",
          });
}

TEST_CASE("normalize reports move count and records a verified trace") {
  ScriptResult r = run("surface k = \"a+ b+ a- b+\"\n"
                       "normalize k\n"
                       "classify k\n"
                       "assert class k == nonorientable 2\n"
                       "assert canonical k\n"
                       "surface m = \"c+ c+ d+ d+\"\n"
                       "assert word k == m\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines.size() == 7);
  REQUIRE(starts_with(r.lines[1], "normalize k: "));
  REQUIRE(r.lines[2] == "classify k: nonorientable crosscaps=2");
  REQUIRE(r.lines[3] == "assert ok: class k == nonorientable crosscaps=2");
  REQUIRE(r.lines[4] == "assert ok: canonical k");
  REQUIRE(r.lines[6] == "assert ok: word k == m");

  REQUIRE(r.traces.size() == 1);
  const auto* t = std::get_if<MoveTrace>(&r.traces[0]);
  REQUIRE(t != nullptr);
  REQUIRE(t->initial == SurfaceWord::parse("a+ b+ a- b+"));
  REQUIRE(hcalc::is_canonical(t->final_word));
  REQUIRE(hcalc::verify_trace(*t).ok);
}

TEST_CASE("failed assertion stops the script with exit 1") {
  ScriptResult r = run("surface w = \"a+ a+\"\n"
                       "assert class w == orientable 1\n"
                       "surface z = \"b+ b-\"\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines == std::vector<std::string>{
              "surface w = a+ a+",
              "assert failed (line 2): class w is nonorientable crosscaps=1, "
              "expected orientable genus=1",
          });
}

TEST_CASE("class assertion can compare two named surfaces") {
  ScriptResult r = run("surface a = \"a+ b+ a- b-\"\n"
                       "surface b = \"p+ q+ p- q-\"\n"
                       "assert class a == class b\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines[2] == "assert ok: class a == b");
}

TEST_CASE("word and canonical assertion failures name the words") {
  ScriptResult r = run("surface u = \"a+ a+\"\n"
                       "surface v = \"b+ b-\"\n"
                       "assert word u == v\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines[2] ==
          "assert failed (line 3): word u = 'a+ a+' differs from v = 'b+ b-'");

  r = run("surface w = \"a+ b+ a- b+\"\n"
          "assert canonical w\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines[1] ==
          "assert failed (line 2): w = 'a+ b+ a- b+' is not canonical");
}

TEST_CASE("heegaard statements print presentations and homology") {
  ScriptResult r = run("heegaard H = genus 2 : \"x1 x2 x1^-1 x2^-1\", \"x2 x2\"\n"
                       "h1 H\n"
                       "pi1 H\n"
                       "assert h1 H == Z + Z/2\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "heegaard H: genus 2",
              "h1 H: Z + Z/2",
              "pi1 H: <x1, x2 | x1 x2 x1^-1 x2^-1, x2 x2>",
              "assert ok: h1 H == Z + Z/2",
          });
}

TEST_CASE("empty relators print as 1") {
  ScriptResult r = run("heegaard H = genus 1 : \"\"\n"
                       "pi1 H\n"
                       "h1 H\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines[1] == "pi1 H: <x1 | 1>");
  REQUIRE(r.lines[2] == "h1 H: Z");
}

TEST_CASE("h1 assertion failure reports both groups") {
  ScriptResult r = run("heegaard H = genus 1 : \"x1 x1\"\n"
                       "assert h1 H == Z\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines[1] == "assert failed (line 2): h1 H is Z/2, expected Z");
}

TEST_CASE("kirby pipeline reports linking matrices after each move") {
  ScriptResult r = run("kirby K { one_handles = 0; linking = [[0,1],[1,0]] }\n"
                       "kslide K 0 over 1 +\n"
                       "blowup K -\n"
                       "blowdown K 2\n"
                       "boundary K\n"
                       "invariants K\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "kirby K: 1-handles=0 2-handles=2",
              "kslide K: linking [[2,1],[1,0]]",
              "blowup K: linking [[2,1,0],[1,0,0],[0,0,-1]]",
              "blowdown K: linking [[2,1],[1,0]]",
              "boundary K: 0",
              "invariants K: euler=4 signature=0 even=yes three_handles=0",
          });
}

TEST_CASE("kirby literals accept explicit incidence and boundary assertions") {
  ScriptResult r = run("kirby W { one_handles = 1; linking = [[0]]; incidence = [[3]] }\n"
                       "boundary W\n"
                       "assert boundary W == Z/3 + Z/3\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "kirby W: 1-handles=1 2-handles=1",
              "boundary W: Z/3 + Z/3",
              "assert ok: boundary W == Z/3 + Z/3",
          });

  r = run("kirby K { one_handles = 0; linking = [[5]] }\n"
          "assert boundary K == Z/7\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines[1] == "assert failed (line 2): boundary K is Z/5, expected Z/7");
}

TEST_CASE("front and stabilize statements") {
  ScriptResult r = run("front F = [Lc0, Lc1, X0, X2, Rc1, Rc0]\n"
                       "stabilize F +\n"
                       "assert tb F == -2\n"
                       "assert rot F == 1\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "front F: 2 components",
              "stabilize F: tb=[-2,-1] rot=[1,0]",
              "assert ok: tb F == -2",
              "assert ok: rot F == 1",
          });
}

TEST_CASE("tb assertion failure reports the measured value") {
  ScriptResult r = run("front U = [Lc0, Rc0]\n"
                       "assert tb U == 0\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines[1] == "assert failed (line 2): tb U is -1, expected 0");
}

TEST_CASE("open book over a closed page identifies the total space") {
  ScriptResult r = run("kirby P { one_handles = 0; linking = [[0]] }\n"
                       "openbook M = pages(P)\n"
                       "invariants M\n"
                       "assert identify M == S2xS3\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines == std::vector<std::string>{
              "kirby P: 1-handles=0 2-handles=1",
              "openbook M = pages(P)",
              "invariants M: H0=Z H1=0 H2=Z H3=Z H4=0 H5=Z",
              "assert ok: identify M == S2xS3",
          });
}

TEST_CASE("unidentified open books fail the identify assertion") {
  ScriptResult r = run("kirby P { one_handles = 2; linking = [] }\n"
                       "openbook M = pages(P)\n"
                       "assert identify M == S5\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines[2] ==
          "assert failed (line 3): identify M is unknown, expected S5");
}

TEST_CASE("mixed pages are reported as unsupported") {
  ScriptResult r = run("kirby P { one_handles = 1; linking = [[2]] }\n"
                       "openbook M = pages(P)\n"
                       "invariants M\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines.size() == 3);
  REQUIRE(starts_with(r.lines[2], "unsupported: "));
}

TEST_CASE("cert records a replayable congruence trace") {
  ScriptResult r = run("kirby A { one_handles = 0; linking = [[0,1],[1,0]] }\n"
                       "kirby B { one_handles = 0; linking = [[0,1],[1,0]] }\n"
                       "kslide B 0 over 1 +\n"
                       "cert A ~~ B budget 10000\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines.size() == 4);
  REQUIRE(starts_with(r.lines[3], "cert A ~~ B: found, "));

  REQUIRE(r.traces.size() == 1);
  const auto* t = std::get_if<CongruenceTrace>(&r.traces[0]);
  REQUIRE(t != nullptr);
  REQUIRE(t->initial == IntMatrix{{0, 1}, {1, 0}});
  REQUIRE(t->final_matrix == IntMatrix{{2, 1}, {1, 0}});
  REQUIRE(hcalc::verify_trace(*t).ok);
}

TEST_CASE("cert refusal fails the script and stops execution") {
  ScriptResult r = run("kirby A { one_handles = 0; linking = [[1]] }\n"
                       "kirby B { one_handles = 0; linking = [[-1]] }\n"
                       "cert A ~~ B budget 100\n"
                       "surface never = \"a+ a-\"\n");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.lines.size() == 3);
  REQUIRE(r.lines[2] == "cert A ~~ B: refused, invariants differ");
  REQUIRE(r.traces.empty());
}

TEST_CASE("cert reports an exhausted budget as exit 2") {
  ScriptResult r = run("kirby A { one_handles = 0; linking = [[0,1,0],[1,0,0],[0,0,-1]] }\n"
                       "kirby B { one_handles = 0; linking = [[1,0,0],[0,-1,0],[0,0,-1]] }\n"
                       "cert A ~~ B budget 5\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines.size() == 3);
  REQUIRE(r.lines[2] == "budget exceeded: no certificate within 5 steps");
}

TEST_CASE("cert rejects diagrams with 1-handles") {
  ScriptResult r = run("kirby A { one_handles = 1; linking = [[0]] }\n"
                       "kirby B { one_handles = 0; linking = [[0]] }\n"
                       "cert A ~~ B budget 10\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(starts_with(r.lines[2], "error: "));
}

TEST_CASE("parse errors carry line and column positions") {
  ScriptResult r = run("surface w = \"a+ a-\"\n"
                       "classify w\n"
                       "bogus thing\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines.size() == 3);
  REQUIRE(starts_with(r.lines[2], "parse error: line 3"));

  r = run("kirby K { one_handles = 0 }\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines == std::vector<std::string>{
              "parse error: line 1, col 1: kirby needs a linking matrix"});

  r = run("kirby K { one_handles = 0; linking = [[1,2],[3]] }\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(starts_with(r.lines[0], "parse error: line 1"));
  REQUIRE(r.lines[0].find("ragged matrix literal") != std::string::npos);

  r = run("surface w = \"a+ a-\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines[0].find("unterminated string") != std::string::npos);

  r = run("surface w = \"a+ a-\"\nrotate w up\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines[1].find("rotate wants left or right") != std::string::npos);

  r = run("classify nope\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines == std::vector<std::string>{
              "parse error: line 1, col 1: unknown surface 'nope'"});

  r = run("surface w = \"a+ a-\"\nclassify w extra\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines[1].find("trailing input 'extra'") != std::string::npos);

  r = run("front F = [Qc0]\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines[0].find("expected Lc<k>, Rc<k> or X<k>") != std::string::npos);

  r = run("heegaard H = genus 1 : \"x1 x1\"\nassert h1 H == W\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines[1].find("bad group term 'W'") != std::string::npos);
}

TEST_CASE("runtime move errors exit 2 with an error line") {
  ScriptResult r = run("surface w = \"a+ a-\"\n"
                       "slide w 7 over a\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(r.lines[1] == "error: slide position out of range");

  r = run("kirby K { one_handles = 0; linking = [[2]] }\n"
          "blowdown K 0\n");
  REQUIRE(r.exit_code == 2);
  REQUIRE(starts_with(r.lines[1], "error: "));
}

TEST_CASE("normalize honours the script budget option") {
  ScriptOptions opts;
  opts.normalize_budget = 2;
  ScriptResult r = run("surface w = \"a+ b+ a- b- c+ c+\"\nnormalize w\n", opts);
  REQUIRE(r.exit_code == 2);
  REQUIRE(starts_with(r.lines[1], "budget exceeded: "));
}

TEST_CASE("scripts accumulate traces across statements") {
  ScriptResult r = run("surface w = \"a+ b+ a- b+\"\n"
                       "normalize w\n"
                       "surface v = \"x+ y+ x- y-\"\n"
                       "normalize v\n"
                       "kirby A { one_handles = 0; linking = [[1]] }\n"
                       "kirby B { one_handles = 0; linking = [[1]] }\n"
                       "cert A ~~ B budget 100\n");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.traces.size() == 3);
  REQUIRE(std::holds_alternative<MoveTrace>(r.traces[0]));
  REQUIRE(std::holds_alternative<MoveTrace>(r.traces[1]));
  REQUIRE(std::holds_alternative<CongruenceTrace>(r.traces[2]));

  // identical forms certify with an empty move list
  REQUIRE(std::get<CongruenceTrace>(r.traces[2]).moves.empty());

  std::string text = hcalc::serialize_traces(r.traces);
  std::vector<AnyTrace> back = hcalc::parse_traces(text);
  REQUIRE(back.size() == 3);
  REQUIRE(hcalc::serialize_traces(back) == text);
  for (const auto& t : back) {
    bool ok = std::visit([](const auto& x) { return hcalc::verify_trace(x).ok; }, t);
    REQUIRE(ok);
  }
}

TEST_CASE("surface traces roundtrip through text with every move kind") {
  SurfaceWord w = SurfaceWord::parse("a+ b+ a- b-");
  MoveTrace t;
  t.initial = w;
  using K = hcalc::SurfaceMoveKind;
  std::vector<hcalc::SurfaceMove> moves = {
      {K::rotate_left},
      {K::rotate_right},
      {K::slide_u, 0, "b"},
      {K::slide_u_inv, 3, "b"},
      {K::create, 4, "d", 1},
      {K::cancel, 0, "d"},
  };
  for (const auto& m : moves) w = apply_move(w, m);
  t.moves = moves;
  t.final_word = w;
  REQUIRE(t.final_word == t.initial);
  REQUIRE(hcalc::verify_trace(t).ok);

  std::string text = hcalc::serialize_traces({t});
  REQUIRE(text.find("MOVE slide_u pos=0 over=b") != std::string::npos);
  REQUIRE(text.find("MOVE create label=d pos=4 sign=+") != std::string::npos);
  std::vector<AnyTrace> back = hcalc::parse_traces(text);
  REQUIRE(back.size() == 1);
  REQUIRE(hcalc::serialize_traces(back) == text);
  REQUIRE(hcalc::verify_trace(std::get<MoveTrace>(back[0])).ok);
}

TEST_CASE("twisted slides serialize and replay") {
  SurfaceWord w = SurfaceWord::parse("m+ o+ o+ m-");
  MoveTrace t;
  t.initial = w;
  using K = hcalc::SurfaceMoveKind;
  t.moves = {{K::slide_t, 0, "o"}, {K::slide_t, 1, "o"}, {K::slide_t_inv, 3, "o"}};
  for (const auto& m : t.moves) w = apply_move(w, m);
  t.final_word = w;
  REQUIRE(w == SurfaceWord::parse("m+ o+ m+ o+"));
  REQUIRE(hcalc::verify_trace(t).ok);

  std::string text = hcalc::serialize_traces({t});
  REQUIRE(text.find("MOVE slide_t pos=0 over=o") != std::string::npos);
  std::vector<AnyTrace> back = hcalc::parse_traces(text);
  REQUIRE(hcalc::serialize_traces(back) == text);
  REQUIRE(hcalc::verify_trace(std::get<MoveTrace>(back[0])).ok);
}

TEST_CASE("congruence traces roundtrip through text with every move kind") {
  CongruenceTrace t;
  t.initial = IntMatrix{{1, 0}, {0, -1}};
  using M = hcalc::CongruenceMoveKind;
  t.moves = {
      {M::add, 0, 1, 1},
      {M::swap_rc, 0, 1, 0},
      {M::negate, 0, 0, 0},
      {M::append, 0, 0, 1},
      {M::remove, 2, 0, 0},
  };
  IntMatrix m = t.initial;
  for (const auto& mv : t.moves) m = apply_congruence_move(m, mv);
  t.final_matrix = m;
  REQUIRE(t.final_matrix == IntMatrix{{-1, 1}, {1, 0}});
  REQUIRE(hcalc::verify_trace(t).ok);

  std::string text = hcalc::serialize_traces({t});
  REQUIRE(text.find("MOVE add i=0 j=1 eps=1") != std::string::npos);
  REQUIRE(text.find("MOVE swap i=0 j=1") != std::string::npos);
  REQUIRE(text.find("MOVE negate i=0") != std::string::npos);
  REQUIRE(text.find("MOVE append sign=+") != std::string::npos);
  REQUIRE(text.find("MOVE remove i=2") != std::string::npos);
  std::vector<AnyTrace> back = hcalc::parse_traces(text);
  REQUIRE(back.size() == 1);
  REQUIRE(hcalc::serialize_traces(back) == text);
  REQUIRE(hcalc::verify_trace(std::get<CongruenceTrace>(back[0])).ok);
}

TEST_CASE("tampered traces are rejected with a step index") {
  CongruenceTrace t;
  t.initial = IntMatrix{{1, 0}, {0, -1}};
  using M = hcalc::CongruenceMoveKind;
  t.moves = {{M::add, 0, 1, 1}, {M::negate, 0, 0, 0}};
  IntMatrix m = t.initial;
  for (const auto& mv : t.moves) m = apply_congruence_move(m, mv);
  t.final_matrix = m;
  REQUIRE(hcalc::verify_trace(t).ok);

  SECTION("wrong final matrix") {
    t.final_matrix = IntMatrix{{0, 0}, {0, 0}};
    hcalc::TraceCheck c = hcalc::verify_trace(t);
    REQUIRE_FALSE(c.ok);
    REQUIRE(c.failed_step == t.moves.size());
    REQUIRE(c.reason.find("replay ends at") != std::string::npos);
  }

  SECTION("illegal move mid-trace") {
    // removing a non-isolated index must be refused at step 1
    t.moves[1] = {M::remove, 0, 0, 0};
    hcalc::TraceCheck c = hcalc::verify_trace(t);
    REQUIRE_FALSE(c.ok);
    REQUIRE(c.failed_step == 1);
    REQUIRE_FALSE(c.reason.empty());
  }

  SECTION("tampered surface final word") {
    MoveTrace st;
    st.initial = SurfaceWord::parse("a+ b+ a- b-");
    st.moves = {{hcalc::SurfaceMoveKind::rotate_left}};
    st.final_word = SurfaceWord::parse("a+ b+ a- b-");
    hcalc::TraceCheck c = hcalc::verify_trace(st);
    REQUIRE_FALSE(c.ok);
    REQUIRE(c.failed_step == 1);
  }
}

TEST_CASE("trace text parse errors") {
  REQUIRE_THROWS_AS(hcalc::parse_traces("MOVE add i=0 j=1 eps=1\n"), hcalc::parse_error);
  REQUIRE_THROWS_AS(hcalc::parse_traces("TRACE surface\nINITIAL a+ a-\nEND\n"),
                    hcalc::parse_error);
  REQUIRE_THROWS_AS(hcalc::parse_traces("TRACE bogus\n"), hcalc::parse_error);
  REQUIRE_THROWS_AS(hcalc::parse_traces("TRACE surface\nINITIAL a+ a-\nFINAL a+ a-\n"),
                    hcalc::parse_error);
  REQUIRE_THROWS_AS(
      hcalc::parse_traces("TRACE congruence\nINITIAL [[1]]\nMOVE odd i=0\nFINAL [[1]]\nEND\n"),
      hcalc::parse_error);
  REQUIRE_THROWS_AS(
      hcalc::parse_traces("TRACE surface\nINITIAL a+ a-\nMOVE slide_u pos=0\nFINAL a+ a-\nEND\n"),
      hcalc::parse_error);

  try {
    hcalc::parse_traces("TRACE surface\nTRACE surface\n");
    FAIL("expected parse_error");
  } catch (const hcalc::parse_error& e) {
    REQUIRE(e.line() == 2);
  }

  // windows line endings and trailing spaces are tolerated
  std::vector<AnyTrace> ts =
      hcalc::parse_traces("TRACE congruence\r\nINITIAL [[1]] \r\nFINAL [[1]]\r\nEND\r\n");
  REQUIRE(ts.size() == 1);
  REQUIRE(hcalc::verify_trace(std::get<CongruenceTrace>(ts[0])).ok);
}

TEST_CASE("empty scripts succeed with no output") {
  ScriptResult r = run("");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.lines.empty());
  REQUIRE(r.traces.empty());
}
