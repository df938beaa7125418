// Command line front end: runs scripts, replays traces, normalizes words.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hcalc/hcalc.hpp"

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

int cmd_run(const std::string& script_path, const std::string& trace_out, long max_steps) {
  hcalc::ScriptOptions opts;
  if (max_steps > 0) opts.normalize_budget = (std::size_t)max_steps;
  hcalc::ScriptResult res = hcalc::run_script(slurp(script_path), opts);
  for (const auto& line : res.lines) std::cout << line << "\n";
  if (!trace_out.empty()) {
    std::ofstream out(trace_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << trace_out << "'\n";
      return 2;
    }
    out << hcalc::serialize_traces(res.traces);
  }
  return res.exit_code;
}

int cmd_check(const std::string& trace_path, const std::string& initial,
              const std::string& final_claim) {
  std::vector<hcalc::AnyTrace> traces;
  try {
    traces = hcalc::parse_traces(slurp(trace_path));
  } catch (const hcalc::parse_error& e) {
    std::cout << "parse error: " << e.what() << "\n";
    return 2;
  }
  if (traces.empty()) {
    std::cout << "no traces in file\n";
    return 2;
  }
  bool all_ok = true;
  for (std::size_t i = 0; i < traces.size(); ++i) {
    hcalc::TraceCheck chk;
    const char* kind = "";
    if (std::holds_alternative<hcalc::MoveTrace>(traces[i])) {
      kind = "surface";
      chk = hcalc::verify_trace(std::get<hcalc::MoveTrace>(traces[i]));
    } else {
      kind = "congruence";
      chk = hcalc::verify_trace(std::get<hcalc::CongruenceTrace>(traces[i]));
    }
    if (chk.ok) {
      std::cout << "trace " << i + 1 << " (" << kind << "): ok\n";
    } else {
      std::cout << "trace " << i + 1 << " (" << kind << "): FAIL at step " << chk.failed_step
                << ": " << chk.reason << "\n";
      all_ok = false;
    }
  }
  // Optional endpoint pins, matched against the first trace.
  auto endpoint = [&](bool want_initial) -> std::string {
    if (std::holds_alternative<hcalc::MoveTrace>(traces[0])) {
      const auto& t = std::get<hcalc::MoveTrace>(traces[0]);
      return want_initial ? t.initial.str() : t.final_word.str();
    }
    const auto& t = std::get<hcalc::CongruenceTrace>(traces[0]);
    return want_initial ? t.initial.str() : t.final_matrix.str();
  };
  auto normalize_claim = [&](const std::string& claim) -> std::string {
    if (!claim.empty() && claim[0] == '[') return hcalc::IntMatrix::parse(claim).str();
    return hcalc::SurfaceWord::parse(claim).str();
  };
  if (!initial.empty() && normalize_claim(initial) != endpoint(true)) {
    std::cout << "initial mismatch: trace starts at " << endpoint(true) << "\n";
    all_ok = false;
  }
  if (!final_claim.empty() && normalize_claim(final_claim) != endpoint(false)) {
    std::cout << "final mismatch: trace ends at " << endpoint(false) << "\n";
    all_ok = false;
  }
  return all_ok ? 0 : 1;
}

int cmd_normalize(const std::string& word, const std::string& trace_out, long max_steps) {
  hcalc::SurfaceWord w = hcalc::SurfaceWord::parse(word);
  std::size_t budget = max_steps > 0 ? (std::size_t)max_steps : 100000;
  hcalc::NormalizeResult nr = hcalc::normalize(w, budget);
  std::cout << nr.word.str() << "\n";
  if (!trace_out.empty()) {
    std::ofstream out(trace_out, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write '" << trace_out << "'\n";
      return 2;
    }
    out << hcalc::serialize_traces({nr.trace});
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"handle calculus engine"};
  app.set_version_flag("--version", std::string("hcalc ") + hcalc::version);
  app.require_subcommand(0, 1);

  std::string script_path, trace_out, max_steps_unused;
  long max_steps = 0;
  auto* run = app.add_subcommand("run", "run a script");
  run->add_option("script", script_path, "script file")->required();
  run->add_option("--trace-out", trace_out, "write emitted traces to this file");
  run->add_option("--max-steps", max_steps, "move budget for normalization");

  std::string trace_path, initial, final_claim;
  auto* check = app.add_subcommand("check", "replay a trace file");
  check->add_option("trace", trace_path, "trace file")->required();
  check->add_option("--initial", initial, "expected start of the first trace");
  check->add_option("--final", final_claim, "expected end of the first trace");

  std::string word;
  auto* norm = app.add_subcommand("normalize", "canonical form of a surface word");
  norm->add_option("word", word, "arrow word, e.g. \"a+ b+ a- b-\"");
  norm->add_option("--trace-out", trace_out, "write the move trace to this file");
  norm->add_option("--max-steps", max_steps, "move budget");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(script_path, trace_out, max_steps);
    if (check->parsed()) return cmd_check(trace_path, initial, final_claim);
    if (norm->parsed()) return cmd_normalize(word, trace_out, max_steps);
  } catch (const hcalc::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const hcalc::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  std::cout << app.help();
  return 0;
}
