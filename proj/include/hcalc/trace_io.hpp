#pragma once

#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "hcalc/congruence.hpp"
#include "hcalc/surface_moves.hpp"

namespace hcalc {

// A claimed congruence chain between two symmetric matrices.
struct CongruenceTrace {
  IntMatrix initial;
  CongruenceCert moves;
  IntMatrix final_matrix;
};

inline TraceCheck verify_trace(const CongruenceTrace& t) {
  IntMatrix m = t.initial;
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    try {
      m = apply_congruence_move(m, t.moves[i]);
    } catch (const std::exception& e) {
      return {false, i, e.what()};
    }
  }
  if (m != t.final_matrix)
    return {false, t.moves.size(),
            "replay ends at " + m.str() + ", trace claims " + t.final_matrix.str()};
  return {};
}

using AnyTrace = std::variant<MoveTrace, CongruenceTrace>;

// Line format, one record per trace:
//   TRACE surface|congruence
//   INITIAL <word or matrix>
//   MOVE <kind> [key=value ...]
//   FINAL <word or matrix>
//   END
inline void serialize_trace(std::ostream& os, const MoveTrace& t) {
  os << "TRACE surface\n";
  os << "INITIAL " << t.initial.str() << "\n";
  for (const auto& m : t.moves) {
    os << "MOVE " << kind_name(m.kind);
    switch (m.kind) {
      case SurfaceMoveKind::rotate_left:
      case SurfaceMoveKind::rotate_right:
        break;
      case SurfaceMoveKind::slide_u:
      case SurfaceMoveKind::slide_u_inv:
      case SurfaceMoveKind::slide_t:
      case SurfaceMoveKind::slide_t_inv:
        os << " pos=" << m.pos << " over=" << m.label;
        break;
      case SurfaceMoveKind::cancel:
        os << " label=" << m.label;
        break;
      case SurfaceMoveKind::create:
        os << " label=" << m.label << " pos=" << m.pos << " sign=" << (m.sign > 0 ? "+" : "-");
        break;
    }
    os << "\n";
  }
  os << "FINAL " << t.final_word.str() << "\n";
  os << "END\n";
}

inline void serialize_trace(std::ostream& os, const CongruenceTrace& t) {
  os << "TRACE congruence\n";
  os << "INITIAL " << t.initial.str() << "\n";
  for (const auto& m : t.moves) {
    switch (m.kind) {
      case CongruenceMoveKind::add:
        os << "MOVE add i=" << m.i << " j=" << m.j << " eps=" << m.eps;
        break;
      case CongruenceMoveKind::swap_rc:
        os << "MOVE swap i=" << m.i << " j=" << m.j;
        break;
      case CongruenceMoveKind::negate:
        os << "MOVE negate i=" << m.i;
        break;
      case CongruenceMoveKind::append:
        os << "MOVE append sign=" << (m.eps > 0 ? "+" : "-");
        break;
      case CongruenceMoveKind::remove:
        os << "MOVE remove i=" << m.i;
        break;
    }
    os << "\n";
  }
  os << "FINAL " << t.final_matrix.str() << "\n";
  os << "END\n";
}

inline std::string serialize_traces(const std::vector<AnyTrace>& ts) {
  std::ostringstream os;
  for (const auto& t : ts)
    std::visit([&](const auto& x) { serialize_trace(os, x); }, t);
  return os.str();
}

namespace detail {

inline std::map<std::string, std::string> parse_kv(const std::string& rest, std::size_t line) {
  std::map<std::string, std::string> kv;
  std::istringstream is(rest);
  std::string tok;
  while (is >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw parse_error("expected key=value, got '" + tok + "'", line, 1);
    kv[tok.substr(0, eq)] = tok.substr(eq + 1);
  }
  return kv;
}

inline std::size_t parse_index(const std::map<std::string, std::string>& kv, const std::string& key,
                               std::size_t line) {
  auto it = kv.find(key);
  if (it == kv.end()) throw parse_error("missing " + key + "=", line, 1);
  try {
    return std::stoul(it->second);
  } catch (...) {
    throw parse_error("bad value for " + key + "=", line, 1);
  }
}

} // namespace detail

inline std::vector<AnyTrace> parse_traces(const std::string& text) {
  std::vector<AnyTrace> out;
  std::istringstream is(text);
  std::string raw;
  std::size_t lineno = 0;

  std::string kind;
  bool in_trace = false, have_final = false;
  MoveTrace st;
  CongruenceTrace ct;

  auto finish = [&](std::size_t line) {
    if (!have_final) throw parse_error("trace without FINAL", line, 1);
    if (kind == "surface") out.push_back(st);
    else out.push_back(ct);
    in_trace = false;
    have_final = false;
    st = MoveTrace{};
    ct = CongruenceTrace{};
  };

  while (std::getline(is, raw)) {
    ++lineno;
    std::string line = raw;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string head;
    ls >> head;
    std::string rest;
    std::getline(ls, rest);
    if (!rest.empty() && rest[0] == ' ') rest = rest.substr(1);

    if (head == "TRACE") {
      if (in_trace) throw parse_error("TRACE inside another trace", lineno, 1);
      if (rest != "surface" && rest != "congruence")
        throw parse_error("unknown trace kind '" + rest + "'", lineno, 7);
      kind = rest;
      in_trace = true;
    } else if (!in_trace) {
      throw parse_error("expected TRACE, got '" + head + "'", lineno, 1);
    } else if (head == "INITIAL") {
      if (kind == "surface") st.initial = SurfaceWord::parse(rest);
      else ct.initial = IntMatrix::parse(rest);
    } else if (head == "FINAL") {
      if (kind == "surface") st.final_word = SurfaceWord::parse(rest);
      else ct.final_matrix = IntMatrix::parse(rest);
      have_final = true;
    } else if (head == "END") {
      finish(lineno);
    } else if (head == "MOVE") {
      std::istringstream ms(rest);
      std::string mk;
      ms >> mk;
      std::string args;
      std::getline(ms, args);
      auto kv = detail::parse_kv(args, lineno);
      if (kind == "surface") {
        SurfaceMove m;
        if (mk == "rotate_left") m.kind = SurfaceMoveKind::rotate_left;
        else if (mk == "rotate_right") m.kind = SurfaceMoveKind::rotate_right;
        else if (mk == "slide_u") m.kind = SurfaceMoveKind::slide_u;
        else if (mk == "slide_u_inv") m.kind = SurfaceMoveKind::slide_u_inv;
        else if (mk == "slide_t") m.kind = SurfaceMoveKind::slide_t;
        else if (mk == "slide_t_inv") m.kind = SurfaceMoveKind::slide_t_inv;
        else if (mk == "cancel") m.kind = SurfaceMoveKind::cancel;
        else if (mk == "create") m.kind = SurfaceMoveKind::create;
        else throw parse_error("unknown surface move '" + mk + "'", lineno, 6);
        switch (m.kind) {
          case SurfaceMoveKind::rotate_left:
          case SurfaceMoveKind::rotate_right:
            break;
          case SurfaceMoveKind::slide_u:
          case SurfaceMoveKind::slide_u_inv:
          case SurfaceMoveKind::slide_t:
          case SurfaceMoveKind::slide_t_inv:
            m.pos = detail::parse_index(kv, "pos", lineno);
            if (!kv.count("over")) throw parse_error("missing over=", lineno, 1);
            m.label = kv.at("over");
            break;
          case SurfaceMoveKind::cancel:
            if (!kv.count("label")) throw parse_error("missing label=", lineno, 1);
            m.label = kv.at("label");
            break;
          case SurfaceMoveKind::create:
            m.pos = detail::parse_index(kv, "pos", lineno);
            if (!kv.count("label")) throw parse_error("missing label=", lineno, 1);
            m.label = kv.at("label");
            if (!kv.count("sign")) throw parse_error("missing sign=", lineno, 1);
            m.sign = kv.at("sign") == "+" ? 1 : -1;
            break;
        }
        st.moves.push_back(m);
      } else {
        CongruenceMove m{CongruenceMoveKind::add, 0, 0, 1};
        if (mk == "add") {
          m.kind = CongruenceMoveKind::add;
          m.i = detail::parse_index(kv, "i", lineno);
          m.j = detail::parse_index(kv, "j", lineno);
          auto it = kv.find("eps");
          if (it == kv.end()) throw parse_error("missing eps=", lineno, 1);
          m.eps = it->second == "1" || it->second == "+1" ? 1 : -1;
        } else if (mk == "swap") {
          m.kind = CongruenceMoveKind::swap_rc;
          m.i = detail::parse_index(kv, "i", lineno);
          m.j = detail::parse_index(kv, "j", lineno);
        } else if (mk == "negate") {
          m.kind = CongruenceMoveKind::negate;
          m.i = detail::parse_index(kv, "i", lineno);
        } else if (mk == "append") {
          m.kind = CongruenceMoveKind::append;
          if (!kv.count("sign")) throw parse_error("missing sign=", lineno, 1);
          m.eps = kv.at("sign") == "+" ? 1 : -1;
        } else if (mk == "remove") {
          m.kind = CongruenceMoveKind::remove;
          m.i = detail::parse_index(kv, "i", lineno);
        } else {
          throw parse_error("unknown congruence move '" + mk + "'", lineno, 6);
        }
        ct.moves.push_back(m);
      }
    } else {
      throw parse_error("unknown directive '" + head + "'", lineno, 1);
    }
  }
  if (in_trace) throw parse_error("unterminated trace", lineno, 1);
  return out;
}

} // namespace hcalc
