#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hcalc/surface.hpp"

namespace hcalc {

// Elementary rewrites of a surface word.  Each one is realized by an isotopy
// or a band operation, so all of them preserve the surface type; slides and
// rotations also preserve the number of bands and of boundary circles.
enum class SurfaceMoveKind {
  rotate_left,  // first arrow moves to the end
  rotate_right, // last arrow moves to the front
  slide_u,      // arrow left of an untwisted band end slides along the band
  slide_u_inv,  // arrow right of an untwisted band end slides back
  slide_t,      // arrow left of a twisted band end slides along the band
  slide_t_inv,  // arrow right of a twisted band end slides back
  cancel,       // delete an adjacent pair x+ x- or x- x+
  create,       // insert a fresh adjacent pair x+ x- at a position
};

struct SurfaceMove {
  SurfaceMoveKind kind;
  std::size_t pos = 0;   // position of the moving arrow / insertion point
  std::string label;     // band slid over, or the pair label
  int sign = 1;          // leading sign for create

  bool operator==(const SurfaceMove& o) const {
    return kind == o.kind && pos == o.pos && label == o.label && sign == o.sign;
  }
};

inline const char* kind_name(SurfaceMoveKind k) {
  switch (k) {
    case SurfaceMoveKind::rotate_left: return "rotate_left";
    case SurfaceMoveKind::rotate_right: return "rotate_right";
    case SurfaceMoveKind::slide_u: return "slide_u";
    case SurfaceMoveKind::slide_u_inv: return "slide_u_inv";
    case SurfaceMoveKind::slide_t: return "slide_t";
    case SurfaceMoveKind::slide_t_inv: return "slide_t_inv";
    case SurfaceMoveKind::cancel: return "cancel";
    case SurfaceMoveKind::create: return "create";
  }
  return "?";
}

namespace detail {

inline SurfaceWord erase_at(const SurfaceWord& w, std::size_t pos) {
  std::vector<ArrowToken> t = w.tokens();
  t.erase(t.begin() + (long)pos);
  return SurfaceWord(std::move(t));
}

inline SurfaceWord insert_at(const SurfaceWord& w, std::size_t pos, ArrowToken tok) {
  std::vector<ArrowToken> t = w.tokens();
  t.insert(t.begin() + (long)pos, std::move(tok));
  return SurfaceWord(std::move(t));
}

// Shared legwork for the four slide forms.  The moving arrow at pos must sit
// next to one end of the band `over`; it is carried along the band and comes
// out next to the other end.  Sliding along an untwisted band keeps the
// arrow on the matching side of the far end; a twisted band flips the arrow
// and puts it on the opposite side.
inline std::size_t slide_landing(const SurfaceWord& w, std::size_t pos, const std::string& over,
                                 bool from_left_of_end, bool twisted_kind) {
  validate(w);
  if (pos >= w.size()) throw move_error("slide position out of range");
  const ArrowToken mover = w[pos];
  if (mover.label == over) throw move_error("an arrow cannot slide along its own band");
  auto [p, q] = occurrences(w, over);
  bool twisted = w[p].sign == w[q].sign;
  if (twisted != twisted_kind)
    throw move_error(std::string("band '") + over + "' is " +
                     (twisted ? "twisted" : "untwisted") + ", wrong slide kind");
  std::size_t near_end;
  if (from_left_of_end) {
    if (pos + 1 >= w.size() || w[pos + 1].label != over)
      throw move_error("no end of band '" + over + "' right of the moving arrow");
    near_end = pos + 1;
  } else {
    if (pos == 0 || w[pos - 1].label != over)
      throw move_error("no end of band '" + over + "' left of the moving arrow");
    near_end = pos - 1;
  }
  std::size_t far_end = near_end == p ? q : p;
  std::size_t far = far_end > pos ? far_end - 1 : far_end; // index once pos is cut out
  if (!twisted_kind) return from_left_of_end ? far + 1 : far;
  return from_left_of_end ? far : far + 1;
}

inline SurfaceWord slide(const SurfaceWord& w, std::size_t pos, const std::string& over,
                         bool from_left_of_end, bool twisted_kind) {
  std::size_t dst = slide_landing(w, pos, over, from_left_of_end, twisted_kind);
  ArrowToken out = w[pos];
  if (twisted_kind) out.sign = -out.sign;
  return insert_at(erase_at(w, pos), dst, out);
}

} // namespace detail

inline SurfaceWord apply_move(const SurfaceWord& w, const SurfaceMove& m) {
  switch (m.kind) {
    case SurfaceMoveKind::rotate_left: {
      validate(w);
      if (w.empty()) throw move_error("rotate on an empty word");
      std::vector<ArrowToken> t(w.tokens().begin() + 1, w.tokens().end());
      t.push_back(w[0]);
      return SurfaceWord(std::move(t));
    }
    case SurfaceMoveKind::rotate_right: {
      validate(w);
      if (w.empty()) throw move_error("rotate on an empty word");
      std::vector<ArrowToken> t;
      t.push_back(w[w.size() - 1]);
      t.insert(t.end(), w.tokens().begin(), w.tokens().end() - 1);
      return SurfaceWord(std::move(t));
    }
    case SurfaceMoveKind::slide_u:
      return detail::slide(w, m.pos, m.label, true, false);
    case SurfaceMoveKind::slide_u_inv:
      return detail::slide(w, m.pos, m.label, false, false);
    case SurfaceMoveKind::slide_t:
      return detail::slide(w, m.pos, m.label, true, true);
    case SurfaceMoveKind::slide_t_inv:
      return detail::slide(w, m.pos, m.label, false, true);
    case SurfaceMoveKind::cancel: {
      validate(w);
      auto [p, q] = occurrences(w, m.label);
      if (q != p + 1) throw move_error("ends of band '" + m.label + "' are not adjacent");
      if (w[p].sign == w[q].sign)
        throw move_error("band '" + m.label + "' is twisted, cannot cancel");
      SurfaceWord cut = detail::erase_at(w, q);
      return detail::erase_at(cut, p);
    }
    case SurfaceMoveKind::create: {
      validate(w);
      if (m.pos > w.size()) throw move_error("create position out of range");
      if (m.sign != 1 && m.sign != -1) throw move_error("create sign must be +-1");
      for (const auto& t : w.tokens())
        if (t.label == m.label)
          throw move_error("label '" + m.label + "' already in use");
      SurfaceWord one = detail::insert_at(w, m.pos, {m.label, m.sign});
      return detail::insert_at(one, m.pos + 1, {m.label, -m.sign});
    }
  }
  throw move_error("unknown move");
}

// The move undoing m, phrased against the word m produces.
inline SurfaceMove inverse_move(const SurfaceWord& w, const SurfaceMove& m) {
  switch (m.kind) {
    case SurfaceMoveKind::rotate_left: return {SurfaceMoveKind::rotate_right};
    case SurfaceMoveKind::rotate_right: return {SurfaceMoveKind::rotate_left};
    case SurfaceMoveKind::slide_u:
    case SurfaceMoveKind::slide_u_inv:
    case SurfaceMoveKind::slide_t:
    case SurfaceMoveKind::slide_t_inv: {
      bool from_left = m.kind == SurfaceMoveKind::slide_u || m.kind == SurfaceMoveKind::slide_t;
      bool twisted = m.kind == SurfaceMoveKind::slide_t || m.kind == SurfaceMoveKind::slide_t_inv;
      std::size_t dst = detail::slide_landing(w, m.pos, m.label, from_left, twisted);
      // Sliding back from the landing spot undoes the move.  Untwisted
      // slides come back via the opposite form, twisted ones via the same,
      // because the twist already swapped which side the arrow sits on.
      SurfaceMoveKind ik = m.kind;
      if (m.kind == SurfaceMoveKind::slide_u) ik = SurfaceMoveKind::slide_u_inv;
      else if (m.kind == SurfaceMoveKind::slide_u_inv) ik = SurfaceMoveKind::slide_u;
      return {ik, dst, m.label};
    }
    case SurfaceMoveKind::cancel: {
      auto [p, q] = occurrences(w, m.label);
      (void)q;
      return {SurfaceMoveKind::create, p, m.label, w[p].sign};
    }
    case SurfaceMoveKind::create:
      return {SurfaceMoveKind::cancel, 0, m.label};
  }
  throw move_error("unknown move");
}

// Every move whose preconditions hold on w, in a fixed order.  Creates are
// optional since they enlarge the word without bound.
inline std::vector<SurfaceMove> applicable_moves(const SurfaceWord& w,
                                                 bool include_creates = false) {
  std::vector<SurfaceMove> out;
  if (!w.empty()) {
    out.push_back({SurfaceMoveKind::rotate_left});
    out.push_back({SurfaceMoveKind::rotate_right});
  }
  for (std::size_t pos = 0; pos < w.size(); ++pos) {
    for (SurfaceMoveKind k : {SurfaceMoveKind::slide_u, SurfaceMoveKind::slide_u_inv,
                              SurfaceMoveKind::slide_t, SurfaceMoveKind::slide_t_inv}) {
      bool from_left = k == SurfaceMoveKind::slide_u || k == SurfaceMoveKind::slide_t;
      std::size_t nb = from_left ? pos + 1 : pos - 1;
      if (from_left ? pos + 1 >= w.size() : pos == 0) continue;
      SurfaceMove m{k, pos, w[nb].label};
      try {
        detail::slide_landing(w, m.pos, m.label, from_left,
                              k == SurfaceMoveKind::slide_t || k == SurfaceMoveKind::slide_t_inv);
        out.push_back(m);
      } catch (const move_error&) {
      }
    }
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    const auto& a = w[i];
    const auto& b = w[i + 1];
    if (a.label == b.label && a.sign != b.sign && seen.insert(a.label).second)
      out.push_back({SurfaceMoveKind::cancel, 0, a.label});
  }
  if (include_creates) {
    std::string fresh = "n0";
    for (int k = 0; ; ++k) {
      fresh = "n" + std::to_string(k);
      bool used = false;
      for (const auto& t : w.tokens()) used = used || t.label == fresh;
      if (!used) break;
    }
    for (std::size_t pos = 0; pos <= w.size(); ++pos)
      for (int s : {1, -1}) out.push_back({SurfaceMoveKind::create, pos, fresh, s});
  }
  return out;
}

// A claimed rewrite: the initial word, the moves, and the final word.
struct MoveTrace {
  SurfaceWord initial;
  std::vector<SurfaceMove> moves;
  SurfaceWord final_word;
};

struct TraceCheck {
  bool ok = true;
  std::size_t failed_step = 0; // 0-based index into moves
  std::string reason;
};

// Replays the moves one by one; any precondition failure or a mismatched
// final word rejects the trace.
inline TraceCheck verify_trace(const MoveTrace& t) {
  SurfaceWord w = t.initial;
  try {
    validate(w);
  } catch (const std::exception& e) {
    return {false, 0, std::string("initial word: ") + e.what()};
  }
  for (std::size_t i = 0; i < t.moves.size(); ++i) {
    try {
      w = apply_move(w, t.moves[i]);
    } catch (const std::exception& e) {
      return {false, i, e.what()};
    }
  }
  if (w != t.final_word)
    return {false, t.moves.size(),
            "replay ends at '" + w.str() + "', trace claims '" + t.final_word.str() + "'"};
  return {};
}

} // namespace hcalc
