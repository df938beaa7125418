#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hcalc/surface_moves.hpp"

namespace hcalc {

struct NormalizeResult {
  SurfaceWord word;
  MoveTrace trace;
};

namespace detail {

// Rewrites a one-boundary-circle word into canonical shape, recording every
// elementary move.  The strategy:
//   1. any twisted band with arrows between its ends swallows them one by
//      one, turning itself into an adjacent twisted pair (the arrows come
//      out on the far side, flipped);
//   2. while twisted pairs and untwisted bands coexist, an untwisted arrow
//      next to a pair is pushed into it, which makes its own band twisted,
//      and that band is collected as in 1 (pushing the pair apart instead
//      would just undo itself);
//   3. an orientable word is gathered into interleaved quadruples x y x y
//      by draining the three spans between the ends of an interleaved band
//      couple, then the four signs are corrected by slides within the block;
//   4. a twisted pair with two minus signs cannot change sign by slides and
//      rotations alone; a created helper pair walks around it and cancels,
//      leaving the pair positive.
class Normalizer {
public:
  Normalizer(const SurfaceWord& w, std::size_t budget) : cur_(w), budget_(budget) {
    trace_.initial = w;
  }

  NormalizeResult run() {
    validate(cur_);
    if (boundary_components(cur_) != 1)
      throw validation_error("normal form needs a word with exactly one boundary circle");
    std::set<std::string> seen;
    while (!is_canonical(cur_)) {
      if (!seen.insert(cur_.str()).second) {
        fallback();
        break;
      }
      if (collect_twisted()) continue;
      if (absorb_into_pair()) continue;
      if (collect_torus_block()) continue;
      if (flip_negative_pair()) continue;
      fallback();
      break;
    }
    trace_.final_word = cur_;
    return {cur_, trace_};
  }

private:
  void emit(const SurfaceMove& m) {
    if (trace_.moves.size() >= budget_)
      throw budget_error("normalization exceeded its move budget", trace_.moves.size());
    cur_ = apply_move(cur_, m);
    trace_.moves.push_back(m);
  }

  std::vector<std::string> labels_in_order() const {
    std::vector<std::string> ls;
    std::set<std::string> seen;
    for (const auto& t : cur_.tokens())
      if (seen.insert(t.label).second) ls.push_back(t.label);
    return ls;
  }

  // Swallow every arrow between the two ends of the twisted band `label`.
  void collect(const std::string& label) {
    for (;;) {
      auto [p, q] = occurrences(cur_, label);
      if (q == p + 1) return;
      emit({SurfaceMoveKind::slide_t, q - 1, label});
    }
  }

  // Step 1.  Prefers the band whose second end comes first.
  bool collect_twisted() {
    std::optional<std::string> pick;
    std::size_t best_q = cur_.size();
    for (const auto& l : labels_in_order()) {
      if (!is_twisted(cur_, l)) continue;
      auto [p, q] = occurrences(cur_, l);
      if (q == p + 1) continue;
      if (q < best_q) {
        best_q = q;
        pick = l;
      }
    }
    if (!pick) return false;
    collect(*pick);
    return true;
  }

  // Step 2.  All twisted bands are pairs here.
  bool absorb_into_pair() {
    bool any_untwisted = false;
    for (const auto& l : labels_in_order()) any_untwisted = any_untwisted || !is_twisted(cur_, l);
    if (!any_untwisted) return false;
    for (std::size_t p = 0; p + 1 < cur_.size(); ++p) {
      if (cur_[p].label != cur_[p + 1].label) continue;
      if (cur_[p].sign != cur_[p + 1].sign) continue;
      const std::string pair = cur_[p].label;
      if (p > 0 && !is_twisted(cur_, cur_[p - 1].label)) {
        std::string mover = cur_[p - 1].label;
        emit({SurfaceMoveKind::slide_t, p - 1, pair});
        collect(mover);
        return true;
      }
      if (p + 2 < cur_.size() && !is_twisted(cur_, cur_[p + 2].label)) {
        std::string mover = cur_[p + 2].label;
        emit({SurfaceMoveKind::slide_t_inv, p + 2, pair});
        collect(mover);
        return true;
      }
    }
    return false;
  }

  // Step 3, for fully orientable words.
  bool collect_torus_block() {
    for (const auto& l : labels_in_order())
      if (is_twisted(cur_, l)) return false;
    std::size_t pos = 0;
    while (pos + 3 < cur_.size()) {
      const std::string x = cur_[pos].label;
      const std::string y = cur_[pos + 1].label;
      bool block = x != y && cur_[pos].sign == 1 && cur_[pos + 1].sign == 1 &&
                   cur_[pos + 2].label == x && cur_[pos + 3].label == y;
      if (block) {
        pos += 4;
        continue;
      }
      // Find an arrow inside x's span whose partner sits outside.  A word
      // with one boundary circle always has one.
      auto [a1, a2] = occurrences(cur_, x);
      std::optional<std::string> inter;
      for (std::size_t i = a1 + 1; i < a2 && !inter; ++i) {
        auto [p, q] = occurrences(cur_, cur_[i].label);
        if (p < a1 || q > a2) inter = cur_[i].label;
      }
      if (!inter) return false;
      gather_block(x, *inter);
      return true;
    }
    return false;
  }

  void gather_block(const std::string& x, const std::string& y) {
    // Invariant: occ1(x) < occ1(y) < occ2(x) < occ2(y).
    for (;;) { // span between occ1(y) and occ2(x) drains over x
      auto [a1, a2] = occurrences(cur_, x);
      auto [b1, b2] = occurrences(cur_, y);
      (void)a1; (void)b2;
      if (a2 <= b1 + 1) break;
      emit({SurfaceMoveKind::slide_u, a2 - 1, x});
    }
    for (;;) { // span between occ1(x) and occ1(y) drains over y
      auto [a1, a2] = occurrences(cur_, x);
      auto [b1, b2] = occurrences(cur_, y);
      (void)a2; (void)b2;
      if (b1 <= a1 + 1) break;
      emit({SurfaceMoveKind::slide_u, b1 - 1, y});
    }
    for (;;) { // span between occ2(x) and occ2(y) drains over x
      auto [a1, a2] = occurrences(cur_, x);
      auto [b1, b2] = occurrences(cur_, y);
      (void)a1; (void)b1;
      if (b2 <= a2 + 1) break;
      emit({SurfaceMoveKind::slide_u_inv, a2 + 1, x});
    }
    for (int round = 0; round < 4; ++round) {
      std::size_t p = std::min(occurrences(cur_, x).first, occurrences(cur_, y).first);
      int su = cur_[p].sign, sv = cur_[p + 1].sign;
      if (su == 1 && sv == 1) return;
      if (su == -1 && sv == 1) emit({SurfaceMoveKind::slide_u, p, cur_[p + 1].label});
      else emit({SurfaceMoveKind::slide_u_inv, p + 3, cur_[p].label});
    }
  }

  // Step 4.
  bool flip_negative_pair() {
    for (std::size_t p = 0; p + 1 < cur_.size(); ++p) {
      if (cur_[p].label != cur_[p + 1].label) continue;
      if (cur_[p].sign != -1 || cur_[p + 1].sign != -1) continue;
      const std::string x = cur_[p].label;
      std::string d;
      for (int k = 0;; ++k) {
        d = "n" + std::to_string(k);
        bool used = false;
        for (const auto& t : cur_.tokens()) used = used || t.label == d;
        if (!used) break;
      }
      emit({SurfaceMoveKind::create, p, d, 1});       // d+ d- x- x-
      emit({SurfaceMoveKind::slide_t, p + 1, x});     // d+ x- d+ x-
      emit({SurfaceMoveKind::slide_t, p + 1, d});     // x+ d+ d+ x-
      emit({SurfaceMoveKind::slide_t_inv, p + 3, d}); // x+ d+ x+ d+
      emit({SurfaceMoveKind::slide_t_inv, p + 1, x}); // x+ x+ d- d+
      emit({SurfaceMoveKind::cancel, 0, d});          // x+ x+
      return true;
    }
    return false;
  }

  // Last resort: bounded iterative-deepening search over all moves.  The
  // staged steps above are expected to finish on their own; this keeps the
  // procedure total either way.
  void fallback() {
    for (std::size_t depth = 1; depth <= 8; ++depth) {
      std::vector<SurfaceMove> path;
      std::set<std::string> on_path{cur_.str()};
      if (dfs(cur_, depth, path, on_path)) {
        for (const auto& m : path) emit(m);
        return;
      }
    }
    throw budget_error("normalization search gave up", trace_.moves.size());
  }

  bool dfs(const SurfaceWord& w, std::size_t depth, std::vector<SurfaceMove>& path,
           std::set<std::string>& on_path) {
    if (is_canonical(w)) return true;
    if (depth == 0) return false;
    if (++fallback_nodes_ + trace_.moves.size() >= budget_)
      throw budget_error("normalization exceeded its move budget", trace_.moves.size());
    for (const auto& m : applicable_moves(w, true)) {
      SurfaceWord next = apply_move(w, m);
      if (!on_path.insert(next.str()).second) continue;
      path.push_back(m);
      if (dfs(next, depth - 1, path, on_path)) return true;
      path.pop_back();
      on_path.erase(next.str());
    }
    return false;
  }

  SurfaceWord cur_;
  std::size_t budget_;
  std::size_t fallback_nodes_ = 0;
  MoveTrace trace_;
};

} // namespace detail

// Canonical form with a machine-checkable move trace.  The input must bound
// a single circle (a closed surface once capped).  The trace is empty when
// the word is already canonical.
inline NormalizeResult normalize(const SurfaceWord& w, std::size_t budget = 100000) {
  return detail::Normalizer(w, budget).run();
}

} // namespace hcalc
