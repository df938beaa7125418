#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hcalc/int_matrix.hpp"
#include "hcalc/signature.hpp"
#include "hcalc/smith.hpp"

namespace hcalc {

// Moves generating unimodular congruence plus stabilization by (+-1) blocks.
// All of them act on symmetric matrices and are invertible.
enum class CongruenceMoveKind {
  add,      // row i += eps * row j, same on columns
  swap_rc,  // exchange rows i and j, same on columns
  negate,   // flip the sign of row i and column i
  append,   // extend by a new diagonal entry eps
  remove,   // delete row/col i; entry must be +-1 and isolated
};

struct CongruenceMove {
  CongruenceMoveKind kind;
  std::size_t i = 0;
  std::size_t j = 0;
  int eps = 1;
};

using CongruenceCert = std::vector<CongruenceMove>;

inline IntMatrix apply_congruence_move(const IntMatrix& m, const CongruenceMove& mv) {
  if (!m.is_symmetric()) throw move_error("congruence move on a non-symmetric matrix");
  const std::size_t n = m.rows();
  IntMatrix out = m;
  switch (mv.kind) {
    case CongruenceMoveKind::add:
      if (mv.i >= n || mv.j >= n || mv.i == mv.j) throw move_error("bad add indices");
      if (mv.eps != 1 && mv.eps != -1) throw move_error("add needs eps = +-1");
      out.add_row(mv.i, mv.j, mv.eps);
      out.add_col(mv.i, mv.j, mv.eps);
      return out;
    case CongruenceMoveKind::swap_rc:
      if (mv.i >= n || mv.j >= n || mv.i == mv.j) throw move_error("bad swap indices");
      out.swap_rows(mv.i, mv.j);
      out.swap_cols(mv.i, mv.j);
      return out;
    case CongruenceMoveKind::negate:
      if (mv.i >= n) throw move_error("bad negate index");
      out.negate_row(mv.i);
      out.negate_col(mv.i);
      return out;
    case CongruenceMoveKind::append:
      if (mv.eps != 1 && mv.eps != -1) throw move_error("append needs eps = +-1");
      return m.with_diagonal_entry(mv.eps);
    case CongruenceMoveKind::remove: {
      if (mv.i >= n) throw move_error("bad remove index");
      if (m(mv.i, mv.i) != 1 && m(mv.i, mv.i) != -1)
        throw move_error("remove needs a +-1 diagonal entry");
      for (std::size_t j = 0; j < n; ++j)
        if (j != mv.i && m(mv.i, j) != 0)
          throw move_error("remove needs an isolated block, row " +
                           std::to_string(mv.i) + " is not clear");
      return m.without_row_col(mv.i);
    }
  }
  throw move_error("unknown congruence move");
}

inline IntMatrix replay_congruence(const IntMatrix& start, const CongruenceCert& cert) {
  IntMatrix m = start;
  for (const auto& mv : cert) m = apply_congruence_move(m, mv);
  return m;
}

inline CongruenceMove invert_congruence_move(const IntMatrix& before, const CongruenceMove& mv) {
  switch (mv.kind) {
    case CongruenceMoveKind::add: return {CongruenceMoveKind::add, mv.i, mv.j, -mv.eps};
    case CongruenceMoveKind::swap_rc: return mv;
    case CongruenceMoveKind::negate: return mv;
    case CongruenceMoveKind::append:
      return {CongruenceMoveKind::remove, before.rows(), 0, mv.eps};
    case CongruenceMoveKind::remove: {
      // Only invertible directly when the block sits at the end.
      if (mv.i + 1 != before.rows()) throw move_error("cannot invert interior remove");
      int eps = before(mv.i, mv.i) > 0 ? 1 : -1;
      return {CongruenceMoveKind::append, 0, 0, eps};
    }
  }
  throw move_error("unknown congruence move");
}

// Everything congruence_search checks before searching.  Two symmetric forms
// can only be related by the moves above if these agree.
struct CongruenceInvariants {
  std::size_t rank_ = 0;
  long signature_ = 0;
  bool odd = false; // some diagonal entry is odd

  static CongruenceInvariants of(const IntMatrix& m) {
    CongruenceInvariants inv;
    inv.rank_ = rank(m);
    inv.signature_ = signature(m);
    inv.odd = false;
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (m(i, i) % 2 != 0) inv.odd = true;
    return inv;
  }
};

enum class SearchOutcome {
  found,     // certificate produced
  refused,   // invariants differ, no certificate can exist
  exhausted, // budget ran out before meeting in the middle
};

struct CongruenceSearchResult {
  SearchOutcome outcome;
  std::optional<CongruenceCert> cert;
};

namespace detail {

inline std::vector<CongruenceMove> congruence_move_menu(std::size_t n) {
  std::vector<CongruenceMove> menu;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      menu.push_back({CongruenceMoveKind::add, i, j, 1});
      menu.push_back({CongruenceMoveKind::add, i, j, -1});
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      menu.push_back({CongruenceMoveKind::swap_rc, i, j});
  for (std::size_t i = 0; i < n; ++i)
    menu.push_back({CongruenceMoveKind::negate, i});
  return menu;
}

} // namespace detail

// Bidirectional breadth-first search through the congruence moves.
// max_steps bounds the total number of move applications; a fixed budget
// yields a fixed certificate, the expansion order is deterministic.
inline CongruenceSearchResult congruence_search_ex(const IntMatrix& a_in, const IntMatrix& b_in,
                                                   std::size_t max_steps) {
  if (!a_in.is_symmetric() || !b_in.is_symmetric())
    throw validation_error("congruence search needs symmetric matrices");

  IntMatrix a = a_in, b = b_in;
  CongruenceCert prefix; // applied to a before the same-dimension search
  CongruenceCert suffix; // applied after it

  // Unequal sizes are bridged by appending (+-1) blocks to the smaller side.
  // The block signs are forced by the signatures.
  const bool a_small = a.rows() <= b.rows();
  IntMatrix& small = a_small ? a : b;
  const IntMatrix& big = a_small ? b : a;
  long diff = (long)big.rows() - (long)small.rows();
  if (diff > 0) {
    long dsig = signature(big) - signature(small);
    if ((diff + dsig) % 2 != 0 || dsig > diff || dsig < -diff)
      return {SearchOutcome::refused, std::nullopt};
    long plus = (diff + dsig) / 2, minus = diff - plus;
    std::vector<CongruenceMove> appends;
    for (long k = 0; k < plus; ++k) appends.push_back({CongruenceMoveKind::append, 0, 0, 1});
    for (long k = 0; k < minus; ++k) appends.push_back({CongruenceMoveKind::append, 0, 0, -1});
    if (a_small) {
      for (const auto& mv : appends) { prefix.push_back(mv); a = apply_congruence_move(a, mv); }
    } else {
      // Blocks are appended to b; the certificate instead removes them
      // from the search endpoint, last index first.
      for (const auto& mv : appends) b = apply_congruence_move(b, mv);
      for (long k = (long)b.rows() - 1; k >= (long)b.rows() - diff; --k)
        suffix.push_back({CongruenceMoveKind::remove, (std::size_t)k, 0, 1});
    }
  }

  CongruenceInvariants ia = CongruenceInvariants::of(a), ib = CongruenceInvariants::of(b);
  if (ia.rank_ != ib.rank_ || ia.signature_ != ib.signature_ || ia.odd != ib.odd ||
      a.determinant() != b.determinant())
    return {SearchOutcome::refused, std::nullopt};

  auto finish = [&](CongruenceCert mid) {
    CongruenceCert cert = prefix;
    cert.insert(cert.end(), mid.begin(), mid.end());
    cert.insert(cert.end(), suffix.begin(), suffix.end());
    return CongruenceSearchResult{SearchOutcome::found, std::move(cert)};
  };

  if (a == b) return finish({});

  const std::vector<CongruenceMove> menu = detail::congruence_move_menu(a.rows());
  using Seen = std::map<IntMatrix, CongruenceCert>;
  Seen seen_a{{a, {}}}, seen_b{{b, {}}};
  std::vector<IntMatrix> frontier_a{a}, frontier_b{b};
  std::size_t spent = 0;

  auto stitch = [&](const CongruenceCert& from_a, const IntMatrix& meet,
                    const CongruenceCert& from_b) {
    CongruenceCert mid = from_a;
    // Walk the b-side path backwards, inverting each move.
    std::vector<IntMatrix> states{b};
    for (const auto& mv : from_b) states.push_back(apply_congruence_move(states.back(), mv));
    (void)meet;
    for (std::size_t k = from_b.size(); k-- > 0;)
      mid.push_back(invert_congruence_move(states[k], from_b[k]));
    return finish(std::move(mid));
  };

  while (!frontier_a.empty() && !frontier_b.empty()) {
    bool expand_a = frontier_a.size() <= frontier_b.size();
    auto& frontier = expand_a ? frontier_a : frontier_b;
    auto& seen = expand_a ? seen_a : seen_b;
    auto& other = expand_a ? seen_b : seen_a;
    std::vector<IntMatrix> next;
    for (const IntMatrix& s : frontier) {
      const CongruenceCert& path = seen.at(s);
      for (const auto& mv : menu) {
        if (++spent > max_steps) return {SearchOutcome::exhausted, std::nullopt};
        IntMatrix t = apply_congruence_move(s, mv);
        if (seen.count(t)) continue;
        CongruenceCert tp = path;
        tp.push_back(mv);
        auto hit = other.find(t);
        if (hit != other.end()) {
          if (expand_a) return stitch(tp, t, hit->second);
          return stitch(hit->second, t, tp);
        }
        seen.emplace(t, std::move(tp));
        next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  return {SearchOutcome::exhausted, std::nullopt};
}

inline std::optional<CongruenceCert> congruence_search(const IntMatrix& a, const IntMatrix& b,
                                                       std::size_t max_steps = 100000) {
  return congruence_search_ex(a, b, max_steps).cert;
}

} // namespace hcalc
