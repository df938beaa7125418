#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hcalc/abelian_group.hpp"
#include "hcalc/congruence.hpp"
#include "hcalc/int_matrix.hpp"
#include "hcalc/signature.hpp"
#include "hcalc/smith.hpp"

namespace hcalc {

// A handle picture for a compact 4-manifold: some 1-handles, and 2-handles
// attached along framed circles.  Only linking data is kept: `linking` is
// symmetric with the framings on its diagonal; `incidence` counts signed
// passes of each 2-handle circle through each 1-handle.
struct KirbyDiagram {
  std::size_t one_handles = 0;
  std::vector<std::string> labels; // one per 2-handle
  IntMatrix linking;               // k x k
  IntMatrix incidence;             // one_handles x k
};

inline void validate(const KirbyDiagram& d) {
  const std::size_t k = d.labels.size();
  if (d.linking.rows() != k || d.linking.cols() != k)
    throw validation_error("linking matrix must be " + std::to_string(k) + "x" +
                           std::to_string(k));
  if (!d.linking.is_symmetric()) throw validation_error("linking matrix must be symmetric");
  if (d.incidence.rows() != d.one_handles || d.incidence.cols() != k)
    throw validation_error("incidence matrix must be " + std::to_string(d.one_handles) + "x" +
                           std::to_string(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i + 1; j < k; ++j)
      if (d.labels[i] == d.labels[j])
        throw validation_error("duplicate 2-handle label '" + d.labels[i] + "'");
}

inline KirbyDiagram make_kirby(std::size_t one_handles, IntMatrix linking, IntMatrix incidence) {
  KirbyDiagram d;
  d.one_handles = one_handles;
  d.labels.resize(linking.rows());
  for (std::size_t i = 0; i < d.labels.size(); ++i) d.labels[i] = "k" + std::to_string(i + 1);
  d.linking = std::move(linking);
  if (incidence.rows() == 0 && incidence.cols() == 0)
    incidence = IntMatrix(one_handles, d.labels.size());
  d.incidence = std::move(incidence);
  validate(d);
  return d;
}

// The pairing on the 2-handle classes.  Only meaningful without 1-handles.
inline IntMatrix intersection_form(const KirbyDiagram& d) {
  validate(d);
  if (d.one_handles != 0)
    throw validation_error("intersection form needs a diagram without 1-handles");
  return d.linking;
}

// Handle i slides over handle j (0-based): circle i is replaced by a band
// sum with a pushoff of circle j, eps tells the direction.  In matrix terms
// L <- E^T L E and incidence <- incidence * E with E = I + eps * e_j e_i^T.
inline KirbyDiagram handle_slide(const KirbyDiagram& d, std::size_t i, std::size_t j, int eps) {
  validate(d);
  const std::size_t k = d.labels.size();
  if (i >= k || j >= k || i == j) throw move_error("bad handle slide indices");
  if (eps != 1 && eps != -1) throw move_error("handle slide needs eps = +-1");
  KirbyDiagram out = d;
  // E^T L E computed as row/col updates.
  out.linking.add_col(i, j, eps);
  out.linking.add_row(i, j, eps);
  out.incidence.add_col(i, j, eps);
  return out;
}

// New 2-handle, unlinked from everything, framing eps.
inline KirbyDiagram blow_up(const KirbyDiagram& d, int eps) {
  validate(d);
  if (eps != 1 && eps != -1) throw move_error("blow up needs framing +-1");
  KirbyDiagram out = d;
  std::string label;
  for (int n = 1;; ++n) {
    label = "e" + std::to_string(n);
    bool used = false;
    for (const auto& l : out.labels) used = used || l == label;
    if (!used) break;
  }
  out.labels.push_back(label);
  out.linking = d.linking.with_diagonal_entry(eps);
  IntMatrix inc(d.one_handles, d.labels.size() + 1);
  for (std::size_t r = 0; r < d.incidence.rows(); ++r)
    for (std::size_t c = 0; c < d.incidence.cols(); ++c) inc(r, c) = d.incidence(r, c);
  out.incidence = std::move(inc);
  return out;
}

// Remove a (+-1)-framed 2-handle.  Everything linking it is first slid off;
// the needed slides happen automatically.  Fails if the circle runs through
// a 1-handle, or keeps linking after the slides.
inline KirbyDiagram blow_down(const KirbyDiagram& d, std::size_t i) {
  validate(d);
  const std::size_t k = d.labels.size();
  if (i >= k) throw move_error("bad blow down index");
  if (d.linking(i, i) != 1 && d.linking(i, i) != -1)
    throw move_error("blow down needs framing +-1, handle '" + d.labels[i] + "' has framing " +
                     d.linking(i, i).str());
  KirbyDiagram cur = d;
  for (std::size_t j = 0; j < k; ++j) {
    if (j == i) continue;
    while (cur.linking(j, i) != 0) {
      int eps = -sgn(cur.linking(j, i)) * sgn(cur.linking(i, i));
      cur = handle_slide(cur, j, i, eps);
    }
  }
  for (std::size_t r = 0; r < cur.incidence.rows(); ++r)
    if (cur.incidence(r, i) != 0)
      throw move_error("handle '" + d.labels[i] + "' runs through a 1-handle, cannot blow down");
  KirbyDiagram out;
  out.one_handles = cur.one_handles;
  for (std::size_t j = 0; j < k; ++j)
    if (j != i) out.labels.push_back(cur.labels[j]);
  out.linking = cur.linking.without_row_col(i);
  IntMatrix inc(cur.one_handles, k - 1);
  for (std::size_t r = 0; r < inc.rows(); ++r)
    for (std::size_t j = 0, c = 0; j < k; ++j) {
      if (j == i) continue;
      inc(r, c++) = cur.incidence(r, j);
    }
  out.incidence = std::move(inc);
  validate(out);
  return out;
}

// H1 of the boundary 3-manifold: generators are the 1-handle circles and
// meridians of the 2-handle circles; relations pair them through incidence
// and linking.
inline AbelianGroup boundary_h1(const KirbyDiagram& d) {
  validate(d);
  const std::size_t g = d.one_handles, k = d.labels.size();
  IntMatrix m(g + k, g + k);
  for (std::size_t r = 0; r < g; ++r)
    for (std::size_t c = 0; c < k; ++c) {
      m(r, g + c) = d.incidence(r, c);
      m(g + c, r) = d.incidence(r, c);
    }
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < k; ++c) m(g + r, g + c) = d.linking(r, c);
  return cokernel(m);
}

class not_closable : public std::runtime_error {
public:
  explicit not_closable(const AbelianGroup& h1b)
      : std::runtime_error("boundary has torsion " + h1b.str() +
                           ", it bounds no handle-free closure"),
        h1_(h1b) {}
  const AbelianGroup& boundary_h1() const { return h1_; }

private:
  AbelianGroup h1_;
};

struct ClosedInvariants {
  long euler = 0;
  long signature = 0;
  std::optional<bool> even; // unknown with 1-handles present
  std::size_t three_handles = 0;
};

// Invariants of the closed manifold obtained by capping the boundary with
// 3- and 4-handles.  The boundary must be a connected sum of S1 x S2's,
// which forces H1 of the boundary to be free; its rank is the number of
// 3-handles needed.
inline ClosedInvariants closed_invariants(const KirbyDiagram& d) {
  validate(d);
  AbelianGroup h1b = boundary_h1(d);
  if (!h1b.torsion().empty()) throw not_closable(h1b);
  ClosedInvariants inv;
  inv.three_handles = h1b.free_rank();
  inv.euler = 2 - (long)d.one_handles + (long)d.labels.size() - (long)inv.three_handles;
  // The intersection pairing lives on the classes of closed surfaces, i.e.
  // combinations of 2-handles that run through no 1-handle.
  std::vector<std::vector<Int>> ker = kernel_basis(d.incidence);
  IntMatrix kb(d.labels.size(), ker.size());
  for (std::size_t j = 0; j < ker.size(); ++j)
    for (std::size_t i = 0; i < d.labels.size(); ++i) kb(i, j) = ker[j][i];
  inv.signature = signature(kb.transpose() * d.linking * kb);
  if (d.one_handles == 0) {
    bool even = true;
    for (std::size_t i = 0; i < d.labels.size(); ++i)
      if (d.linking(i, i) % 2 != 0) even = false;
    inv.even = even;
  }
  return inv;
}

// Certificate that the hyperbolic 2x2 block plus a (-1) summand is
// congruent to the odd diagonal form of the same rank and signature.
inline std::optional<CongruenceCert> hyperbolic_diagonalization_cert(std::size_t max_steps = 100000) {
  IntMatrix h{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}};
  IntMatrix diag{{1, 0, 0}, {0, -1, 0}, {0, 0, -1}};
  return congruence_search(h, diag, max_steps);
}

} // namespace hcalc
