#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hcalc/kirby.hpp"

namespace hcalc {

// A 5-manifold presented as the boundary of (page) x D^2, i.e. the open
// book with identity monodromy whose page is the 4-manifold of the diagram:
// (W x S^1) glued to (boundary W) x D^2 along their common torus bundle.
struct OpenBook {
  KirbyDiagram page;
};

struct FiveManifoldHomology {
  std::array<AbelianGroup, 6> h;
  // Parity of the framing on each 2-handle class of the page; odd entries
  // obstruct a spin structure on the total space.
  std::optional<std::vector<bool>> odd_framing;
};

// Homology of the open book via the decomposition above.  Supported pages:
// only 1-handles, or only 2-handles.
inline FiveManifoldHomology five_invariants(const OpenBook& ob) {
  validate(ob.page);
  const std::size_t g = ob.page.one_handles, k = ob.page.labels.size();
  if (g > 0 && k > 0)
    throw unsupported_error("pages mixing 1- and 2-handles are not supported");
  FiveManifoldHomology out;
  out.h[0] = AbelianGroup::free(1);
  out.h[5] = AbelianGroup::free(1);
  if (k == 0) {
    // Page is a 1-handlebody; the total space fibers nicely and only the
    // wedge of g circles contributes.
    out.h[1] = AbelianGroup::free(g);
    out.h[2] = AbelianGroup();
    out.h[3] = AbelianGroup();
    out.h[4] = AbelianGroup::free(g);
    return out;
  }
  const IntMatrix& L = ob.page.linking;
  std::vector<std::vector<Int>> ker = kernel_basis(L);
  const std::size_t nu = ker.size();

  // Gluing W x S^1 to (bd W) x D^2: the Mayer-Vietoris ladder collapses to
  // a presentation of H2 by the kernel classes stacked over an identity
  // block, and H3 pairs with H2 while Ext eats the torsion of H1.
  out.h[1] = AbelianGroup();
  IntMatrix m2(k + nu, nu);
  for (std::size_t j = 0; j < nu; ++j) {
    for (std::size_t i = 0; i < k; ++i) m2(i, j) = ker[j][i];
    m2(k + j, j) = 1;
  }
  out.h[2] = cokernel(m2);
  out.h[3] = AbelianGroup(out.h[2].free_rank(), out.h[1].torsion());
  out.h[4] = AbelianGroup::free(out.h[1].free_rank());
  std::vector<bool> parity(k);
  for (std::size_t i = 0; i < k; ++i) parity[i] = L(i, i) % 2 != 0;
  out.odd_framing = parity;

  // The alternating sum must vanish for a closed odd-dimensional manifold.
  long chi = 0;
  for (std::size_t i = 0; i < 6; ++i)
    chi += (i % 2 == 0 ? 1 : -1) * (long)out.h[i].free_rank();
  if (chi != 0) throw std::logic_error("euler characteristic of a closed 5-manifold is not 0");
  return out;
}

// Recognize a few standard total spaces from the page shape.
inline std::optional<std::string> identify_known(const OpenBook& ob) {
  validate(ob.page);
  const std::size_t g = ob.page.one_handles, k = ob.page.labels.size();
  if (g == 0 && k == 0) return "S5";
  if (g == 1 && k == 0) return "S1xS4";
  if (g == 0 && k == 1) {
    if (ob.page.linking(0, 0) % 2 == 0) return "S2xS3";
    return "S2x~S3";
  }
  return std::nullopt;
}

} // namespace hcalc
