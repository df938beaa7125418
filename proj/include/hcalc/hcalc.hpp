#pragma once

// Umbrella header.

#include "hcalc/abelian_group.hpp"
#include "hcalc/congruence.hpp"
#include "hcalc/errors.hpp"
#include "hcalc/heegaard.hpp"
#include "hcalc/int_matrix.hpp"
#include "hcalc/kirby.hpp"
#include "hcalc/legendrian.hpp"
#include "hcalc/normalize.hpp"
#include "hcalc/openbook.hpp"
#include "hcalc/script.hpp"
#include "hcalc/signature.hpp"
#include "hcalc/smith.hpp"
#include "hcalc/surface.hpp"
#include "hcalc/surface_moves.hpp"
#include "hcalc/trace_io.hpp"
#include "hcalc/version.hpp"
