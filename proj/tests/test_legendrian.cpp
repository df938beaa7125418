#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hcalc/legendrian.hpp"

using hcalc::FrontDiagram;
using hcalc::FrontEvent;
using hcalc::IntMatrix;

namespace {

FrontEvent Lc(std::size_t s) { return {FrontEvent::left_cusp, s}; }
FrontEvent Rc(std::size_t s) { return {FrontEvent::right_cusp, s}; }
FrontEvent X(std::size_t s) { return {FrontEvent::crossing, s}; }

const FrontDiagram unknot{{Lc(0), Rc(0)}, {}};
const FrontDiagram trefoil{{Lc(0), Lc(2), X(1), X(1), X(1), Rc(1), Rc(0)}, {}};
const FrontDiagram hopf{{Lc(0), Lc(1), X(0), X(2), Rc(1), Rc(0)}, {}};

} // namespace

TEST_CASE("front validation") {
  REQUIRE_NOTHROW(hcalc::validate(unknot));
  REQUIRE_NOTHROW(hcalc::validate(trefoil));
  REQUIRE_NOTHROW(hcalc::validate(hopf));
  // strands left open at the right edge
  REQUIRE_THROWS_AS(hcalc::validate({{Lc(0), Lc(0), Rc(0)}, {}}), hcalc::validation_error);
  // slots out of range
  REQUIRE_THROWS_AS(hcalc::validate({{Lc(0), Rc(1)}, {}}), hcalc::validation_error);
  REQUIRE_THROWS_AS(hcalc::validate({{Lc(1)}, {}}), hcalc::validation_error);
  REQUIRE_THROWS_AS(hcalc::validate({{Lc(0), X(1), Rc(0)}, {}}), hcalc::validation_error);
  REQUIRE_THROWS_AS(hcalc::validate({{Rc(0)}, {}}), hcalc::validation_error);
  // orientation flags must match the component count
  REQUIRE_THROWS_AS(hcalc::validate({{Lc(0), Rc(0)}, {true, false}}), hcalc::validation_error);
  REQUIRE_NOTHROW(hcalc::validate({{Lc(0), Rc(0)}, {true}}));
}

TEST_CASE("component counting") {
  REQUIRE(hcalc::component_count(unknot) == 1);
  REQUIRE(hcalc::component_count(trefoil) == 1);
  REQUIRE(hcalc::component_count(hopf) == 2);
  FrontDiagram two_far{{Lc(0), Rc(0), Lc(0), Rc(0)}, {}};
  REQUIRE(hcalc::component_count(two_far) == 2);
}

TEST_CASE("classical invariants of the standard fronts") {
  {
    hcalc::FrontInvariants inv = hcalc::classical_invariants(unknot);
    REQUIRE(inv.components.size() == 1);
    REQUIRE(inv.components[0].tb == -1);
    REQUIRE(inv.components[0].rot == 0);
  }
  {
    hcalc::FrontInvariants inv = hcalc::classical_invariants(trefoil);
    REQUIRE(inv.components.size() == 1);
    REQUIRE(inv.components[0].tb == 1);
    REQUIRE(inv.components[0].rot == 0);
  }
  {
    hcalc::FrontInvariants inv = hcalc::classical_invariants(hopf);
    REQUIRE(inv.components.size() == 2);
    REQUIRE(inv.components[0].tb == -1);
    REQUIRE(inv.components[1].tb == -1);
    REQUIRE(inv.components[0].rot == 0);
    REQUIRE(inv.components[1].rot == 0);
    REQUIRE(inv.linking == IntMatrix{{0, -1}, {-1, 0}});
  }
  // walking a component backwards flips nothing here (rot stays 0) but the
  // flag count is honored; rot negation is tested through stabilization
  FrontDiagram flipped = unknot;
  flipped.reversed = {true};
  REQUIRE(hcalc::classical_invariants(flipped).components[0].rot == 0);
}

TEST_CASE("stabilization trades tb for rot") {
  FrontDiagram plus = hcalc::stabilize(unknot, 1);
  {
    hcalc::FrontInvariants inv = hcalc::classical_invariants(plus);
    REQUIRE(inv.components[0].tb == -2);
    REQUIRE(inv.components[0].rot == 1);
  }
  FrontDiagram minus = hcalc::stabilize(unknot, -1);
  {
    hcalc::FrontInvariants inv = hcalc::classical_invariants(minus);
    REQUIRE(inv.components[0].tb == -2);
    REQUIRE(inv.components[0].rot == -1);
  }
  // reversing the component negates rot
  FrontDiagram plus_rev = plus;
  plus_rev.reversed = {true};
  REQUIRE(hcalc::classical_invariants(plus_rev).components[0].rot == -1);

  REQUIRE_THROWS_AS(hcalc::stabilize(unknot, 0), hcalc::move_error);
  REQUIRE_THROWS_AS(hcalc::stabilize(unknot, 1, 3), hcalc::move_error);

  // repeated random stabilizations on random components
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 40; ++trial) {
    FrontDiagram f = trial % 2 ? hopf : trefoil;
    std::vector<hcalc::FrontComponent> cur = hcalc::classical_invariants(f).components;
    for (int step = 0; step < 5; ++step) {
      std::uniform_int_distribution<std::size_t> pick(0, cur.size() - 1);
      std::size_t c = pick(rng);
      int sign = rng() % 2 ? 1 : -1;
      f = hcalc::stabilize(f, sign, c);
      std::vector<hcalc::FrontComponent> next = hcalc::classical_invariants(f).components;
      for (std::size_t i = 0; i < cur.size(); ++i) {
        if (i == c) {
          REQUIRE(next[i].tb == cur[i].tb - 1);
          REQUIRE(next[i].rot == cur[i].rot + sign);
        } else {
          REQUIRE(next[i].tb == cur[i].tb);
          REQUIRE(next[i].rot == cur[i].rot);
        }
      }
      cur = next;
    }
  }
}

TEST_CASE("tb and rot always have opposite parities") {
  std::mt19937_64 rng(4004);
  for (int trial = 0; trial < 60; ++trial) {
    FrontDiagram f = trial % 3 == 0 ? unknot : (trial % 3 == 1 ? trefoil : hopf);
    for (int step = 0; step < trial % 4; ++step) f = hcalc::stabilize(f, rng() % 2 ? 1 : -1);
    for (const auto& c : hcalc::classical_invariants(f).components)
      REQUIRE((c.tb + c.rot) % 2 != 0);
  }
}

TEST_CASE("framed link diagrams from fronts") {
  {
    hcalc::KirbyDiagram d = hcalc::to_kirby({unknot});
    REQUIRE(d.one_handles == 0);
    REQUIRE(d.linking == IntMatrix{{-2}});
  }
  REQUIRE(hcalc::to_kirby({trefoil}).linking == IntMatrix{{0}});
  REQUIRE(hcalc::to_kirby({hopf}).linking == IntMatrix{{-2, -1}, {-1, -2}});
  // separate fronts stay unlinked
  hcalc::KirbyDiagram two = hcalc::to_kirby({unknot, unknot});
  REQUIRE(two.linking == IntMatrix{{-2, 0}, {0, -2}});
  REQUIRE(hcalc::boundary_h1(hcalc::to_kirby({trefoil})).str() == "Z");
}
