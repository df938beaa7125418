#pragma once

#include <cstddef>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "hcalc/int_matrix.hpp"
#include "hcalc/kirby.hpp"

namespace hcalc {

// A front is read left to right as a sequence of events on a stack of
// horizontal strands; slot 0 is the topmost strand.
//   left_cusp(s):  a new strand pair opens at slots s, s+1
//   right_cusp(s): the strands at slots s, s+1 join and close
//   crossing(s):   the strands at slots s, s+1 cross; the one coming from
//                  slot s descends and passes in front
struct FrontEvent {
  enum Kind { left_cusp, right_cusp, crossing } kind;
  std::size_t slot = 0;
  bool operator==(const FrontEvent& o) const { return kind == o.kind && slot == o.slot; }
};

struct FrontDiagram {
  std::vector<FrontEvent> events;
  // One flag per component (sorted by first appearance); true walks the
  // component the other way around, negating its rotation number.
  std::vector<bool> reversed;
};

namespace detail {

struct FrontTrace {
  std::size_t strands = 0;                    // total strands created
  std::vector<std::size_t> left_partner;      // other strand of the opening cusp
  std::vector<std::size_t> right_partner;     // other strand of the closing cusp
  struct Cusp { std::size_t upper, lower; bool left; };
  std::vector<Cusp> cusps;
  struct Cross { std::size_t upper, lower; };
  std::vector<Cross> crossings;
  std::vector<std::size_t> component;         // strand -> component index
  std::size_t component_count = 0;
  std::vector<int> dir;                       // +1 rightward, -1 leftward
  // Stack of strand ids before each event (and one final state).
  std::vector<std::vector<std::size_t>> stacks;
};

inline FrontTrace trace_front(const FrontDiagram& f) {
  FrontTrace t;
  std::vector<std::size_t> stack;
  t.left_partner.assign(0, 0);
  for (std::size_t e = 0; e < f.events.size(); ++e) {
    t.stacks.push_back(stack);
    const FrontEvent& ev = f.events[e];
    switch (ev.kind) {
      case FrontEvent::left_cusp: {
        if (ev.slot > stack.size())
          throw validation_error("event " + std::to_string(e) + ": cusp slot " +
                                 std::to_string(ev.slot) + " out of range");
        std::size_t a = t.strands++, b = t.strands++;
        t.left_partner.resize(t.strands, 0);
        t.right_partner.resize(t.strands, 0);
        t.left_partner[a] = b;
        t.left_partner[b] = a;
        t.cusps.push_back({a, b, true});
        stack.insert(stack.begin() + (long)ev.slot, {a, b});
        break;
      }
      case FrontEvent::right_cusp: {
        if (stack.size() < 2 || ev.slot > stack.size() - 2)
          throw validation_error("event " + std::to_string(e) + ": cusp slot " +
                                 std::to_string(ev.slot) + " out of range");
        std::size_t a = stack[ev.slot], b = stack[ev.slot + 1];
        t.right_partner[a] = b;
        t.right_partner[b] = a;
        t.cusps.push_back({a, b, false});
        stack.erase(stack.begin() + (long)ev.slot, stack.begin() + (long)ev.slot + 2);
        break;
      }
      case FrontEvent::crossing: {
        if (stack.size() < 2 || ev.slot > stack.size() - 2)
          throw validation_error("event " + std::to_string(e) + ": crossing slot " +
                                 std::to_string(ev.slot) + " out of range");
        t.crossings.push_back({stack[ev.slot], stack[ev.slot + 1]});
        std::swap(stack[ev.slot], stack[ev.slot + 1]);
        break;
      }
    }
  }
  t.stacks.push_back(stack);
  if (!stack.empty())
    throw validation_error(std::to_string(stack.size()) + " strands stay open");

  // Components: strands linked by shared cusps.
  t.component.assign(t.strands, (std::size_t)-1);
  t.dir.assign(t.strands, 0);
  for (std::size_t s = 0; s < t.strands; ++s) {
    if (t.component[s] != (std::size_t)-1) continue;
    std::size_t c = t.component_count++;
    // Walk the closed curve: rightward along s, turn at each cusp.
    std::size_t at = s;
    int d = 1;
    do {
      t.component[at] = c;
      t.dir[at] = d;
      at = d > 0 ? t.right_partner[at] : t.left_partner[at];
      d = -d;
    } while (at != s);
  }
  if (!f.reversed.empty()) {
    if (f.reversed.size() != t.component_count)
      throw validation_error("need one orientation flag per component, got " +
                             std::to_string(f.reversed.size()) + " for " +
                             std::to_string(t.component_count));
    for (std::size_t s = 0; s < t.strands; ++s)
      if (f.reversed[t.component[s]]) t.dir[s] = -t.dir[s];
  }
  return t;
}

// Tangent directions: a strand leaving slot s of a crossing descends, the
// other ascends.  The sign is the determinant of (under, over) directions.
inline int crossing_sign(const FrontTrace& t, const FrontTrace::Cross& x) {
  int ux = t.dir[x.upper], lx = t.dir[x.lower];
  // upper: descending; tangent (ux, -ux).  lower: ascending; tangent (lx, lx).
  long det = (long)lx * (long)(-ux) - (long)lx * (long)ux;
  return det > 0 ? 1 : -1;
}

} // namespace detail

inline void validate(const FrontDiagram& f) { (void)detail::trace_front(f); }

inline std::size_t component_count(const FrontDiagram& f) {
  return detail::trace_front(f).component_count;
}

struct FrontComponent {
  long tb = 0;
  long rot = 0;
};

struct FrontInvariants {
  std::vector<FrontComponent> components;
  IntMatrix linking; // pairwise linking numbers, zero diagonal
};

inline FrontInvariants classical_invariants(const FrontDiagram& f) {
  detail::FrontTrace t = detail::trace_front(f);
  const std::size_t n = t.component_count;
  FrontInvariants inv;
  inv.components.resize(n);
  inv.linking = IntMatrix(n, n);
  std::vector<long> writhe(n, 0), cusps(n, 0), down(n, 0), up(n, 0);
  IntMatrix between(n, n);
  for (const auto& x : t.crossings) {
    int s = detail::crossing_sign(t, x);
    std::size_t cu = t.component[x.upper], cl = t.component[x.lower];
    if (cu == cl) writhe[cu] += s;
    else {
      between(cu, cl) += s;
      between(cl, cu) += s;
    }
  }
  for (const auto& c : t.cusps) {
    std::size_t comp = t.component[c.upper];
    ++cusps[comp];
    bool is_down = c.left ? t.dir[c.upper] < 0 : t.dir[c.upper] > 0;
    if (is_down) ++down[comp];
    else ++up[comp];
  }
  for (std::size_t c = 0; c < n; ++c) {
    inv.components[c].tb = writhe[c] - cusps[c] / 2;
    inv.components[c].rot = (down[c] - up[c]) / 2;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) inv.linking(i, j) = between(i, j) / 2;
  return inv;
}

// Adds a zigzag to one component: tb drops by one, rot moves by +-1
// depending on which way the zigzag points.
inline FrontDiagram stabilize(const FrontDiagram& f, int sign, std::size_t component = 0) {
  if (sign != 1 && sign != -1) throw move_error("stabilization sign must be +-1");
  detail::FrontTrace t = detail::trace_front(f);
  if (component >= t.component_count) throw move_error("no such component");
  for (std::size_t gap = 0; gap < t.stacks.size(); ++gap) {
    const auto& stack = t.stacks[gap];
    for (std::size_t s = 0; s < stack.size(); ++s) {
      if (t.component[stack[s]] != component || t.dir[stack[s]] <= 0) continue;
      FrontDiagram out = f;
      std::vector<FrontEvent> ins;
      if (sign > 0)
        ins = {{FrontEvent::left_cusp, s + 1}, {FrontEvent::right_cusp, s}};
      else
        ins = {{FrontEvent::left_cusp, s}, {FrontEvent::right_cusp, s + 1}};
      out.events.insert(out.events.begin() + (long)gap, ins.begin(), ins.end());
      return out;
    }
  }
  throw move_error("component has no rightward strand to stabilize");
}

// Framed link diagram of the fronts, one 2-handle per component, framed one
// below the contact framing; separate fronts are unlinked.
inline KirbyDiagram to_kirby(const std::vector<FrontDiagram>& fronts) {
  std::vector<FrontInvariants> invs;
  std::size_t k = 0;
  for (const auto& f : fronts) {
    invs.push_back(classical_invariants(f));
    k += invs.back().components.size();
  }
  IntMatrix linking(k, k);
  std::size_t at = 0;
  for (const auto& inv : invs) {
    std::size_t m = inv.components.size();
    for (std::size_t i = 0; i < m; ++i) {
      linking(at + i, at + i) = inv.components[i].tb - 1;
      for (std::size_t j = 0; j < m; ++j)
        if (i != j) linking(at + i, at + j) = inv.linking(i, j);
    }
    at += m;
  }
  return make_kirby(0, std::move(linking), IntMatrix());
}

} // namespace hcalc
