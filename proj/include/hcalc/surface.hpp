#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hcalc/errors.hpp"

namespace hcalc {

// One lettered arrow on the boundary circle of the base disk.
struct ArrowToken {
  std::string label;
  int sign = 1; // +1 or -1
  bool operator==(const ArrowToken& o) const { return label == o.label && sign == o.sign; }
};

// A word of arrows read once around the disk boundary.  Each label names a
// band attached along its two occurrences; equal signs mean the band is
// attached with a half twist relative to the boundary orientation.
class SurfaceWord {
public:
  SurfaceWord() = default;
  explicit SurfaceWord(std::vector<ArrowToken> toks) : toks_(std::move(toks)) {}

  static SurfaceWord parse(const std::string& text) {
    std::vector<ArrowToken> toks;
    std::istringstream is(text);
    std::string t;
    std::size_t col = 1;
    while (is >> t) {
      char s = t.back();
      if ((s != '+' && s != '-') || t.size() < 2)
        throw parse_error("token '" + t + "' needs a label and a trailing sign", 1, col);
      toks.push_back({t.substr(0, t.size() - 1), s == '+' ? 1 : -1});
      col += t.size() + 1;
    }
    return SurfaceWord(std::move(toks));
  }

  std::string str() const {
    std::string s;
    for (const auto& t : toks_) {
      if (!s.empty()) s += ' ';
      s += t.label + (t.sign > 0 ? "+" : "-");
    }
    return s;
  }

  std::size_t size() const { return toks_.size(); }
  bool empty() const { return toks_.empty(); }
  const ArrowToken& operator[](std::size_t i) const { return toks_[i]; }
  const std::vector<ArrowToken>& tokens() const { return toks_; }
  std::vector<ArrowToken>& tokens() { return toks_; }
  bool operator==(const SurfaceWord& o) const { return toks_ == o.toks_; }
  bool operator!=(const SurfaceWord& o) const { return !(*this == o); }

private:
  std::vector<ArrowToken> toks_;
};

// Every label must occur exactly twice.
inline void validate(const SurfaceWord& w) {
  std::map<std::string, int> count;
  for (const auto& t : w.tokens()) {
    if (t.label.empty()) throw validation_error("empty label");
    if (t.sign != 1 && t.sign != -1) throw validation_error("sign must be +-1");
    ++count[t.label];
  }
  for (const auto& [l, c] : count)
    if (c != 2)
      throw validation_error("label '" + l + "' occurs " + std::to_string(c) +
                             " times, need exactly 2");
}

// Positions of the two occurrences of a label, in order.
inline std::pair<std::size_t, std::size_t> occurrences(const SurfaceWord& w,
                                                       const std::string& label) {
  std::size_t p = w.size(), q = w.size();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].label != label) continue;
    if (p == w.size()) p = i;
    else q = i;
  }
  if (q == w.size()) throw validation_error("label '" + label + "' does not occur twice");
  return {p, q};
}

inline bool is_twisted(const SurfaceWord& w, const std::string& label) {
  auto [p, q] = occurrences(w, label);
  return w[p].sign == w[q].sign;
}

inline bool orientable(const SurfaceWord& w) {
  validate(w);
  std::map<std::string, int> first;
  for (const auto& t : w.tokens()) {
    auto it = first.find(t.label);
    if (it == first.end()) first[t.label] = t.sign;
    else if (it->second == t.sign) return false;
  }
  return true;
}

// Number of boundary circles of the disk-with-bands.
//
// The 2n attaching intervals cut the disk boundary into 2n complementary
// arcs.  Interval i carries endpoints 2i and 2i+1 in circular order; the
// complementary arc after interval i joins endpoint 2i+1 to 2i+2 (mod 4n).
// Each band contributes two boundary arcs joining its intervals' endpoints:
// with a half twist they connect like-named corners, without they cross to
// the opposite corners.  Boundary circles are the cycles of this 2-regular
// graph.
inline std::size_t boundary_components(const SurfaceWord& w) {
  validate(w);
  const std::size_t n2 = w.size(); // 2n
  if (n2 == 0) return 1;
  const std::size_t m = 2 * n2; // endpoints
  std::vector<std::size_t> comp(m), conn(m);
  for (std::size_t i = 0; i < n2; ++i) {
    comp[2 * i + 1] = (2 * i + 2) % m;
    comp[(2 * i + 2) % m] = 2 * i + 1;
  }
  std::map<std::string, std::vector<std::size_t>> occ;
  for (std::size_t i = 0; i < n2; ++i) occ[w[i].label].push_back(i);
  for (const auto& [label, pos] : occ) {
    std::size_t p = pos[0], q = pos[1];
    bool twisted = w[p].sign == w[q].sign;
    std::size_t pl = 2 * p, pr = 2 * p + 1, ql = 2 * q, qr = 2 * q + 1;
    if (twisted) {
      conn[pl] = ql; conn[ql] = pl;
      conn[pr] = qr; conn[qr] = pr;
    } else {
      conn[pl] = qr; conn[qr] = pl;
      conn[pr] = ql; conn[ql] = pr;
    }
  }
  std::vector<bool> used(m, false);
  std::size_t cycles = 0;
  for (std::size_t s = 0; s < m; ++s) {
    if (used[s]) continue;
    ++cycles;
    std::size_t at = s;
    bool via_conn = false;
    while (!used[at]) {
      used[at] = true;
      at = via_conn ? conn[at] : comp[at];
      via_conn = !via_conn;
    }
  }
  return cycles;
}

// Closed surface type obtained by capping every boundary circle.
struct SurfaceClass {
  bool orientable = true;
  std::size_t count = 0; // genus, or crosscap number when non-orientable
  bool operator==(const SurfaceClass& o) const {
    return orientable == o.orientable && count == o.count;
  }
  bool operator!=(const SurfaceClass& o) const { return !(*this == o); }
  std::string str() const {
    if (orientable) return "orientable genus=" + std::to_string(count);
    return "nonorientable crosscaps=" + std::to_string(count);
  }
};

inline SurfaceClass classify(const SurfaceWord& w) {
  validate(w);
  std::size_t n = w.size() / 2;
  std::size_t b = boundary_components(w);
  // chi of the disk-with-bands is 1 - n; capping adds b.
  long chi = 1 - (long)n + (long)b;
  if (orientable(w)) {
    if ((2 - chi) % 2 != 0)
      throw std::logic_error("odd euler characteristic on an orientable word");
    return {true, (std::size_t)((2 - chi) / 2)};
  }
  return {false, (std::size_t)(2 - chi)};
}

inline SurfaceWord canonical_word(const SurfaceClass& c) {
  std::vector<ArrowToken> toks;
  if (c.orientable) {
    for (std::size_t g = 1; g <= c.count; ++g) {
      std::string a = "a" + std::to_string(g), b = "b" + std::to_string(g);
      toks.push_back({a, 1});
      toks.push_back({b, 1});
      toks.push_back({a, -1});
      toks.push_back({b, -1});
    }
  } else {
    for (std::size_t k = 1; k <= c.count; ++k) {
      std::string x = "c" + std::to_string(k);
      toks.push_back({x, 1});
      toks.push_back({x, 1});
    }
  }
  return SurfaceWord(std::move(toks));
}

// Canonical shape test: empty word, or interleaved untwisted quadruples
// x y x y with signs + + - -, or consecutive twisted pairs x x with + +.
inline bool is_canonical(const SurfaceWord& w) {
  validate(w);
  if (w.empty()) return true;
  const auto& t = w.tokens();
  if (t.size() % 4 == 0) {
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; i += 4) {
      const auto& x0 = t[i];
      const auto& y0 = t[i + 1];
      ok = x0.label != y0.label && x0.sign == 1 && y0.sign == 1 &&
           t[i + 2].label == x0.label && t[i + 2].sign == -1 &&
           t[i + 3].label == y0.label && t[i + 3].sign == -1;
    }
    if (ok) return true;
  }
  if (t.size() % 2 == 0) {
    bool ok = true;
    for (std::size_t i = 0; i < t.size() && ok; i += 2)
      ok = t[i].sign == 1 && t[i + 1].sign == 1 && t[i].label == t[i + 1].label;
    if (ok) return true;
  }
  return false;
}

// Rename labels in order of first occurrence; equal results mean the words
// differ only by their label names.
inline SurfaceWord relabeled(const SurfaceWord& w) {
  std::map<std::string, std::string> names;
  std::vector<ArrowToken> toks;
  for (const auto& t : w.tokens()) {
    auto it = names.find(t.label);
    if (it == names.end())
      it = names.emplace(t.label, "l" + std::to_string(names.size())).first;
    toks.push_back({it->second, t.sign});
  }
  return SurfaceWord(std::move(toks));
}

inline bool same_up_to_relabeling(const SurfaceWord& a, const SurfaceWord& b) {
  return relabeled(a) == relabeled(b);
}

} // namespace hcalc
