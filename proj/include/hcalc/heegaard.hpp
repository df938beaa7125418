#pragma once

#include <cstddef>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "hcalc/smith.hpp"

namespace hcalc {

// A relator is a word in the generators x1..xg: pairs of
// (0-based generator index, exponent +-1).
using Relator = std::vector<std::pair<std::size_t, int>>;

// Genus-g splitting: g handles on each side, the second side's attaching
// curves read as words in the first side's generators.  One relator per
// handle of the second side.
struct HeegaardDiagram {
  std::size_t genus = 0;
  std::vector<Relator> relators;
};

inline void validate(const HeegaardDiagram& d) {
  if (d.relators.size() != d.genus)
    throw validation_error("need exactly " + std::to_string(d.genus) + " relators, got " +
                           std::to_string(d.relators.size()));
  for (const auto& r : d.relators)
    for (const auto& [gen, exp] : r) {
      if (gen >= d.genus)
        throw validation_error("relator uses x" + std::to_string(gen + 1) +
                               ", diagram has genus " + std::to_string(d.genus));
      if (exp != 1 && exp != -1) throw validation_error("exponents must be +-1");
    }
}

inline std::string relator_str(const Relator& r) {
  std::string s;
  for (const auto& [gen, exp] : r) {
    if (!s.empty()) s += ' ';
    s += "x" + std::to_string(gen + 1);
    if (exp < 0) s += "^-1";
  }
  return s;
}

// "x1 x2^-1 x1" -> relator.  Powers are written by repetition.
inline Relator parse_relator(const std::string& text, std::size_t genus) {
  Relator r;
  std::istringstream is(text);
  std::string t;
  while (is >> t) {
    int exp = 1;
    std::string body = t;
    auto car = body.find('^');
    if (car != std::string::npos) {
      std::string e = body.substr(car + 1);
      body = body.substr(0, car);
      if (e == "-1") exp = -1;
      else if (e == "1") exp = 1;
      else throw parse_error("exponent must be 1 or -1, got '" + e + "'", 1, 1);
    }
    if (body.size() < 2 || body[0] != 'x')
      throw parse_error("generator must look like x<k>, got '" + t + "'", 1, 1);
    std::size_t gen = 0;
    try {
      gen = std::stoul(body.substr(1));
    } catch (...) {
      throw parse_error("generator must look like x<k>, got '" + t + "'", 1, 1);
    }
    if (gen == 0 || gen > genus)
      throw parse_error("generator x" + std::to_string(gen) + " out of range for genus " +
                        std::to_string(genus), 1, 1);
    r.push_back({gen - 1, exp});
  }
  return r;
}

struct GroupPresentation {
  std::size_t generators = 0;
  std::vector<Relator> relators;
  std::string str() const {
    std::string s = "<";
    for (std::size_t i = 0; i < generators; ++i) {
      if (i) s += ", ";
      s += "x" + std::to_string(i + 1);
    }
    s += " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
      if (i) s += ", ";
      s += relators[i].empty() ? "1" : relator_str(relators[i]);
    }
    s += ">";
    return s;
  }
};

// Fundamental group of the closed manifold: kill each attaching curve.
inline GroupPresentation pi1_presentation(const HeegaardDiagram& d) {
  validate(d);
  return {d.genus, d.relators};
}

// First homology: abelianize, i.e. cokernel of the exponent-sum matrix
// (one column per relator).
inline AbelianGroup h1(const HeegaardDiagram& d) {
  validate(d);
  IntMatrix m(d.genus, d.relators.size());
  for (std::size_t j = 0; j < d.relators.size(); ++j)
    for (const auto& [gen, exp] : d.relators[j]) m(gen, j) += exp;
  return cokernel(m);
}

} // namespace hcalc
