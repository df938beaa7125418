#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "hcalc/int_matrix.hpp"

namespace hcalc {

// Finitely generated abelian group in invariant-factor form:
// Z^free + Z/d1 + ... + Z/dk with 2 <= d1 | d2 | ... | dk.
class AbelianGroup {
public:
  AbelianGroup() = default;
  AbelianGroup(std::size_t free_rank, std::vector<Int> torsion)
      : free_(free_rank), torsion_(std::move(torsion)) {
    normalize();
  }

  static AbelianGroup free(std::size_t rank) { return AbelianGroup(rank, {}); }

  std::size_t free_rank() const { return free_; }
  const std::vector<Int>& torsion() const { return torsion_; }
  bool is_trivial() const { return free_ == 0 && torsion_.empty(); }

  // Order of the torsion subgroup.
  Int torsion_order() const {
    Int n = 1;
    for (const auto& d : torsion_) n *= d;
    return n;
  }

  bool operator==(const AbelianGroup& o) const {
    return free_ == o.free_ && torsion_ == o.torsion_;
  }
  bool operator!=(const AbelianGroup& o) const { return !(*this == o); }

  std::string str() const {
    if (is_trivial()) return "0";
    std::string s;
    if (free_ == 1) s = "Z";
    else if (free_ > 1) s = "Z^" + std::to_string(free_);
    for (const auto& d : torsion_) {
      if (!s.empty()) s += " + ";
      s += "Z/" + d.str();
    }
    return s;
  }

private:
  void normalize() {
    // Fold arbitrary cyclic factors into a divisor chain.
    // Z/0 means an infinite cyclic factor and is moved to the free part.
    for (auto& d : torsion_) d = abs(d);
    std::vector<Int> ds;
    for (const auto& d : torsion_) {
      if (d == 0) ++free_;
      else if (d != 1) ds.push_back(d);
    }
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t i = 0; i < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j) {
          if (ds[j] % ds[i] == 0) continue;
          Int g = gcd(ds[i], ds[j]);
          Int l = ds[i] / g * ds[j];
          ds[i] = g;
          ds[j] = l;
          changed = true;
        }
    }
    torsion_.clear();
    for (const auto& d : ds)
      if (d != 1) torsion_.push_back(d);
  }

  std::size_t free_ = 0;
  std::vector<Int> torsion_;
};

} // namespace hcalc
