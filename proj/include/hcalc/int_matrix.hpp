#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <vector>

#include "hcalc/errors.hpp"

namespace hcalc {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline int sgn(const Int& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Dense matrix over the integers, row-major, arbitrary precision entries.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  IntMatrix(std::initializer_list<std::initializer_list<Int>> rows) {
    rows_ = rows.size();
    for (const auto& r : rows) {
      if (cols_ == 0) cols_ = r.size();
      if (r.size() != cols_) throw validation_error("ragged matrix literal");
      for (const auto& x : r) data_.push_back(x);
    }
    if (rows_ == 0) cols_ = 0;
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static IntMatrix diagonal(const std::vector<Int>& d) {
    IntMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Int& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const Int& at(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw validation_error("matrix index out of range");
    return data_[i * cols_ + j];
  }

  bool operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const IntMatrix& o) const { return !(*this == o); }
  bool operator<(const IntMatrix& o) const {
    if (rows_ != o.rows_) return rows_ < o.rows_;
    if (cols_ != o.cols_) return cols_ < o.cols_;
    return data_ < o.data_;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  IntMatrix transpose() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  IntMatrix operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw validation_error("matrix product shape mismatch");
    IntMatrix p(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const Int& a = (*this)(i, k);
        if (a == 0) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) p(i, j) += a * o(k, j);
      }
    return p;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) std::swap((*this)(r, i), (*this)(r, j));
  }
  // row dst += k * row src
  void add_row(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(dst, c) += k * (*this)(src, c);
  }
  void add_col(std::size_t dst, std::size_t src, const Int& k) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, dst) += k * (*this)(r, src);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }
  void negate_col(std::size_t j) {
    for (std::size_t r = 0; r < rows_; ++r) (*this)(r, j) = -(*this)(r, j);
  }

  // Copy with row i and column i deleted (square matrices).
  IntMatrix without_row_col(std::size_t idx) const {
    if (!is_square() || idx >= rows_) throw validation_error("bad index for deletion");
    IntMatrix m(rows_ - 1, cols_ - 1);
    for (std::size_t i = 0, di = 0; i < rows_; ++i) {
      if (i == idx) continue;
      for (std::size_t j = 0, dj = 0; j < cols_; ++j) {
        if (j == idx) continue;
        m(di, dj) = (*this)(i, j);
        ++dj;
      }
      ++di;
    }
    return m;
  }

  // Copy with an extra diagonal entry appended at the bottom right corner.
  IntMatrix with_diagonal_entry(const Int& v) const {
    if (!is_square()) throw validation_error("bad shape for diagonal append");
    IntMatrix m(rows_ + 1, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j);
    m(rows_, cols_) = v;
    return m;
  }

  // Exact determinant by fraction-free elimination.
  Int determinant() const {
    if (!is_square()) throw validation_error("determinant of non-square matrix");
    const std::size_t n = rows_;
    if (n == 0) return 1;
    IntMatrix a = *this;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && a(p, k) == 0) ++p;
        if (p == n) return 0;
        a.swap_rows(k, p);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i)
        for (std::size_t j = k + 1; j < n; ++j)
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
      prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
  }

  std::string str() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i) os << ",";
      os << "[";
      for (std::size_t j = 0; j < cols_; ++j) {
        if (j) os << ",";
        os << (*this)(i, j);
      }
      os << "]";
    }
    os << "]";
    return os.str();
  }

  // Parses the str() format, e.g. [[1,2],[3,4]].  Whitespace is ignored.
  static IntMatrix parse(const std::string& text) {
    std::vector<std::vector<Int>> rows;
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
    auto fail = [&](const std::string& m) -> void { throw parse_error(m, 1, i + 1); };
    skip();
    if (i == text.size() || text[i] != '[') fail("expected '['");
    ++i;
    skip();
    if (i < text.size() && text[i] == ']') {
      ++i;
    } else {
      for (;;) {
        skip();
        if (i == text.size() || text[i] != '[') fail("expected '['");
        ++i;
        std::vector<Int> row;
        skip();
        if (i < text.size() && text[i] == ']') {
          ++i;
        } else {
          for (;;) {
            skip();
            std::size_t start = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
            if (i == start || (i == start + 1 && !std::isdigit((unsigned char)text[start])))
              fail("expected integer");
            row.push_back(Int(text.substr(start, i - start)));
            skip();
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            if (i < text.size() && text[i] == ']') { ++i; break; }
            fail("expected ',' or ']'");
          }
        }
        rows.push_back(std::move(row));
        skip();
        if (i < text.size() && text[i] == ',') { ++i; continue; }
        if (i < text.size() && text[i] == ']') { ++i; break; }
        fail("expected ',' or ']'");
      }
    }
    skip();
    if (i != text.size()) fail("trailing input after matrix");
    if (rows.empty()) return IntMatrix();
    std::size_t c = rows[0].size();
    for (const auto& r : rows)
      if (r.size() != c) throw parse_error("ragged matrix", 1, 1);
    IntMatrix m(rows.size(), c);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t j = 0; j < c; ++j) m(r, j) = rows[r][j];
    return m;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Int> data_;
};

} // namespace hcalc
