#pragma once

#include <string>
#include <vector>

#include "mcmlab/ring.hpp"

namespace mcmlab {

/// Dense matrix of polynomials, row-major.
template <class K>
class PolyMatrix {
 public:
  using Poly = Polynomial<K>;

  PolyMatrix() = default;
  PolyMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}

  static PolyMatrix identity(const RingSpec<K>& ring, std::size_t n);
  static PolyMatrix diagonal(std::size_t n, const Poly& d);
  /// Column vector.
  static PolyMatrix column(const std::vector<Poly>& v);
  static PolyMatrix parse(const RingSpec<K>& ring, const std::vector<std::vector<std::string>>& rows,
                          std::size_t cols_if_empty = 0);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  Poly& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }
  std::vector<Poly> col(std::size_t j) const;
  void set_col(std::size_t j, const std::vector<Poly>& v);

  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  PolyMatrix operator*(const PolyMatrix& o) const;
  PolyMatrix operator+(const PolyMatrix& o) const;
  PolyMatrix operator-(const PolyMatrix& o) const;
  PolyMatrix operator-() const;
  PolyMatrix scaled(const Poly& s) const;
  PolyMatrix transpose() const;

  PolyMatrix select(const std::vector<std::size_t>& rows, const std::vector<std::size_t>& cols) const;
  PolyMatrix select_cols(const std::vector<std::size_t>& cols) const;
  PolyMatrix select_rows(const std::vector<std::size_t>& rows) const;
  static PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b);
  static PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b);
  static PolyMatrix block_diag(const PolyMatrix& a, const PolyMatrix& b);
  /// [[a, b], [c, d]]; shapes must agree.
  static PolyMatrix blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                           const PolyMatrix& d);

  /// Entrywise constant terms, i.e. the matrix modulo the maximal ideal.
  std::vector<std::vector<K>> at_origin() const;

  std::vector<std::vector<std::string>> to_strings(const RingSpec<K>& ring) const;
  std::string to_string(const RingSpec<K>& ring) const;

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<Poly> a_;
};

}  // namespace mcmlab
