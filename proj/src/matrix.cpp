#include "mcmlab/matrix.hpp"

#include "mcmlab/errors.hpp"

namespace mcmlab {

template <class K>
PolyMatrix<K> PolyMatrix<K>::identity(const RingSpec<K>& ring, std::size_t n) {
  return diagonal(n, ring.constant(1));
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::diagonal(std::size_t n, const Poly& d) {
  PolyMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = d;
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::column(const std::vector<Poly>& v) {
  PolyMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::parse(const RingSpec<K>& ring,
                                   const std::vector<std::vector<std::string>>& rows,
                                   std::size_t cols_if_empty) {
  std::size_t cols = rows.empty() ? cols_if_empty : rows.front().size();
  PolyMatrix m(rows.size(), cols);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) {
      throw InputError("matrix row " + std::to_string(i + 1) + " has " +
                       std::to_string(rows[i].size()) + " entries, expected " + std::to_string(cols));
    }
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = ring.parse(rows[i][j]);
  }
  return m;
}

template <class K>
std::vector<Polynomial<K>> PolyMatrix<K>::col(std::size_t j) const {
  std::vector<Poly> v(r_);
  for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

template <class K>
void PolyMatrix<K>::set_col(std::size_t j, const std::vector<Poly>& v) {
  for (std::size_t i = 0; i < r_; ++i) (*this)(i, j) = v[i];
}

template <class K>
bool PolyMatrix<K>::is_zero() const {
  for (const auto& p : a_) {
    if (!p.is_zero()) return false;
  }
  return true;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator*(const PolyMatrix& o) const {
  if (c_ != o.r_) {
    throw InputError("matrix shape mismatch in product: " + std::to_string(r_) + "x" +
                     std::to_string(c_) + " times " + std::to_string(o.r_) + "x" +
                     std::to_string(o.c_));
  }
  PolyMatrix m(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t k = 0; k < c_; ++k) {
      const Poly& a = (*this)(i, k);
      if (a.is_zero()) continue;
      for (std::size_t j = 0; j < o.c_; ++j) {
        if (!o(k, j).is_zero()) m(i, j) += a * o(k, j);
      }
    }
  }
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator+(const PolyMatrix& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw InputError("matrix shape mismatch in sum");
  PolyMatrix m = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) m.a_[i] += o.a_[i];
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator-(const PolyMatrix& o) const {
  return *this + (-o);
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::operator-() const {
  PolyMatrix m = *this;
  for (auto& p : m.a_) p = -p;
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::scaled(const Poly& s) const {
  PolyMatrix m = *this;
  for (auto& p : m.a_) p = p * s;
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::transpose() const {
  PolyMatrix m(c_, r_);
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) m(j, i) = (*this)(i, j);
  }
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::select(const std::vector<std::size_t>& rows,
                                    const std::vector<std::size_t>& cols) const {
  PolyMatrix m(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) m(i, j) = (*this)(rows[i], cols[j]);
  }
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::select_cols(const std::vector<std::size_t>& cols) const {
  std::vector<std::size_t> rows(r_);
  for (std::size_t i = 0; i < r_; ++i) rows[i] = i;
  return select(rows, cols);
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::select_rows(const std::vector<std::size_t>& rows) const {
  std::vector<std::size_t> cols(c_);
  for (std::size_t j = 0; j < c_; ++j) cols[j] = j;
  return select(rows, cols);
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::hstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.r_ != b.r_) throw InputError("row count mismatch in horizontal stack");
  PolyMatrix m(a.r_, a.c_ + b.c_);
  for (std::size_t i = 0; i < a.r_; ++i) {
    for (std::size_t j = 0; j < a.c_; ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.c_; ++j) m(i, a.c_ + j) = b(i, j);
  }
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::vstack(const PolyMatrix& a, const PolyMatrix& b) {
  if (a.c_ != b.c_) throw InputError("column count mismatch in vertical stack");
  PolyMatrix m(a.r_ + b.r_, a.c_);
  for (std::size_t j = 0; j < a.c_; ++j) {
    for (std::size_t i = 0; i < a.r_; ++i) m(i, j) = a(i, j);
    for (std::size_t i = 0; i < b.r_; ++i) m(a.r_ + i, j) = b(i, j);
  }
  return m;
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::block_diag(const PolyMatrix& a, const PolyMatrix& b) {
  return blocks(a, PolyMatrix(a.r_, b.c_), PolyMatrix(b.r_, a.c_), b);
}

template <class K>
PolyMatrix<K> PolyMatrix<K>::blocks(const PolyMatrix& a, const PolyMatrix& b, const PolyMatrix& c,
                                    const PolyMatrix& d) {
  return vstack(hstack(a, b), hstack(c, d));
}

template <class K>
std::vector<std::vector<K>> PolyMatrix<K>::at_origin() const {
  std::vector<std::vector<K>> m(r_, std::vector<K>(c_));
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) m[i][j] = (*this)(i, j).constant_term();
  }
  return m;
}

template <class K>
std::vector<std::vector<std::string>> PolyMatrix<K>::to_strings(const RingSpec<K>& ring) const {
  std::vector<std::vector<std::string>> out(r_, std::vector<std::string>(c_));
  for (std::size_t i = 0; i < r_; ++i) {
    for (std::size_t j = 0; j < c_; ++j) out[i][j] = ring.print((*this)(i, j));
  }
  return out;
}

template <class K>
std::string PolyMatrix<K>::to_string(const RingSpec<K>& ring) const {
  std::string s = "[";
  for (std::size_t i = 0; i < r_; ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < c_; ++j) {
      if (j) s += ", ";
      s += ring.print((*this)(i, j));
    }
    s += "]";
  }
  return s + "]";
}

template class PolyMatrix<Fp>;
template class PolyMatrix<Rational>;

}  // namespace mcmlab
