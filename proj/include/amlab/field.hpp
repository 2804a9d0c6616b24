#ifndef AMLAB_FIELD_HPP
#define AMLAB_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "amlab/errors.hpp"

namespace amlab {

using elem_t = std::uint8_t;

/// Arithmetic in GF(p) for the small primes this library supports.
class PrimeField {
 public:
  PrimeField() = default;
  explicit PrimeField(int p) : p_(static_cast<elem_t>(p)) {
    if (p != 2 && p != 3 && p != 5 && p != 7)
      throw usage_error("unsupported field order " + std::to_string(p) +
                        " (expected 2, 3, 5 or 7)");
    for (int a = 1; a < p; ++a)
      for (int b = 1; b < p; ++b)
        if ((a * b) % p == 1) inv_[a] = static_cast<elem_t>(b);
  }

  int p() const noexcept { return p_; }
  int size() const noexcept { return p_; }

  elem_t add(elem_t a, elem_t b) const noexcept {
    int s = a + b;
    return static_cast<elem_t>(s >= p_ ? s - p_ : s);
  }
  elem_t sub(elem_t a, elem_t b) const noexcept {
    int s = a - b;
    return static_cast<elem_t>(s < 0 ? s + p_ : s);
  }
  elem_t neg(elem_t a) const noexcept {
    return static_cast<elem_t>(a == 0 ? 0 : p_ - a);
  }
  elem_t mul(elem_t a, elem_t b) const noexcept {
    return static_cast<elem_t>((a * b) % p_);
  }
  elem_t inv(elem_t a) const {
    if (a == 0) throw usage_error("inverse of zero");
    return inv_[a];
  }
  elem_t from_int(long long v) const noexcept {
    long long r = v % p_;
    return static_cast<elem_t>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(PrimeField const& a, PrimeField const& b) {
    return a.p_ == b.p_;
  }

 private:
  elem_t p_ = 2;
  elem_t inv_[8] = {0, 1, 0, 0, 0, 0, 0, 0};
};

using Vec = std::vector<elem_t>;

/// Dense row-major matrix over a prime field.
class Mat {
 public:
  Mat() = default;
  Mat(PrimeField f, int rows, int cols)
      : f_(f), rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * cols, 0) {}
  Mat(PrimeField f, int rows, int cols, std::initializer_list<int> vals)
      : Mat(f, rows, cols) {
    if (vals.size() != data_.size())
      throw usage_error("matrix initializer has wrong length");
    std::size_t k = 0;
    for (int v : vals) data_[k++] = f.from_int(v);
  }

  static Mat identity(PrimeField f, int n) {
    Mat m(f, n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Mat from_rows(PrimeField f, int cols, std::vector<Vec> const& rows) {
    Mat m(f, static_cast<int>(rows.size()), cols);
    for (int i = 0; i < m.rows_; ++i) {
      if (static_cast<int>(rows[i].size()) != cols)
        throw usage_error("row length mismatch");
      for (int j = 0; j < cols; ++j) m(i, j) = rows[i][j] % f.p();
    }
    return m;
  }

  PrimeField const& field() const noexcept { return f_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }

  elem_t& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  elem_t operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  Vec row(int i) const {
    auto b = data_.begin() + static_cast<std::ptrdiff_t>(i) * cols_;
    return Vec(b, b + cols_);
  }
  Vec col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  std::vector<elem_t> const& data() const noexcept { return data_; }

  Mat transpose() const {
    Mat t(f_, cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_zero() const {
    for (auto v : data_)
      if (v) return false;
    return true;
  }

  friend Mat operator*(Mat const& a, Mat const& b) {
    if (a.cols_ != b.rows_) throw usage_error("matrix dimension mismatch");
    Mat c(a.f_, a.rows_, b.cols_);
    int const p = a.f_.p();
    for (int i = 0; i < a.rows_; ++i)
      for (int j = 0; j < b.cols_; ++j) {
        int s = 0;
        for (int k = 0; k < a.cols_; ++k) s += a(i, k) * b(k, j);
        c(i, j) = static_cast<elem_t>(s % p);
      }
    return c;
  }
  friend Mat operator+(Mat const& a, Mat const& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
      throw usage_error("matrix dimension mismatch");
    Mat c = a;
    for (std::size_t k = 0; k < c.data_.size(); ++k)
      c.data_[k] = a.f_.add(a.data_[k], b.data_[k]);
    return c;
  }
  Mat scaled(elem_t s) const {
    Mat c = *this;
    for (auto& v : c.data_) v = f_.mul(v, s);
    return c;
  }

  /// Column-vector action: returns m * v.
  Vec apply(Vec const& v) const {
    Vec r(rows_, 0);
    int const p = f_.p();
    for (int i = 0; i < rows_; ++i) {
      int s = 0;
      for (int k = 0; k < cols_; ++k) s += (*this)(i, k) * v[k];
      r[i] = static_cast<elem_t>(s % p);
    }
    return r;
  }

  friend bool operator==(Mat const& a, Mat const& b) {
    return a.f_ == b.f_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }
  friend bool operator<(Mat const& a, Mat const& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  std::string bytes() const {
    std::string s;
    s.reserve(data_.size() + 3);
    s.push_back(static_cast<char>(f_.p()));
    s.push_back(static_cast<char>(rows_));
    s.push_back(static_cast<char>(cols_));
    for (auto v : data_) s.push_back(static_cast<char>(v));
    return s;
  }

 private:
  PrimeField f_{};
  int rows_ = 0;
  int cols_ = 0;
  std::vector<elem_t> data_;
};

struct MatHash {
  std::size_t operator()(Mat const& m) const noexcept {
    std::size_t h = 1469598103934665603ull ^ static_cast<std::size_t>(m.rows() * 131 + m.cols());
    for (auto v : m.data()) h = (h ^ v) * 1099511628211ull;
    return h;
  }
};

/// Number of vectors in GF(p)^n.
inline std::size_t vector_count(PrimeField f, int n) {
  std::size_t c = 1;
  for (int i = 0; i < n; ++i) c *= static_cast<std::size_t>(f.p());
  return c;
}

/// Little-endian base-p index of a vector: coordinate 0 is least significant.
inline std::size_t vector_index(PrimeField f, Vec const& v) {
  std::size_t idx = 0;
  for (std::size_t k = v.size(); k-- > 0;) idx = idx * f.p() + v[k];
  return idx;
}

inline Vec vector_from_index(PrimeField f, int n, std::size_t idx) {
  Vec v(n);
  for (int k = 0; k < n; ++k) {
    v[k] = static_cast<elem_t>(idx % f.p());
    idx /= f.p();
  }
  return v;
}

inline Mat inverse(Mat const& m) {
  if (m.rows() != m.cols()) throw usage_error("inverse of non-square matrix");
  PrimeField const f = m.field();
  int const n = m.rows();
  Mat a = m;
  Mat b = Mat::identity(f, n);
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int r = c; r < n; ++r)
      if (a(r, c)) { piv = r; break; }
    if (piv < 0) throw usage_error("matrix is singular");
    if (piv != c)
      for (int j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(c, j));
        std::swap(b(piv, j), b(c, j));
      }
    elem_t s = f.inv(a(c, c));
    for (int j = 0; j < n; ++j) {
      a(c, j) = f.mul(a(c, j), s);
      b(c, j) = f.mul(b(c, j), s);
    }
    for (int r = 0; r < n; ++r) {
      if (r == c || a(r, c) == 0) continue;
      elem_t t = a(r, c);
      for (int j = 0; j < n; ++j) {
        a(r, j) = f.sub(a(r, j), f.mul(t, a(c, j)));
        b(r, j) = f.sub(b(r, j), f.mul(t, b(c, j)));
      }
    }
  }
  return b;
}

}  // namespace amlab

template <>
struct std::hash<amlab::Mat> {
  std::size_t operator()(amlab::Mat const& m) const noexcept {
    return amlab::MatHash{}(m);
  }
};

#endif  // AMLAB_FIELD_HPP
