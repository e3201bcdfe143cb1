#pragma once

#include <stdexcept>
#include <vector>

#include "entrank/scalar.hpp"

namespace entrank {

// Dense row-major matrix over either scalar domain.  Plain storage; the
// algorithms live in linalg.hpp.
template <class S>
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, S(0)) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Mat: negative dimension");
  }
  Mat(int rows, int cols, std::vector<S> data) : rows_(rows), cols_(cols), a_(std::move(data)) {
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
      throw std::invalid_argument("Mat: data length mismatch");
  }

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  S& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * cols_ + c]; }
  const S& operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * cols_ + c]; }

  const std::vector<S>& data() const { return a_; }

  Mat transpose() const {
    Mat m(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
    return m;
  }
  Mat conjugate() const {
    Mat m = *this;
    for (auto& x : m.a_) x = scalar_traits<S>::conj(x);
    return m;
  }
  Mat adjoint() const { return conjugate().transpose(); }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: size mismatch in product");
    Mat m(a.rows_, b.cols_);
    for (int r = 0; r < a.rows_; ++r)
      for (int k = 0; k < a.cols_; ++k) {
        const S& arc = a(r, k);
        if (scalar_traits<S>::is_zero(arc)) continue;
        for (int c = 0; c < b.cols_; ++c) m(r, c) += arc * b(k, c);
      }
    return m;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (static_cast<int>(v.size()) != cols_)
      throw std::invalid_argument("Mat: size mismatch in apply");
    std::vector<S> out(rows_, S(0));
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) out[r] += (*this)(r, c) * v[c];
    return out;
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_ = 0, cols_ = 0;
  std::vector<S> a_;
};

}  // namespace entrank
