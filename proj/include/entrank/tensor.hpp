#pragma once

#include <cmath>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrank/matrix.hpp"
#include "entrank/scalar.hpp"

namespace entrank {

// Dense tensor, row-major with the LAST index fastest.  Immutable once
// constructed; every operation returns a new value.  This layout choice is
// global: matricization, slicing and the 4x4 determinant conventions all
// refer back to it.
template <class S>
class Tensor {
 public:
  Tensor() = default;

  Tensor(std::vector<int> shape, std::vector<S> data)
      : shape_(std::move(shape)), data_(std::move(data)) {
    if (shape_.empty()) throw std::invalid_argument("Tensor: empty shape");
    std::size_t n = 1;
    for (int d : shape_) {
      if (d < 1) throw std::invalid_argument("Tensor: dimensions must be positive");
      if (d > 64 || shape_.size() > 8) throw std::invalid_argument("Tensor: beyond desk scale");
      n *= static_cast<std::size_t>(d);
    }
    if (data_.size() != n)
      throw std::invalid_argument("Tensor: entry count " + std::to_string(data_.size()) +
                                  " does not match shape product " + std::to_string(n));
  }

  static Tensor zeros(std::vector<int> shape) {
    std::size_t n = 1;
    for (int d : shape) {
      if (d < 1) throw std::invalid_argument("Tensor: dimensions must be positive");
      n *= static_cast<std::size_t>(d);
    }
    return Tensor(std::move(shape), std::vector<S>(n, S(0)));
  }

  int order() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  int dim(int axis) const { return shape_.at(static_cast<std::size_t>(axis)); }
  std::size_t size() const { return data_.size(); }
  const std::vector<S>& data() const { return data_; }

  const S& operator[](std::size_t flat) const { return data_[flat]; }

  std::size_t flat_index(const std::vector<int>& idx) const {
    if (idx.size() != shape_.size()) throw std::invalid_argument("Tensor: index arity mismatch");
    std::size_t f = 0;
    for (std::size_t a = 0; a < shape_.size(); ++a) {
      if (idx[a] < 0 || idx[a] >= shape_[a]) throw std::out_of_range("Tensor: index out of range");
      f = f * static_cast<std::size_t>(shape_[a]) + static_cast<std::size_t>(idx[a]);
    }
    return f;
  }

  const S& at(const std::vector<int>& idx) const { return data_[flat_index(idx)]; }
  const S& at(std::initializer_list<int> idx) const { return at(std::vector<int>(idx)); }

  bool is_zero() const {
    for (const S& x : data_)
      if (!scalar_traits<S>::is_zero(x)) return false;
    return true;
  }

 private:
  std::vector<int> shape_;
  std::vector<S> data_;
};

template <class S>
Tensor<S> tensor_new(std::vector<int> shape, std::vector<S> entries) {
  return Tensor<S>(std::move(shape), std::move(entries));
}

// Basis tensor e_{idx}.
template <class S>
Tensor<S> basis_tensor(const std::vector<int>& shape, const std::vector<int>& idx) {
  auto t = Tensor<S>::zeros(shape);
  std::vector<S> d = t.data();
  d[t.flat_index(idx)] = S(1);
  return Tensor<S>(shape, std::move(d));
}

template <class S>
Tensor<S> add(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.shape() != b.shape()) throw std::invalid_argument("add: shape mismatch");
  std::vector<S> d = a.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += b[i];
  return Tensor<S>(a.shape(), std::move(d));
}

template <class S>
Tensor<S> sub(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.shape() != b.shape()) throw std::invalid_argument("sub: shape mismatch");
  std::vector<S> d = a.data();
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return Tensor<S>(a.shape(), std::move(d));
}

template <class S>
Tensor<S> scale(const Tensor<S>& a, const S& c) {
  std::vector<S> d = a.data();
  for (auto& x : d) x *= c;
  return Tensor<S>(a.shape(), std::move(d));
}

template <class S>
Tensor<S> conjugate(const Tensor<S>& a) {
  std::vector<S> d = a.data();
  for (auto& x : d) x = scalar_traits<S>::conj(x);
  return Tensor<S>(a.shape(), std::move(d));
}

// Outer product of the factor vectors.
template <class S>
Tensor<S> pure(const std::vector<std::vector<S>>& factors) {
  if (factors.empty()) throw std::invalid_argument("pure: no factors");
  std::vector<int> shape;
  for (const auto& f : factors) {
    if (f.empty()) throw std::invalid_argument("pure: empty factor");
    bool nonzero = false;
    for (const S& x : f)
      if (!scalar_traits<S>::is_zero(x)) nonzero = true;
    if (!nonzero) throw std::invalid_argument("pure: zero factor");
    shape.push_back(static_cast<int>(f.size()));
  }
  auto t = Tensor<S>::zeros(shape);
  std::vector<S> d(t.size());
  std::vector<int> idx(shape.size(), 0);
  for (std::size_t f = 0; f < d.size(); ++f) {
    S v = factors[0][static_cast<std::size_t>(idx[0])];
    for (std::size_t a = 1; a < factors.size(); ++a)
      v *= factors[a][static_cast<std::size_t>(idx[a])];
    d[f] = v;
    for (int a = static_cast<int>(shape.size()) - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < shape[static_cast<std::size_t>(a)]) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return Tensor<S>(shape, std::move(d));
}

// Contract one axis against a vector (bilinear; no conjugation):
// out[rest] = sum_a v[a] * t[..a..].
template <class S>
Tensor<S> slice(const Tensor<S>& t, int axis, const std::vector<S>& v) {
  if (axis < 0 || axis >= t.order()) throw std::invalid_argument("slice: bad axis");
  if (static_cast<int>(v.size()) != t.dim(axis))
    throw std::invalid_argument("slice: vector length mismatch");
  if (t.order() == 1) throw std::invalid_argument("slice: cannot reduce order-1 tensor");
  std::vector<int> oshape;
  for (int a = 0; a < t.order(); ++a)
    if (a != axis) oshape.push_back(t.dim(a));
  auto out = Tensor<S>::zeros(oshape);
  std::vector<S> d(out.size(), S(0));
  std::vector<int> idx(static_cast<std::size_t>(t.order()), 0);
  for (std::size_t f = 0; f < t.size(); ++f) {
    if (!scalar_traits<S>::is_zero(t[f])) {
      std::size_t of = 0;
      for (int a = 0; a < t.order(); ++a)
        if (a != axis)
          of = of * static_cast<std::size_t>(t.dim(a)) +
               static_cast<std::size_t>(idx[static_cast<std::size_t>(a)]);
      d[of] += v[static_cast<std::size_t>(idx[static_cast<std::size_t>(axis)])] * t[f];
    }
    for (int a = t.order() - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < t.dim(a)) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return Tensor<S>(oshape, std::move(d));
}

// Flatten to a matrix: rows run over row_axes (row-major, in the GIVEN
// order), columns over the complementary axes (row-major, ascending).
template <class S>
Mat<S> matricize(const Tensor<S>& t, const std::vector<int>& row_axes) {
  const int k = t.order();
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  for (int a : row_axes) {
    if (a < 0 || a >= k) throw std::invalid_argument("matricize: bad axis");
    if (used[static_cast<std::size_t>(a)]) throw std::invalid_argument("matricize: repeated axis");
    used[static_cast<std::size_t>(a)] = true;
  }
  if (row_axes.empty() || static_cast<int>(row_axes.size()) == k)
    throw std::invalid_argument("matricize: row axes must be a proper nonempty subset");
  std::vector<int> col_axes;
  for (int a = 0; a < k; ++a)
    if (!used[static_cast<std::size_t>(a)]) col_axes.push_back(a);
  int nr = 1, nc = 1;
  for (int a : row_axes) nr *= t.dim(a);
  for (int a : col_axes) nc *= t.dim(a);
  Mat<S> m(nr, nc);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t f = 0; f < t.size(); ++f) {
    int r = 0, c = 0;
    for (int a : row_axes) r = r * t.dim(a) + idx[static_cast<std::size_t>(a)];
    for (int a : col_axes) c = c * t.dim(a) + idx[static_cast<std::size_t>(a)];
    m(r, c) = t[f];
    for (int a = k - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < t.dim(a)) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return m;
}

// Inverse of matricize for the same (shape, row_axes).
template <class S>
Tensor<S> dematricize(const Mat<S>& m, const std::vector<int>& shape,
                      const std::vector<int>& row_axes) {
  auto t = Tensor<S>::zeros(shape);
  const int k = static_cast<int>(shape.size());
  std::vector<bool> used(static_cast<std::size_t>(k), false);
  for (int a : row_axes) used.at(static_cast<std::size_t>(a)) = true;
  std::vector<int> col_axes;
  for (int a = 0; a < k; ++a)
    if (!used[static_cast<std::size_t>(a)]) col_axes.push_back(a);
  std::vector<S> d(t.size());
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t f = 0; f < t.size(); ++f) {
    int r = 0, c = 0;
    for (int a : row_axes) r = r * shape[static_cast<std::size_t>(a)] + idx[static_cast<std::size_t>(a)];
    for (int a : col_axes) c = c * shape[static_cast<std::size_t>(a)] + idx[static_cast<std::size_t>(a)];
    d[f] = m(r, c);
    for (int a = k - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < shape[static_cast<std::size_t>(a)]) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return Tensor<S>(shape, std::move(d));
}

// Apply a matrix along one axis: out[..i..] = sum_j m(i,j) t[..j..].
// With an invertible m this is a change of slice basis along that axis.
template <class S>
Tensor<S> mode_apply(const Tensor<S>& t, int axis, const Mat<S>& m) {
  if (axis < 0 || axis >= t.order()) throw std::invalid_argument("mode_apply: bad axis");
  if (m.cols() != t.dim(axis)) throw std::invalid_argument("mode_apply: size mismatch");
  std::vector<int> oshape = t.shape();
  oshape[static_cast<std::size_t>(axis)] = m.rows();
  auto out = Tensor<S>::zeros(oshape);
  std::vector<S> d(out.size(), S(0));
  std::vector<int> idx(static_cast<std::size_t>(t.order()), 0);
  for (std::size_t f = 0; f < t.size(); ++f) {
    const S& x = t[f];
    if (!scalar_traits<S>::is_zero(x)) {
      for (int i = 0; i < m.rows(); ++i) {
        const S& mij = m(i, static_cast<int>(idx[static_cast<std::size_t>(axis)]));
        if (scalar_traits<S>::is_zero(mij)) continue;
        std::size_t of = 0;
        for (int a = 0; a < t.order(); ++a) {
          int ia = (a == axis) ? i : idx[static_cast<std::size_t>(a)];
          of = of * static_cast<std::size_t>(oshape[static_cast<std::size_t>(a)]) +
               static_cast<std::size_t>(ia);
        }
        d[of] += mij * x;
      }
    }
    for (int a = t.order() - 1; a >= 0; --a) {
      if (++idx[static_cast<std::size_t>(a)] < t.dim(a)) break;
      idx[static_cast<std::size_t>(a)] = 0;
    }
  }
  return Tensor<S>(oshape, std::move(d));
}

template <class S>
Tensor<S> apply_local(const Tensor<S>& t, const std::vector<Mat<S>>& ms) {
  if (static_cast<int>(ms.size()) != t.order())
    throw std::invalid_argument("apply_local: need one matrix per axis");
  Tensor<S> out = t;
  for (int a = 0; a < t.order(); ++a) out = mode_apply(out, a, ms[static_cast<std::size_t>(a)]);
  return out;
}

template <class S>
typename scalar_traits<S>::real_type norm_sq(const Tensor<S>& t) {
  typename scalar_traits<S>::real_type s(0);
  for (const S& x : t.data()) s += scalar_traits<S>::abs2(x);
  return s;
}

template <class S>
double frobenius_norm(const Tensor<S>& t) {
  return std::sqrt(to_double(norm_sq(t)));
}

template <class S>
typename scalar_traits<S>::real_type distance_sq(const Tensor<S>& a, const Tensor<S>& b) {
  if (a.shape() != b.shape()) throw std::invalid_argument("distance: shape mismatch");
  typename scalar_traits<S>::real_type s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += scalar_traits<S>::abs2(a[i] - b[i]);
  return s;
}

template <class S>
double frobenius_distance(const Tensor<S>& a, const Tensor<S>& b) {
  return std::sqrt(to_double(distance_sq(a, b)));
}

inline Tensor<Complex> to_complex_tensor(const Tensor<GaussianRational>& t) {
  std::vector<Complex> d(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) d[i] = t[i].to_complex();
  return Tensor<Complex>(t.shape(), std::move(d));
}

inline const Tensor<Complex>& to_complex_tensor(const Tensor<Complex>& t) { return t; }

// Weighted sum of pure terms.
template <class S>
struct Term {
  S weight;
  std::vector<std::vector<S>> factors;
};

template <class S>
struct Decomposition {
  std::vector<Term<S>> terms;
};

template <class S>
Tensor<S> reconstruct(const Decomposition<S>& d) {
  if (d.terms.empty()) throw std::invalid_argument("reconstruct: empty decomposition");
  Tensor<S> acc = scale(pure(d.terms[0].factors), d.terms[0].weight);
  for (std::size_t j = 1; j < d.terms.size(); ++j)
    acc = add(acc, scale(pure(d.terms[j].factors), d.terms[j].weight));
  return acc;
}

inline Decomposition<Complex> to_complex_decomposition(const Decomposition<GaussianRational>& d) {
  Decomposition<Complex> out;
  for (const auto& t : d.terms) {
    Term<Complex> ct;
    ct.weight = t.weight.to_complex();
    for (const auto& f : t.factors) {
      std::vector<Complex> cf(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) cf[i] = f[i].to_complex();
      ct.factors.push_back(std::move(cf));
    }
    out.terms.push_back(std::move(ct));
  }
  return out;
}

}  // namespace entrank
