#pragma once

#include <Eigen/Dense>

namespace infogeo {

using Index = Eigen::Index;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Dense third-order tensor with all three slots of equal dimension n.
/// Entries are stored row-major: (j,k,l) lives at j*n*n + k*n + l.
template <typename Scalar_>
class Tensor3T {
 public:
  using Scalar = Scalar_;
  using VectorType = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using MatrixType = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  Tensor3T() = default;
  explicit Tensor3T(Index n) : n_(n) { data_.setZero(n * n * n); }

  static Tensor3T Zero(Index n) { return Tensor3T(n); }

  Index dimension() const { return n_; }
  Index size() const { return data_.size(); }

  Scalar& operator()(Index j, Index k, Index l) { return data_[offset(j, k, l)]; }
  Scalar operator()(Index j, Index k, Index l) const { return data_[offset(j, k, l)]; }

  const VectorType& flat() const { return data_; }
  VectorType& flat() { return data_; }

  /// A_jk = sum_l T_jkl v^l
  MatrixType contractLast(const VectorType& v) const {
    MatrixType a = MatrixType::Zero(n_, n_);
    for (Index j = 0; j < n_; ++j)
      for (Index k = 0; k < n_; ++k) {
        Scalar s = Scalar(0);
        for (Index l = 0; l < n_; ++l) s += (*this)(j, k, l) * v[l];
        a(j, k) = s;
      }
    return a;
  }

  /// b_j = sum_{k,l} T_jkl v^k w^l
  VectorType contractLastTwo(const VectorType& v, const VectorType& w) const {
    VectorType b = VectorType::Zero(n_);
    for (Index j = 0; j < n_; ++j) {
      Scalar s = Scalar(0);
      for (Index k = 0; k < n_; ++k)
        for (Index l = 0; l < n_; ++l) s += (*this)(j, k, l) * v[k] * w[l];
      b[j] = s;
    }
    return b;
  }

  /// sum_{j,k,l} T_jkl u^j v^k w^l
  Scalar contract(const VectorType& u, const VectorType& v, const VectorType& w) const {
    Scalar s = Scalar(0);
    for (Index j = 0; j < n_; ++j)
      for (Index k = 0; k < n_; ++k)
        for (Index l = 0; l < n_; ++l) s += (*this)(j, k, l) * u[j] * v[k] * w[l];
    return s;
  }

  Scalar maxAbs() const { return data_.size() ? data_.cwiseAbs().maxCoeff() : Scalar(0); }

  /// Max deviation from total symmetry over all index permutations.
  Scalar symmetryDefect() const {
    Scalar d = Scalar(0);
    using std::abs;
    for (Index j = 0; j < n_; ++j)
      for (Index k = 0; k < n_; ++k)
        for (Index l = 0; l < n_; ++l) {
          const Scalar t = (*this)(j, k, l);
          d = std::max<Scalar>(d, abs(t - (*this)(j, l, k)));
          d = std::max<Scalar>(d, abs(t - (*this)(k, j, l)));
          d = std::max<Scalar>(d, abs(t - (*this)(k, l, j)));
          d = std::max<Scalar>(d, abs(t - (*this)(l, j, k)));
          d = std::max<Scalar>(d, abs(t - (*this)(l, k, j)));
        }
    return d;
  }

  Tensor3T& operator+=(const Tensor3T& o) { data_ += o.data_; return *this; }
  Tensor3T& operator-=(const Tensor3T& o) { data_ -= o.data_; return *this; }
  Tensor3T& operator*=(Scalar s) { data_ *= s; return *this; }

  friend Tensor3T operator+(Tensor3T a, const Tensor3T& b) { a += b; return a; }
  friend Tensor3T operator-(Tensor3T a, const Tensor3T& b) { a -= b; return a; }
  friend Tensor3T operator*(Scalar s, Tensor3T t) { t *= s; return t; }
  friend Tensor3T operator*(Tensor3T t, Scalar s) { t *= s; return t; }

 private:
  Index offset(Index j, Index k, Index l) const {
    eigen_assert(j >= 0 && j < n_ && k >= 0 && k < n_ && l >= 0 && l < n_);
    return (j * n_ + k) * n_ + l;
  }

  Index n_ = 0;
  VectorType data_;
};

using Tensor3 = Tensor3T<double>;

}  // namespace infogeo
