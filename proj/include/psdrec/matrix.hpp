#pragma once

#include <cmath>
#include <complex>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include "psdrec/errors.hpp"

namespace psdrec {

using cdouble = std::complex<double>;

template <typename T>
concept Scalar = std::same_as<T, double> || std::same_as<T, cdouble>;

template <typename T>
inline constexpr bool is_complex_v = std::same_as<T, cdouble>;

inline double conj(double x) noexcept { return x; }
inline cdouble conj(const cdouble& x) noexcept { return std::conj(x); }
inline double real_part(double x) noexcept { return x; }
inline double real_part(const cdouble& x) noexcept { return x.real(); }
inline double abs2(double x) noexcept { return x * x; }
inline double abs2(const cdouble& x) noexcept { return std::norm(x); }

/// Dense row-major matrix.
template <Scalar T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) {
      throw ContractViolation("Matrix: data size does not match shape");
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = T{1};
    return I;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<T> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(std::size_t i) const noexcept {
    return {data_.data() + i * cols_, cols_};
  }

  std::span<T> data() noexcept { return data_; }
  std::span<const T> data() const noexcept { return data_; }

  Matrix& operator+=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same(o);
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
  }
  Matrix& operator*=(double s) noexcept {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }

  double frobenius_norm_sq() const noexcept {
    double acc = 0.0;
    for (const auto& v : data_) acc += abs2(v);
    return acc;
  }
  double frobenius_norm() const noexcept { return std::sqrt(frobenius_norm_sq()); }

  bool all_finite() const noexcept {
    for (const auto& v : data_) {
      if constexpr (is_complex_v<T>) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
      } else {
        if (!std::isfinite(v)) return false;
      }
    }
    return true;
  }

 private:
  void check_same(const Matrix& o) const {
    if (o.rows_ != rows_ || o.cols_ != cols_) {
      throw ContractViolation("Matrix: shape mismatch");
    }
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <Scalar T>
Matrix<T> conj_transpose(const Matrix<T>& a) {
  Matrix<T> out(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out(j, i) = conj(a(i, j));
  return out;
}

template <Scalar T>
Matrix<T> matmul(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw ContractViolation("matmul: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto orow = out.row(i);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aik * brow[j];
    }
  }
  return out;
}

/// aᴴ b
template <Scalar T>
Matrix<T> matmul_ah_b(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows()) throw ContractViolation("matmul_ah_b: row counts differ");
  Matrix<T> out(a.cols(), b.cols());
  for (std::size_t k = 0; k < a.rows(); ++k) {
    auto arow = a.row(k);
    auto brow = b.row(k);
    for (std::size_t i = 0; i < a.cols(); ++i) {
      const T aki = conj(arow[i]);
      auto orow = out.row(i);
      for (std::size_t j = 0; j < b.cols(); ++j) orow[j] += aki * brow[j];
    }
  }
  return out;
}

/// Real part of the Frobenius inner product ⟨A, B⟩ = Re tr(Aᴴ B).
template <Scalar T>
double inner(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ContractViolation("inner: shape mismatch");
  }
  double acc = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t k = 0; k < da.size(); ++k) acc += real_part(conj(da[k]) * db[k]);
  return acc;
}

}  // namespace psdrec
