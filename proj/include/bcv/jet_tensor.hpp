#pragma once

#include <Eigen/Dense>
#include <array>
#include <initializer_list>
#include <span>
#include <vector>

#include "bcv/jet.hpp"

namespace bcv {

/// Dense row-major array of jets sharing one order and variable count.
class JetTensor {
 public:
  JetTensor() = default;
  JetTensor(std::vector<int> shape, int order, int num_vars);

  int rank() const { return static_cast<int>(shape_.size()); }
  const std::vector<int>& shape() const { return shape_; }
  int extent(int axis) const { return shape_[axis]; }
  std::size_t size() const { return data_.size(); }
  int order() const { return order_; }
  int num_vars() const { return num_vars_; }

  std::vector<CJet>& data() { return data_; }
  const std::vector<CJet>& data() const { return data_; }

  std::size_t offset(std::span<const int> idx) const;
  /// Multi-index of a flat offset.
  std::vector<int> index_of(std::size_t flat) const;

  template <typename... I>
  CJet& operator()(I... i) {
    const std::array<int, sizeof...(I)> idx{static_cast<int>(i)...};
    return data_[offset(idx)];
  }
  template <typename... I>
  const CJet& operator()(I... i) const {
    const std::array<int, sizeof...(I)> idx{static_cast<int>(i)...};
    return data_[offset(idx)];
  }
  CJet& at(std::span<const int> idx) { return data_[offset(idx)]; }
  const CJet& at(std::span<const int> idx) const { return data_[offset(idx)]; }

  JetTensor truncated(int order) const;
  JetTensor derivative(int var) const;
  /// Values at the expansion point, flattened row-major.
  Eigen::VectorXcd values() const;
  /// Rank-2 values as a matrix.
  Eigen::MatrixXcd value_matrix() const;

  JetTensor& operator+=(const JetTensor& o);
  JetTensor& operator-=(const JetTensor& o);
  JetTensor& operator*=(Complex s);
  friend JetTensor operator+(JetTensor a, const JetTensor& b) { return a += b; }
  friend JetTensor operator-(JetTensor a, const JetTensor& b) { return a -= b; }
  friend JetTensor operator*(JetTensor a, Complex s) { return a *= s; }
  friend JetTensor operator*(Complex s, JetTensor a) { return a *= s; }
  JetTensor operator-() const { return *this * Complex(-1); }

 private:
  std::vector<int> shape_;
  int order_ = 0;
  int num_vars_ = 1;
  std::vector<CJet> data_;
};

/// Matrix product of rank-2 tensors at the lower of the two orders.
JetTensor matmul(const JetTensor& a, const JetTensor& b);
JetTensor transpose(const JetTensor& a);

/// Gauss-Jordan inverse with partial pivoting on the point values.
/// Throws DomainError when the value matrix is singular.
JetTensor inverse(const JetTensor& a);
CJet determinant(const JetTensor& a);

/// Largest |value| over the tensor.
double max_abs(const JetTensor& t);

}  // namespace bcv
