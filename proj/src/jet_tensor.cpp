#include "bcv/jet_tensor.hpp"

#include <numeric>
#include <string>

namespace bcv {

JetTensor::JetTensor(std::vector<int> shape, int order, int num_vars)
    : shape_(std::move(shape)), order_(order), num_vars_(num_vars) {
  std::size_t n = 1;
  for (int e : shape_) {
    if (e < 0) throw JetError("JetTensor: negative extent");
    n *= static_cast<std::size_t>(e);
  }
  data_.assign(n, CJet::zero(order, num_vars));
}

std::size_t JetTensor::offset(std::span<const int> idx) const {
  if (idx.size() != shape_.size()) throw JetError("JetTensor: index rank mismatch");
  std::size_t off = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    if (idx[a] < 0 || idx[a] >= shape_[a]) throw JetError("JetTensor: index out of range");
    off = off * shape_[a] + idx[a];
  }
  return off;
}

std::vector<int> JetTensor::index_of(std::size_t flat) const {
  std::vector<int> idx(shape_.size());
  for (int a = rank() - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % shape_[a]);
    flat /= shape_[a];
  }
  return idx;
}

JetTensor JetTensor::truncated(int order) const {
  if (order == order_) return *this;
  JetTensor r(shape_, order, num_vars_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].truncated(order);
  return r;
}

JetTensor JetTensor::derivative(int var) const {
  JetTensor r(shape_, order_ - 1, num_vars_);
  for (std::size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k].derivative(var);
  return r;
}

Eigen::VectorXcd JetTensor::values() const {
  Eigen::VectorXcd v(static_cast<Eigen::Index>(data_.size()));
  for (std::size_t k = 0; k < data_.size(); ++k) v[static_cast<Eigen::Index>(k)] = data_[k].value();
  return v;
}

Eigen::MatrixXcd JetTensor::value_matrix() const {
  if (rank() != 2) throw JetError("value_matrix: rank-2 tensor required");
  Eigen::MatrixXcd m(shape_[0], shape_[1]);
  for (int i = 0; i < shape_[0]; ++i)
    for (int j = 0; j < shape_[1]; ++j) m(i, j) = (*this)(i, j).value();
  return m;
}

JetTensor& JetTensor::operator+=(const JetTensor& o) {
  if (o.shape_ != shape_) throw JetError("JetTensor add: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

JetTensor& JetTensor::operator-=(const JetTensor& o) {
  if (o.shape_ != shape_) throw JetError("JetTensor sub: shape mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

JetTensor& JetTensor::operator*=(Complex s) {
  for (auto& j : data_) j *= s;
  return *this;
}

JetTensor matmul(const JetTensor& a, const JetTensor& b) {
  if (a.rank() != 2 || b.rank() != 2 || a.extent(1) != b.extent(0)) throw JetError("matmul: shape mismatch");
  const int o = std::min(a.order(), b.order());
  const JetTensor A = a.truncated(o), B = b.truncated(o);
  JetTensor r({a.extent(0), b.extent(1)}, o, a.num_vars());
  for (int i = 0; i < a.extent(0); ++i)
    for (int j = 0; j < b.extent(1); ++j)
      for (int k = 0; k < a.extent(1); ++k) r(i, j) += A(i, k) * B(k, j);
  return r;
}

JetTensor transpose(const JetTensor& a) {
  if (a.rank() != 2) throw JetError("transpose: rank-2 tensor required");
  JetTensor r({a.extent(1), a.extent(0)}, a.order(), a.num_vars());
  for (int i = 0; i < a.extent(0); ++i)
    for (int j = 0; j < a.extent(1); ++j) r(j, i) = a(i, j);
  return r;
}

namespace {

// LU-style elimination shared by inverse and determinant. Returns the sign of the
// row permutation and leaves `a` reduced to the identity, `inv` holding the inverse.
CJet eliminate(JetTensor a, JetTensor* inv) {
  if (a.rank() != 2 || a.extent(0) != a.extent(1)) throw JetError("inverse: square matrix required");
  const int n = a.extent(0);
  const double scale = std::max(1.0, max_abs(a));
  CJet det = CJet::constant(1.0, a.order(), a.num_vars());
  for (int c = 0; c < n; ++c) {
    int p = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(a(r, c).value()) > std::abs(a(p, c).value())) p = r;
    if (std::abs(a(p, c).value()) <= 1e-13 * scale) throw DomainError("singular matrix at the evaluation point");
    if (p != c) {
      for (int k = 0; k < n; ++k) {
        std::swap(a(p, k), a(c, k));
        if (inv) std::swap((*inv)(p, k), (*inv)(c, k));
      }
      det = -det;
    }
    const CJet pivot = a(c, c);
    const CJet rp = reciprocal(pivot);
    det = det * pivot;
    for (int k = 0; k < n; ++k) {
      a(c, k) = a(c, k) * rp;
      if (inv) (*inv)(c, k) = (*inv)(c, k) * rp;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      const CJet f = a(r, c);
      for (int k = 0; k < n; ++k) {
        a(r, k) -= f * a(c, k);
        if (inv) (*inv)(r, k) -= f * (*inv)(c, k);
      }
    }
  }
  return det;
}

}  // namespace

JetTensor inverse(const JetTensor& a) {
  JetTensor inv(a.shape(), a.order(), a.num_vars());
  for (int i = 0; i < a.extent(0); ++i) inv(i, i) = CJet::constant(1.0, a.order(), a.num_vars());
  eliminate(a, &inv);
  return inv;
}

CJet determinant(const JetTensor& a) { return eliminate(a, nullptr); }

double max_abs(const JetTensor& t) {
  double m = 0;
  for (const auto& j : t.data()) m = std::max(m, std::abs(j.value()));
  return m;
}

}  // namespace bcv
