#pragma once

#include <cmath>
#include <complex>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <Eigen/Core>

#include "bcv/monomial_basis.hpp"

namespace bcv {

class JetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a jet operation leaves the function's domain (division by a jet
/// with zero constant term, logarithm of zero).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

namespace detail {
template <typename T>
struct is_complex : std::false_type {};
template <typename T>
struct is_complex<std::complex<T>> : std::true_type {};
}  // namespace detail

/// Truncated multivariate Taylor expansion f(x0 + dx) = sum_a c_a dx^a, |a| <= order.
///
/// Coefficients are stored densely in the order of `MonomialBasis`. Jets are
/// values: every operation returns a new jet. Binary operations require equal
/// order and variable count; use `truncated` to bring operands to a common order.
/// Differentiating lowers the order by one.
template <typename Scalar>
class Jet {
 public:
  using Real = typename Eigen::NumTraits<Scalar>::Real;

  Jet() = default;

  Jet(std::shared_ptr<const MonomialBasis> basis, std::vector<Scalar> coeffs)
      : basis_(std::move(basis)), coeffs_(std::move(coeffs)) {
    if (!basis_ || coeffs_.size() != basis_->size()) throw JetError("Jet: coefficient count does not match basis");
  }

  static Jet constant(Scalar value, int order, int num_vars) {
    auto basis = MonomialBasis::get(num_vars, order);
    std::vector<Scalar> c(basis->size(), Scalar(0));
    c[0] = value;
    return Jet(std::move(basis), std::move(c));
  }

  static Jet zero(int order, int num_vars) { return constant(Scalar(0), order, num_vars); }

  /// The coordinate function x_index expanded at x_index = value.
  static Jet variable(int index, Scalar value, int order, int num_vars) {
    if (index < 0 || index >= num_vars) {
      throw JetError("jet_var: variable index " + std::to_string(index) + " out of range for " +
                     std::to_string(num_vars) + " variables");
    }
    Jet j = constant(value, order, num_vars);
    if (order >= 1) j.coeffs_[1 + index] = Scalar(1);
    return j;
  }

  bool valid() const { return static_cast<bool>(basis_); }
  int order() const { return basis().order(); }
  int num_vars() const { return basis().num_vars(); }
  const MonomialBasis& basis() const {
    if (!basis_) throw JetError("Jet: use of an uninitialised jet");
    return *basis_;
  }
  const std::shared_ptr<const MonomialBasis>& basis_ptr() const { return basis_; }

  Scalar value() const { return coeffs_.at(0); }
  std::span<const Scalar> coeffs() const { return coeffs_; }
  std::span<Scalar> coeffs() { return coeffs_; }

  /// Taylor coefficient of dx^a; zero when |a| exceeds the order.
  Scalar coeff(std::span<const int> a) const {
    auto k = basis().index_of(a);
    return k ? coeffs_[*k] : Scalar(0);
  }

  /// Mixed partial derivative d^a f at the expansion point: a! * c_a.
  Scalar partial(std::span<const int> a) const {
    int total = 0;
    for (int e : a) total += e;
    if (static_cast<int>(a.size()) != num_vars()) throw JetError("jet_partial: multi-index has wrong length");
    if (total > order()) {
      throw JetError("jet_partial: derivative degree " + std::to_string(total) + " exceeds jet order " +
                     std::to_string(order()));
    }
    Real fact = 1;
    for (int e : a)
      for (int m = 2; m <= e; ++m) fact *= m;
    return coeff(a) * fact;
  }

  /// First partial along one variable.
  Scalar partial(int var) const {
    if (order() < 1) throw JetError("jet_partial: first derivative of an order-0 jet");
    return coeffs_.at(1 + var);
  }

  /// The jet of d f / d x_var, one order lower.
  Jet derivative(int var) const {
    if (order() < 1) throw JetError("Jet::derivative: insufficient jet order");
    if (var < 0 || var >= num_vars()) throw JetError("Jet::derivative: variable index out of range");
    auto lower = MonomialBasis::get(num_vars(), order() - 1);
    std::vector<Scalar> c(lower->size(), Scalar(0));
    for (const auto& t : basis().derivative_terms(var)) c[t.dst] = coeffs_[t.src] * Real(t.factor);
    return Jet(std::move(lower), std::move(c));
  }

  Jet truncated(int new_order) const {
    if (new_order > order()) throw JetError("Jet::truncated: cannot raise jet order");
    if (new_order == order()) return *this;
    auto lower = MonomialBasis::get(num_vars(), new_order);
    std::vector<Scalar> c(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lower->size()));
    return Jet(std::move(lower), std::move(c));
  }

  Jet& operator+=(const Jet& o) {
    check_compatible(o, "add");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    check_compatible(o, "sub");
    for (std::size_t k = 0; k < coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
    return *this;
  }
  Jet& operator*=(const Jet& o) { return *this = *this * o; }
  Jet& operator/=(const Jet& o) { return *this = *this / o; }

  Jet& operator+=(Scalar s) {
    coeffs_.at(0) += s;
    return *this;
  }
  Jet& operator-=(Scalar s) {
    coeffs_.at(0) -= s;
    return *this;
  }
  Jet& operator*=(Scalar s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }
  Jet& operator/=(Scalar s) {
    for (auto& c : coeffs_) c /= s;
    return *this;
  }

  Jet operator-() const {
    Jet r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator+(Jet a, Scalar s) { return a += s; }
  friend Jet operator+(Scalar s, Jet a) { return a += s; }
  friend Jet operator-(Jet a, Scalar s) { return a -= s; }
  friend Jet operator-(Scalar s, const Jet& a) { return (-a) += s; }
  friend Jet operator*(Jet a, Scalar s) { return a *= s; }
  friend Jet operator*(Scalar s, Jet a) { return a *= s; }
  friend Jet operator/(Jet a, Scalar s) { return a /= s; }
  friend Jet operator/(Scalar s, const Jet& a) { return reciprocal(a) *= s; }

  friend Jet operator*(const Jet& a, const Jet& b) {
    a.check_compatible(b, "mul");
    std::vector<Scalar> c(a.coeffs_.size(), Scalar(0));
    for (const auto& t : a.basis().products()) c[t.out] += a.coeffs_[t.lhs] * b.coeffs_[t.rhs];
    return Jet(a.basis_, std::move(c));
  }

  friend Jet operator/(const Jet& a, const Jet& b) {
    a.check_compatible(b, "div");
    return a * reciprocal(b);
  }

  /// 1/a via the geometric series in the nilpotent part.
  friend Jet reciprocal(const Jet& a) {
    const Scalar a0 = a.value();
    if (a0 == Scalar(0)) throw DomainError("jet division by a jet with zero constant term");
    std::vector<Scalar> series(a.order() + 1);
    Scalar p = Scalar(1) / a0;
    for (int k = 0; k <= a.order(); ++k) {
      series[k] = p;
      p *= -Scalar(1) / a0;
    }
    return compose(a, series);
  }

  friend Jet exp(const Jet& a) {
    std::vector<Scalar> series(a.order() + 1);
    Scalar e = std::exp(a.value());
    Real fact = 1;
    for (int k = 0; k <= a.order(); ++k) {
      if (k > 0) fact *= k;
      series[k] = e / fact;
    }
    return compose(a, series);
  }

  /// Principal branch for complex scalars.
  friend Jet log(const Jet& a) {
    const Scalar a0 = a.value();
    if (a0 == Scalar(0)) throw DomainError("jet logarithm of a jet with zero constant term");
    if constexpr (!detail::is_complex<Scalar>::value) {
      if (a0 < Scalar(0)) throw DomainError("jet logarithm of a negative real constant term");
    }
    std::vector<Scalar> series(a.order() + 1);
    series[0] = std::log(a0);
    Scalar p = Scalar(1);
    for (int k = 1; k <= a.order(); ++k) {
      p /= a0;
      series[k] = ((k % 2 == 1) ? p : -p) / Real(k);
    }
    return compose(a, series);
  }

  /// Integer powers; negative exponents require a nonzero constant term.
  friend Jet pow(const Jet& a, int m) {
    if (m < 0) return reciprocal(pow(a, -m));
    Jet result = constant(Scalar(1), a.order(), a.num_vars());
    Jet base = a;
    while (m > 0) {
      if (m & 1) result = result * base;
      m >>= 1;
      if (m) base = base * base;
    }
    return result;
  }

  /// sum_k series[k] * (a - a0)^k, evaluated by Horner's rule. series has order+1 entries.
  friend Jet compose(const Jet& a, std::span<const Scalar> series) {
    Jet nil = a;
    nil.coeffs_[0] = Scalar(0);
    Jet r = constant(series[a.order()], a.order(), a.num_vars());
    for (int k = a.order() - 1; k >= 0; --k) {
      r = r * nil;
      r.coeffs_[0] += series[k];
    }
    return r;
  }

 private:
  void check_compatible(const Jet& o, const char* op) const {
    if (!basis_ || !o.basis_) throw JetError(std::string("jet ") + op + ": uninitialised operand");
    if (basis_ != o.basis_) {
      throw JetError(std::string("jet ") + op + ": operands differ in order or variable count (" +
                     std::to_string(order()) + "/" + std::to_string(num_vars()) + " vs " +
                     std::to_string(o.order()) + "/" + std::to_string(o.num_vars()) + ")");
    }
  }

  std::shared_ptr<const MonomialBasis> basis_;
  std::vector<Scalar> coeffs_;
};

using CJet = Jet<Complex>;

/// Relabels variables: variable v of `a` becomes variable perm[v] of the result.
template <typename Scalar>
Jet<Scalar> permute_vars(const Jet<Scalar>& a, std::span<const int> perm) {
  if (static_cast<int>(perm.size()) != a.num_vars()) throw JetError("permute_vars: permutation has wrong length");
  const auto& basis = a.basis();
  Jet<Scalar> r = Jet<Scalar>::zero(a.order(), a.num_vars());
  std::vector<int> e(a.num_vars());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    auto src = basis.exponents(k);
    for (int v = 0; v < a.num_vars(); ++v) e[perm[v]] = src[v];
    r.coeffs()[*basis.index_of(e)] = a.coeffs()[k];
  }
  return r;
}

/// Brings two jets to their common (lower) order.
template <typename Scalar>
std::pair<Jet<Scalar>, Jet<Scalar>> common_order(const Jet<Scalar>& a, const Jet<Scalar>& b) {
  const int o = std::min(a.order(), b.order());
  return {a.truncated(o), b.truncated(o)};
}

}  // namespace bcv
