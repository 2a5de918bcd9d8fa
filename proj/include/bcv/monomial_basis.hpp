#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace bcv {

/// Exponent vectors of total degree <= order over `num_vars` variables, in graded
/// lexicographic order. A basis of lower order is always a prefix of a basis of
/// higher order with the same variable count, so truncation is a resize.
///
/// Instances are interned: `get` returns the shared instance for a shape.
class MonomialBasis {
 public:
  static constexpr int kMaxVars = 16;
  static constexpr int kMaxOrder = 6;

  struct ProductTerm {
    std::uint32_t lhs;
    std::uint32_t rhs;
    std::uint32_t out;
  };

  struct DerivativeTerm {
    std::uint32_t src;
    std::uint32_t dst;  // index into the basis of order - 1
    int factor;
  };

  static std::shared_ptr<const MonomialBasis> get(int num_vars, int order);

  int num_vars() const { return num_vars_; }
  int order() const { return order_; }
  std::size_t size() const { return degrees_.size(); }

  std::span<const int> exponents(std::size_t k) const {
    return {exponents_.data() + k * num_vars_, static_cast<std::size_t>(num_vars_)};
  }
  int degree(std::size_t k) const { return degrees_[k]; }

  /// Number of monomials of total degree <= d.
  std::size_t prefix_size(int d) const { return degree_end_[d]; }

  std::optional<std::size_t> index_of(std::span<const int> exps) const;

  /// All (lhs, rhs, out) with deg(lhs) + deg(rhs) <= order.
  const std::vector<ProductTerm>& products() const { return products_; }

  const std::vector<DerivativeTerm>& derivative_terms(int var) const { return derivative_terms_[var]; }

  MonomialBasis(int num_vars, int order);

 private:
  std::uint64_t key(std::span<const int> exps) const;

  int num_vars_;
  int order_;
  std::vector<int> exponents_;
  std::vector<int> degrees_;
  std::vector<std::size_t> degree_end_;
  std::vector<std::pair<std::uint64_t, std::uint32_t>> sorted_keys_;
  std::vector<ProductTerm> products_;
  std::vector<std::vector<DerivativeTerm>> derivative_terms_;
};

}  // namespace bcv
