#include "bcv/monomial_basis.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace bcv {

namespace {

void enumerate_degree(int num_vars, int degree, std::vector<int>& current, int var, int remaining,
                      std::vector<int>& out) {
  if (var == num_vars - 1) {
    current[var] = remaining;
    out.insert(out.end(), current.begin(), current.end());
    return;
  }
  for (int e = remaining; e >= 0; --e) {
    current[var] = e;
    enumerate_degree(num_vars, degree, current, var + 1, remaining - e, out);
  }
  current[var] = 0;
}

}  // namespace

MonomialBasis::MonomialBasis(int num_vars, int order) : num_vars_(num_vars), order_(order) {
  if (num_vars < 1 || num_vars > kMaxVars) {
    throw std::invalid_argument("MonomialBasis: variable count " + std::to_string(num_vars) + " outside [1, " +
                                std::to_string(kMaxVars) + "]");
  }
  if (order < 0 || order > kMaxOrder) {
    throw std::invalid_argument("MonomialBasis: order " + std::to_string(order) + " outside [0, " +
                                std::to_string(kMaxOrder) + "]");
  }
  std::vector<int> current(num_vars, 0);
  for (int d = 0; d <= order; ++d) {
    enumerate_degree(num_vars, d, current, 0, d, exponents_);
    degrees_.resize(exponents_.size() / num_vars, d);
    degree_end_.push_back(degrees_.size());
  }

  sorted_keys_.reserve(size());
  for (std::size_t k = 0; k < size(); ++k) sorted_keys_.emplace_back(key(exponents(k)), static_cast<std::uint32_t>(k));
  std::sort(sorted_keys_.begin(), sorted_keys_.end());

  std::vector<int> sum(num_vars);
  for (std::size_t a = 0; a < size(); ++a) {
    const std::size_t rhs_end = prefix_size(order - degrees_[a]);
    for (std::size_t b = 0; b < rhs_end; ++b) {
      auto ea = exponents(a);
      auto eb = exponents(b);
      for (int v = 0; v < num_vars; ++v) sum[v] = ea[v] + eb[v];
      products_.push_back({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                           static_cast<std::uint32_t>(*index_of(sum))});
    }
  }

  derivative_terms_.resize(num_vars);
  if (order > 0) {
    // The order-1 basis is the prefix of this one, so lookups can use our own table.
    for (int v = 0; v < num_vars; ++v) {
      for (std::size_t k = 0; k < size(); ++k) {
        auto e = exponents(k);
        if (e[v] == 0) continue;
        std::vector<int> lowered(e.begin(), e.end());
        --lowered[v];
        derivative_terms_[v].push_back(
            {static_cast<std::uint32_t>(k), static_cast<std::uint32_t>(*index_of(lowered)), e[v]});
      }
    }
  }
}

std::uint64_t MonomialBasis::key(std::span<const int> exps) const {
  std::uint64_t k = 0;
  for (int e : exps) k = (k << 4) | static_cast<std::uint64_t>(e);
  return k;
}

std::optional<std::size_t> MonomialBasis::index_of(std::span<const int> exps) const {
  if (static_cast<int>(exps.size()) != num_vars_) return std::nullopt;
  int total = 0;
  for (int e : exps) {
    if (e < 0) return std::nullopt;
    total += e;
  }
  if (total > order_) return std::nullopt;
  const auto k = key(exps);
  auto it = std::lower_bound(sorted_keys_.begin(), sorted_keys_.end(), std::make_pair(k, std::uint32_t{0}));
  if (it == sorted_keys_.end() || it->first != k) return std::nullopt;
  return it->second;
}

std::shared_ptr<const MonomialBasis> MonomialBasis::get(int num_vars, int order) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, std::shared_ptr<const MonomialBasis>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[{num_vars, order}];
  if (!slot) slot = std::make_shared<const MonomialBasis>(num_vars, order);
  return slot;
}

}  // namespace bcv
