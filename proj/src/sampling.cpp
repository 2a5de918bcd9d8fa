#include "bcv/sampling.hpp"

#include <functional>

namespace bcv {

Complex random_complex(Rng& rng, double radius) {
  std::uniform_real_distribution<double> u(-radius, radius);
  const double re = u(rng);
  return {re, u(rng)};
}

std::vector<Complex> random_point(Rng& rng, int n, double radius, bool real_slice) {
  std::vector<Complex> p(2 * n);
  for (int i = 0; i < n; ++i) p[i] = random_complex(rng, radius);
  for (int i = 0; i < n; ++i) p[n + i] = real_slice ? std::conj(p[i]) : random_complex(rng, radius);
  return p;
}

Expr random_polynomial(Rng& rng, int n, int degree, double scale, VarSet vars) {
  std::vector<int> slots;
  if (vars != VarSet::Antiholomorphic)
    for (int i = 0; i < n; ++i) slots.push_back(i);
  if (vars != VarSet::Holomorphic)
    for (int i = 0; i < n; ++i) slots.push_back(n + i);
  auto basis = MonomialBasis::get(static_cast<int>(slots.size()), degree);
  Expr sum = Expr::literal(random_complex(rng, scale));
  for (std::size_t k = 1; k < basis->size(); ++k) {
    Expr term = Expr::literal(random_complex(rng, scale));
    auto e = basis->exponents(k);
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v] == 0) continue;
      const int slot = slots[v];
      Expr c = Expr::coord(slot % n, slot >= n);
      term = term * (e[v] == 1 ? c : pow(c, e[v]));
    }
    sum = sum + term;
  }
  return sum;
}

Expr random_expression(Rng& rng, int n, int depth, std::span<const Complex> point) {
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<int> var(0, 2 * n - 1);
  std::function<Expr(int)> gen = [&](int d) -> Expr {
    if (d == 0) {
      if (pick(rng) % 3 == 0) return Expr::literal(random_complex(rng, 1.0));
      const int s = var(rng);
      return Expr::coord(s % n, s >= n);
    }
    switch (pick(rng)) {
      case 0:
        return gen(d - 1) + gen(d - 1);
      case 1:
        return gen(d - 1) - gen(d - 1);
      case 2:
        return gen(d - 1) * gen(d - 1);
      case 3:
        return -gen(d - 1);
      case 4:
        return exp(Expr::literal(0.5) * gen(d - 1));
      case 5: {
        for (;;) {
          Expr den = Expr::literal(2.0) + gen(d - 1);
          if (std::abs(eval_value(den, point)) >= 0.5) return gen(d - 1) / den;
        }
      }
      case 6: {
        for (;;) {
          Expr arg = Expr::literal(2.0) + gen(d - 1);
          const Complex a = eval_value(arg, point);
          // keep away from the branch cut of the principal logarithm
          if (std::abs(a) >= 0.5 && a.real() > 0) return log(arg);
        }
      }
      default: {
        std::uniform_int_distribution<int> e(-2, 3);
        for (;;) {
          Expr base = gen(d - 1);
          const int m = e(rng);
          if (m >= 0 || std::abs(eval_value(base, point)) >= 0.5) return pow(base, m);
        }
      }
    }
  };
  return gen(depth);
}

}  // namespace bcv
