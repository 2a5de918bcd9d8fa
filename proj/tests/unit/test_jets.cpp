#include <doctest.h>

#include <random>

#include "bcv/jet.hpp"

using namespace bcv;

namespace {

CJet random_jet(std::mt19937_64& rng, int order, int nv) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  CJet j = CJet::zero(order, nv);
  for (auto& c : j.coeffs()) c = {u(rng), u(rng)};
  return j;
}

bool close(Complex a, Complex b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

TEST_CASE("jet_var seeds one variable") {
  auto x = CJet::variable(0, {2, 0}, 2, 2);
  CHECK(x.value() == Complex(2, 0));
  CHECK(x.coeff(std::vector{1, 0}) == Complex(1));
  CHECK(x.coeff(std::vector{0, 1}) == Complex(0));
  CHECK(x.coeff(std::vector{2, 0}) == Complex(0));

  auto y = CJet::variable(1, 0.0, 1, 2);
  CHECK(y.value() == Complex(0));
  CHECK(y.coeff(std::vector{0, 1}) == Complex(1));

  CHECK_THROWS_AS(CJet::variable(3, 1.0, 2, 2), JetError);
}

TEST_CASE("arithmetic examples") {
  auto x = CJet::variable(0, 3.0, 2, 1);
  auto sq = x * x;
  CHECK(sq.coeff(std::vector{0}) == Complex(9));
  CHECK(sq.coeff(std::vector{1}) == Complex(6));
  CHECK(sq.coeff(std::vector{2}) == Complex(1));

  auto e = exp(CJet::variable(0, 0.0, 3, 1));
  CHECK(std::abs(e.coeff(std::vector{0}) - 1.0) < 1e-15);
  CHECK(std::abs(e.coeff(std::vector{1}) - 1.0) < 1e-15);
  CHECK(std::abs(e.coeff(std::vector{2}) - 0.5) < 1e-15);
  CHECK(std::abs(e.coeff(std::vector{3}) - 1.0 / 6.0) < 1e-15);

  auto t = CJet::variable(0, 0.0, 2, 1);
  auto g = Complex(1) / (Complex(1) + t);
  CHECK(std::abs(g.coeff(std::vector{0}) - 1.0) < 1e-15);
  CHECK(std::abs(g.coeff(std::vector{1}) + 1.0) < 1e-15);
  CHECK(std::abs(g.coeff(std::vector{2}) - 1.0) < 1e-15);
}

TEST_CASE("errors") {
  auto a = CJet::variable(0, 0.0, 2, 1);
  auto b = CJet::variable(0, 0.0, 3, 1);
  CHECK_THROWS_AS(a + b, JetError);
  CHECK_THROWS_AS(a * b, JetError);
  CHECK_THROWS_AS(CJet::constant(1.0, 2, 1) / a, DomainError);
  CHECK_THROWS_AS(log(a), DomainError);
  CHECK_THROWS_AS(pow(a, -1), DomainError);
  CHECK_THROWS_AS(b.partial(std::vector{4}), JetError);
}

TEST_CASE("jet_partial") {
  auto e = exp(CJet::variable(0, 0.0, 3, 1));
  CHECK(std::abs(e.partial(std::vector{2}) - 1.0) < 1e-15);
  auto x = CJet::variable(0, 1.0, 2, 2);
  auto y = CJet::variable(1, 1.0, 2, 2);
  CHECK((x * y).partial(std::vector{1, 1}) == Complex(1));
  auto c = pow(x, 3);
  CHECK(std::abs(c.partial(std::vector{2, 0}) - 6.0) < 1e-14);
}

TEST_CASE("derivative lowers order") {
  auto x = CJet::variable(0, 2.0, 3, 2);
  auto y = CJet::variable(1, -1.0, 3, 2);
  auto f = x * x * y;  // d/dx = 2xy
  auto fx = f.derivative(0);
  CHECK(fx.order() == 2);
  CHECK(close(fx.value(), -4.0, 1e-14));
  CHECK(close(fx.partial(std::vector{0, 1}), 4.0, 1e-14));
  CHECK(close(fx.partial(std::vector{1, 1}), 2.0, 1e-14));
  CHECK_THROWS_AS(CJet::constant(1.0, 0, 1).derivative(0), JetError);
}

TEST_CASE("Leibniz on random jets") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_jet(rng, 3, 4);
    auto b = random_jet(rng, 3, 4);
    auto p = a * b;
    for (int i = 0; i < 4; ++i) {
      Complex expected = a.partial(i) * b.value() + a.value() * b.partial(i);
      CHECK(close(p.partial(i), expected, 1e-12));
    }
  }
}

TEST_CASE("exp(log(a)) = a") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    auto a = random_jet(rng, 4, 3);
    a.coeffs()[0] = {1.5 + trial * 0.01, 0.0};
    auto r = exp(log(a));
    for (std::size_t k = 0; k < a.coeffs().size(); ++k) CHECK(close(r.coeffs()[k], a.coeffs()[k], 1e-12));
  }
}

TEST_CASE("pow and reciprocal agree") {
  std::mt19937_64 rng(3);
  auto a = random_jet(rng, 3, 2);
  a.coeffs()[0] = {2.0, 0.5};
  auto lhs = pow(a, -3);
  auto rhs = Complex(1) / (a * a * a);
  for (std::size_t k = 0; k < a.coeffs().size(); ++k) CHECK(close(lhs.coeffs()[k], rhs.coeffs()[k], 1e-12));
}

TEST_CASE("finite differences on a fixed function") {
  // f(x, y) = exp(x y) / (1 + x^2)
  auto f = [](Complex x, Complex y) { return std::exp(x * y) / (1.0 + x * x); };
  const Complex x0(0.3, 0.1), y0(-0.7, 0.2);
  auto x = CJet::variable(0, x0, 2, 2);
  auto y = CJet::variable(1, y0, 2, 2);
  auto j = exp(x * y) / (Complex(1) + x * x);
  const double h = 1e-4;
  Complex fx = (f(x0 + h, y0) - f(x0 - h, y0)) / (2 * h);
  Complex fxy = (f(x0 + h, y0 + h) - f(x0 + h, y0 - h) - f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) / (4 * h * h);
  Complex fyy = (f(x0, y0 + h) - 2.0 * f(x0, y0) + f(x0, y0 - h)) / (h * h);
  CHECK(close(j.partial(std::vector{1, 0}), fx, 1e-6));
  CHECK(close(j.partial(std::vector{1, 1}), fxy, 1e-6));
  CHECK(close(j.partial(std::vector{0, 2}), fyy, 1e-6));
}
