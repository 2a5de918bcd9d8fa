#include <doctest.h>

#include "bcv/homotopy.hpp"
#include "bcv/sampling.hpp"

using namespace bcv;

namespace {

SectionE sec(int n, std::vector<std::string> v, std::vector<std::string> w) {
  SectionE s = SectionE::zero(n);
  for (int i = 0; i < n; ++i) {
    s.v[i] = parse(v[i], n);
    s.w[i] = parse(w[i], n);
  }
  return s;
}

SectionE random_section(Rng& rng, int n) {
  SectionE s = SectionE::zero(n);
  for (auto* b : {&s.v, &s.w})
    for (auto& e : *b) e = random_polynomial(rng, n, 3, 1.0);
  return s;
}

GradedElement random_element(Rng& rng, int n, int degree) {
  const Expr f = random_polynomial(rng, n, 3, 1.0);
  if (degree == 1 || degree == 2) return GradedElement::make(n, degree, f, random_section(rng, n));
  return GradedElement::make(n, degree, f);
}

Chart random_chart(Rng& rng, int n) {
  const Expr q = random_polynomial(rng, n, 3, 1.0, VarSet::Holomorphic);
  const Expr qb = random_polynomial(rng, n, 3, 1.0, VarSet::Antiholomorphic);
  return Chart{n, q + qb, {}};
}

}  // namespace

TEST_CASE("q_diff examples") {
  const std::vector<Complex> p{0.3, 0.1};
  const Chart flat{1, Expr(), {}};
  auto r = q_diff(GradedElement::make(1, 0, parse("z1", 1)), flat, p, 2);
  CHECK(r.degree == 1);
  CHECK(r.scalar.value() == Complex(0));
  CHECK(r.section->v[0].value() == Complex(0));
  CHECK(r.section->w[0].value() == Complex(1));

  const double lambda = 0.4;
  const Chart dil{1, Expr::literal(-2 * lambda) * parse("z1", 1), {}};
  auto s = q_diff(GradedElement::make(1, 1, Expr(), sec(1, {"1"}, {"0"})), dil, p, 2);
  CHECK(s.degree == 2);
  CHECK(std::abs(s.scalar.value() - Complex(lambda)) <= 1e-15);
  CHECK(max_coeff(*s.section) == 0.0);

  CHECK_THROWS_AS(q_diff(GradedElement::make(1, 3, parse("z1", 1)), flat, p, 2), std::invalid_argument);
  CHECK_THROWS_AS(GradedElement::make(1, 1, parse("z1", 1)), std::invalid_argument);
}

TEST_CASE("Q squares to zero and anticommutes with b") {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 3;
    const Chart chart = random_chart(rng, n);
    const auto p = random_point(rng, n, 0.5, false);
    const CJet f = eval_jet(chart.volume_exponent, p, 4);
    for (int degree : {0, 1}) {
      const GradedJets e = graded_eval(random_element(rng, n, degree), p, 4);
      CHECK(max_coeff(q_diff(q_diff(e, f), f)) <= 1e-10);
    }
    for (int degree : {1, 2}) {
      const GradedJets e = graded_eval(random_element(rng, n, degree), p, 4);
      const GradedJets qb = q_diff(b_op(e), f);
      const GradedJets bq = b_op(q_diff(e, f));
      GradedJets sum = difference(qb, GradedJets{bq.degree, -bq.scalar,
                                                 bq.section ? std::optional(*bq.section * Complex(-1)) : std::nullopt});
      CHECK(max_coeff(sum) <= 1e-10);
    }
  }
}

TEST_CASE("b squares to zero") {
  Rng rng(3);
  for (int degree : {2, 3}) {
    const GradedElement e = random_element(rng, 2, degree);
    const GradedElement bb = b_op(b_op(e));
    CHECK(bb.scalar.is_zero());
    if (bb.section) {
      for (const auto& x : bb.section->v) CHECK(x.is_zero());
      for (const auto& x : bb.section->w) CHECK(x.is_zero());
    }
    const auto p = random_point(rng, 2, 0.5);
    CHECK(max_coeff(b_op(b_op(graded_eval(e, p, 2)))) == 0.0);
  }
  CHECK_THROWS_AS(b_op(GradedElement::make(1, 0, parse("z1", 1))), std::invalid_argument);
}

TEST_CASE("m0") {
  const std::vector<Complex> p{0.2, 0.5, 0.2, 0.5};
  auto el = [&](int degree, SectionE s) { return graded_eval(GradedElement::make(2, degree, Expr(), s), p, 2); };
  auto d1 = el(1, sec(2, {"1", "0"}, {"0", "0"}));
  auto dz1 = el(1, sec(2, {"0", "0"}, {"1", "0"}));
  auto d2 = el(1, sec(2, {"0", "1"}, {"0", "0"}));
  CHECK(m0(d1, dz1).value() == Complex(1));
  CHECK(m0(d1, d2).value() == Complex(0));
  CHECK(m0(graded_eval(GradedElement::make(2, 0, parse("z1", 2)), p, 2), dz1).value() == Complex(0));

  Rng rng(6);
  for (int k = 0; k < 10; ++k) {
    auto a = graded_eval(random_element(rng, 2, 1), p, 3);
    auto b = graded_eval(random_element(rng, 2, 1), p, 3);
    const CJet ab = m0(a, b), ba = m0(b, a);
    for (std::size_t c = 0; c < ab.coeffs().size(); ++c) CHECK(ab.coeffs()[c] == ba.coeffs()[c]);
  }
}

TEST_CASE("n0") {
  const std::vector<Complex> p{0.2, 0.5, 0.2, 0.5};
  auto el = [&](int degree, SectionE s, std::string f = "0") {
    return graded_eval(GradedElement::make(2, degree, parse(f, 2), s), p, 2);
  };
  auto d1 = el(1, sec(2, {"1", "0"}, {"0", "0"}));
  auto d2 = el(1, sec(2, {"0", "1"}, {"0", "0"}));
  auto dz1 = el(1, sec(2, {"0", "0"}, {"1", "0"}));

  auto r = n0(d1, d2, dz1);
  REQUIRE(r);
  CHECK(r->degree == 1);
  CHECK(r->section->v[0].value() == Complex(0));
  CHECK(r->section->v[1].value() == Complex(-1));
  CHECK(max_coeff(r->scalar) == 0.0);

  auto zero = n0(d1, d2, d1);
  REQUIRE(zero);
  CHECK(max_coeff(*zero) == 0.0);

  auto vt = el(2, sec(2, {"z1", "2"}, {"0", "zb2"}), "3+z2");
  for (auto res : {n0(vt, d1, dz1), n0(d1, vt, dz1)}) {
    REQUIRE(res);
    CHECK(res->degree == 2);
    CHECK(max_coeff(difference(*res, vt)) <= 1e-15);
  }
  CHECK_FALSE(n0(d1, d1, vt).has_value());
}
