#include <doctest.h>

#include "bcv/courant.hpp"
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

HalfSection hol(const SectionE& s, std::span<const Complex> p, int order) {
  return half(section_eval(s, p, order), Chirality::Hol);
}

SectionE random_section(Rng& rng, int n, int degree) {
  SectionE s = SectionE::zero(n);
  for (auto* b : {&s.v, &s.vb, &s.w, &s.wb})
    for (auto& e : *b) e = random_polynomial(rng, n, degree, 1.0);
  return s;
}

}  // namespace

TEST_CASE("pairing_s examples") {
  const std::vector<Complex> p{2.0, 0.0};
  auto d1 = sec(1, {"1"}, {"0"});
  auto dz = sec(1, {"0"}, {"1"});
  CHECK(pairing_s(d1, dz, p).value() == Complex(1));
  CHECK(pairing_s(d1, d1, p).value() == Complex(0));
  CHECK(pairing_s(sec(1, {"1"}, {"z1"}), sec(1, {"1"}, {"1"}), p).value() == Complex(3));
}

TEST_CASE("dorfman examples") {
  const std::vector<Complex> p{0.3, -0.4, 0.1, 0.2};
  auto r1 = dorfman(sec(2, {"1", "0"}, {"0", "0"}), sec(2, {"0", "1"}, {"0", "0"}), p, 2);
  CHECK(max_coeff(half(r1, Chirality::Hol)) == 0.0);

  auto r2 = dorfman(sec(2, {"1", "0"}, {"0", "0"}), sec(2, {"z1", "0"}, {"0", "0"}), p, 2);
  CHECK(r2.v[0].value() == Complex(1));
  CHECK(r2.v[1].value() == Complex(0));

  auto r3 = dorfman(sec(2, {"0", "0"}, {"z2", "0"}), sec(2, {"0", "1"}, {"0", "0"}), p, 2);
  CHECK(r3.w[0].value() == Complex(-1));
  CHECK(r3.w[1].value() == Complex(0));

  // the antiholomorphic half uses zb derivatives only
  SectionE a = SectionE::zero(2), b = SectionE::zero(2);
  a.vb[0] = parse("1", 2);
  b.vb[0] = parse("zb1*z2", 2);
  auto r4 = dorfman(a, b, p, 2);
  CHECK(r4.vb[0].value() == p[1]);
  CHECK(max_coeff(half(r4, Chirality::Hol)) == 0.0);
}

TEST_CASE("Courant axioms") {
  std::vector<std::vector<Complex>> pts{{0.1, 0.2, 0.3, -0.1}};
  std::vector<SectionE> constant{sec(2, {"1", "2"}, {"0", "1"}), sec(2, {"0", "1i"}, {"3", "0"})};
  auto flat = check_courant_axioms(constant, {parse("1", 2)}, pts, 1e-12);
  for (const auto& c : flat.checks) CHECK(c.residual == 0.0);

  Rng rng(21);
  for (int n : {2, 3}) {
    std::vector<SectionE> S{random_section(rng, n, 2), random_section(rng, n, 2), random_section(rng, n, 2)};
    std::vector<Expr> F{random_polynomial(rng, n, 2, 1.0), random_polynomial(rng, n, 3, 1.0)};
    std::vector<std::vector<Complex>> P{random_point(rng, n, 0.5, false), random_point(rng, n, 0.5, false)};
    auto rep = check_courant_axioms(S, F, P, 1e-9);
    CHECK(rep.checks.size() == 6);
    for (const auto& c : rep.checks) {
      INFO(c.name);
      CHECK(c.residual <= 1e-9);
    }
  }

  // symmetrisation on a (d_1, z1 dz1) pair
  auto rep = check_courant_axioms({sec(1, {"1"}, {"z1"}), sec(1, {"z1"}, {"1"})}, {parse("z1*zb1", 1)},
                                  {{Complex(0.5), Complex(0.2)}}, 1e-9);
  CHECK(rep.residual("symmetric_part") <= 1e-9);

  CHECK_THROWS(check_courant_axioms({constant[0]}, {parse("1", 2)}, pts, 1e-9));
}

TEST_CASE("vertex operations") {
  const std::vector<Complex> o{0.0, 0.0};
  auto f = eval_jet(parse("z1*z1", 1), o, 3);
  auto st = vertex_star(f, constant_poly(hol(sec(1, {"1"}, {"0"}), o, 3)));
  CHECK(max_coeff(st[0]) == 0.0);
  CHECK(st[1].w[0].value() == Complex(2));
  CHECK(st[1].v[0].value() == Complex(0));

  const std::vector<Complex> p2{0.3, 0.2, -0.1, 0.4};
  auto b = vertex_bracket(constant_poly(hol(sec(2, {"1", "0"}, {"0", "0"}), p2, 3)),
                          constant_poly(hol(sec(2, {"0", "1"}, {"0", "0"}), p2, 3)));
  for (const auto& c : b.coeffs) CHECK(max_coeff(c) == 0.0);

  auto pr = vertex_pairing(constant_poly(hol(sec(2, {"z2", "0"}, {"0", "0"}), p2, 3)),
                           constant_poly(hol(sec(2, {"0", "z1"}, {"0", "0"}), p2, 3)));
  REQUIRE(pr.degree() == 2);
  CHECK(pr[2].value() == Complex(-1));
  CHECK(pr[1].value() == Complex(0));

  auto lim = quasiclassical_limit(vertex_bracket(constant_poly(hol(sec(1, {"1"}, {"0"}), o, 3)),
                                                 constant_poly(hol(sec(1, {"z1"}, {"0"}), o, 3))));
  CHECK(lim.v[0].value() == Complex(-1));
  auto lp = quasiclassical_limit(vertex_pairing(constant_poly(hol(sec(1, {"1"}, {"0"}), o, 3)),
                                                constant_poly(hol(sec(1, {"0"}, {"1"}), o, 3))));
  CHECK(lp.value() == Complex(-1));
  auto lvv = quasiclassical_limit(vertex_pairing(constant_poly(hol(sec(1, {"z1"}, {"0"}), o, 3)),
                                                 constant_poly(hol(sec(1, {"z1*z1"}, {"0"}), o, 3))));
  CHECK(lvv.value() == Complex(0));
}

TEST_CASE("vertex Leibniz identity and limits on random sections") {
  Rng rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2;
    auto p = random_point(rng, n, 0.5, false);
    auto a = constant_poly(hol(random_section(rng, n, 3), p, 5));
    auto b = constant_poly(hol(random_section(rng, n, 3), p, 5));
    auto c = constant_poly(hol(random_section(rng, n, 3), p, 5));
    auto lhs = vertex_bracket(a, vertex_bracket(b, c));
    auto r1 = vertex_bracket(vertex_bracket(a, b), c);
    auto r2 = vertex_bracket(b, vertex_bracket(a, c));
    CHECK(lhs.degree() == 4);
    CHECK(max_coeff_diff(lhs, r1 + r2) <= 1e-9);

    const auto A = a.coeffs[0], B = b.coeffs[0];
    auto lim = quasiclassical_limit(vertex_bracket(a, b));
    auto dor = dorfman(A, B, Chirality::Hol) * Complex(-1);
    const int o = std::min(lim.order(), dor.order());
    CHECK(max_coeff(lim.truncated(o) - dor.truncated(o)) <= 1e-12);
    auto plim = quasiclassical_limit(vertex_pairing(a, b));
    CHECK(max_coeff(plim.truncated(3) + pairing_s(A, B).truncated(3)) <= 1e-12);

    auto f = eval_jet(random_polynomial(rng, n, 3, 1.0), p, 5);
    auto g = eval_jet(random_polynomial(rng, n, 3, 1.0), p, 5);
    for (const auto& co : vertex_anchor(vertex_del(f, n), g).coeffs) CHECK(max_coeff(co) == 0.0);
  }
}
