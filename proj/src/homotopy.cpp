#include "bcv/homotopy.hpp"

#include <stdexcept>

namespace bcv {

namespace {

bool has_section(int degree) { return degree == 1 || degree == 2; }

void check_degree(int degree) {
  if (degree < 0 || degree > 3) throw std::invalid_argument("graded element: degree must be 0..3");
}

int nvars(const GradedJets& e) { return e.scalar.num_vars(); }

}  // namespace

GradedElement GradedElement::make(int dim, int degree, Expr scalar, std::optional<SectionE> section) {
  check_degree(degree);
  if (scalar.max_coord_index() > dim || (section && section->dim != dim)) {
    throw std::invalid_argument("graded element: parts do not match the dimension");
  }
  if (has_section(degree) != section.has_value()) {
    throw std::invalid_argument("graded element: a section part is required exactly in degrees 1 and 2");
  }
  return {dim, degree, std::move(scalar), std::move(section)};
}

int GradedJets::order() const { return section ? std::min(scalar.order(), section->order()) : scalar.order(); }

GradedJets graded_eval(const GradedElement& e, std::span<const Complex> point, int order, const ParamValues& params) {
  check_degree(e.degree);
  GradedJets out{e.degree, eval_jet(e.scalar, point, order, params), std::nullopt};
  if (e.section) out.section = half(section_eval(*e.section, point, order, params), Chirality::Hol);
  return out;
}

CJet weighted_div(const HalfSection& a, const CJet& f_omega) {
  const int n = static_cast<int>(a.v.size());
  const int K = std::min(a.order(), f_omega.order()) - 1;
  if (K < 0) throw JetError("weighted_div: insufficient jet order");
  CJet acc = CJet::zero(K, f_omega.num_vars());
  for (int i = 0; i < n; ++i) acc += a.v[i].derivative(i) + a.v[i].truncated(K) * f_omega.derivative(i).truncated(K);
  return acc;
}

GradedJets q_diff(const GradedJets& e, const CJet& f_omega) {
  const int K = std::min(e.order(), f_omega.order()) - 1;
  if (K < 0) throw JetError("q_diff: insufficient jet order");
  const int nv = nvars(e);
  switch (e.degree) {
    case 0: {
      const int n = nv / 2;
      return {1, CJet::zero(K, nv), differential(e.scalar, Chirality::Hol, n).truncated(K)};
    }
    case 1: {
      const int n = static_cast<int>(e.section->v.size());
      CJet s = e.scalar.truncated(K) - weighted_div(*e.section, f_omega) * Complex(0.5);
      return {2, s, differential(e.scalar, Chirality::Hol, n).truncated(K)};
    }
    case 2:
      return {3, weighted_div(*e.section, f_omega) * Complex(0.5), std::nullopt};
    default:
      throw std::invalid_argument("q_diff: degree 3 has no image");
  }
}

GradedJets q_diff(const GradedElement& e, const Chart& chart, std::span<const Complex> point, int order) {
  return q_diff(graded_eval(e, point, order, chart.params), eval_jet(chart.volume_exponent, point, order, chart.params));
}

GradedJets b_op(const GradedJets& e) {
  switch (e.degree) {
    case 1:
      return {0, e.scalar, std::nullopt};
    case 2:
      return {1, CJet::zero(e.scalar.order(), nvars(e)), *e.section * Complex(-1)};
    case 3: {
      const int n = nvars(e) / 2;
      return {2, -e.scalar, HalfSection::zero(n, e.scalar.order(), nvars(e))};
    }
    default:
      throw std::invalid_argument("b_op: degree 0 has no image");
  }
}

GradedElement b_op(const GradedElement& e) {
  switch (e.degree) {
    case 1:
      return GradedElement::make(e.dim, 0, e.scalar);
    case 2: {
      SectionE s = *e.section;
      for (auto* part : {&s.v, &s.w})
        for (auto& x : *part) x = -x;
      return GradedElement::make(e.dim, 1, Expr(), s);
    }
    case 3:
      return GradedElement::make(e.dim, 2, -e.scalar, SectionE::zero(e.dim));
    default:
      throw std::invalid_argument("b_op: degree 0 has no image");
  }
}

CJet m0(const GradedJets& a1, const GradedJets& a2) {
  if (a1.degree != 1 || a2.degree != 1) {
    return CJet::zero(std::min(a1.order(), a2.order()), nvars(a1));
  }
  // symmetrized so that m0(a, b) == m0(b, a) holds bit for bit
  return (pairing_s(*a1.section, *a2.section) + pairing_s(*a2.section, *a1.section)) * Complex(0.5);
}

std::optional<GradedJets> n0(const GradedJets& a1, const GradedJets& a2, const GradedJets& a3) {
  const int K = std::min({a1.order(), a2.order(), a3.order()});
  auto p0 = [K](const GradedJets& x, const GradedJets& y) {
    return -pairing_s(x.section->truncated(K), y.section->truncated(K));
  };
  if (a1.degree == 1 && a2.degree == 1 && a3.degree == 1) {
    HalfSection s = p0(a1, a3) * a2.section->truncated(K);
    s -= p0(a2, a3) * a1.section->truncated(K);
    return GradedJets{1, CJet::zero(K, nvars(a1)), s};
  }
  auto scaled = [K](const GradedJets& t, const CJet& c) {
    return GradedJets{2, c * t.scalar.truncated(K), c * t.section->truncated(K)};
  };
  if (a1.degree == 2 && a2.degree == 1 && a3.degree == 1) return scaled(a1, -p0(a2, a3));
  if (a1.degree == 1 && a2.degree == 2 && a3.degree == 1) return scaled(a2, -p0(a1, a3));
  return std::nullopt;
}

double max_coeff(const GradedJets& e) {
  double m = 0;
  for (auto c : e.scalar.coeffs()) m = std::max(m, std::abs(c));
  if (e.section) m = std::max(m, max_coeff(*e.section));
  return m;
}

GradedJets difference(const GradedJets& e1, const GradedJets& e2) {
  if (e1.degree != e2.degree) throw std::invalid_argument("difference: degrees differ");
  const int K = std::min(e1.order(), e2.order());
  GradedJets out{e1.degree, e1.scalar.truncated(K) - e2.scalar.truncated(K), std::nullopt};
  if (e1.section || e2.section) {
    const int n = static_cast<int>((e1.section ? e1.section : e2.section)->v.size());
    const HalfSection zero = HalfSection::zero(n, K, nvars(e1));
    out.section = (e1.section ? e1.section->truncated(K) : zero) - (e2.section ? e2.section->truncated(K) : zero);
  }
  return out;
}

}  // namespace bcv
