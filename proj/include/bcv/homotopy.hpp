#pragma once

#include <optional>
#include <span>

#include "bcv/courant.hpp"

namespace bcv {

/// Element of the quasiclassical complex: F^0 = O, F^1 = F^2 = O + V, F^3 = O, where V is
/// the holomorphic half (v, w) of a section. The section's vb and wb are ignored.
struct GradedElement {
  int dim = 1;
  int degree = 0;
  Expr scalar;
  std::optional<SectionE> section;  // degrees 1 and 2 only

  static GradedElement make(int dim, int degree, Expr scalar, std::optional<SectionE> section = {});
};

struct GradedJets {
  int degree = 0;
  CJet scalar;
  std::optional<HalfSection> section;

  int order() const;
};

GradedJets graded_eval(const GradedElement& e, std::span<const Complex> point, int order,
                       const ParamValues& params = {});

/// div A = d_i A^i + A^i d_i f_Omega; the form part does not contribute.
CJet weighted_div(const HalfSection& a, const CJet& f_omega);

/// The differential Q; order drops by one.
GradedJets q_diff(const GradedJets& e, const CJet& f_omega);
GradedJets q_diff(const GradedElement& e, const Chart& chart, std::span<const Complex> point, int order);

/// The degree -1 operator b.
GradedJets b_op(const GradedJets& e);
GradedElement b_op(const GradedElement& e);

/// m0(A1, A2) = -<A1, A2>_0 = <A1, A2>^s; zero unless both arguments have degree 1.
CJet m0(const GradedJets& a1, const GradedJets& a2);

/// (1,1,1): A2 <A1,A3>_0 - A1 <A2,A3>_0 at degree 1. A degree-2 element in slot 1 or 2 with
/// degree-1 partners A, B: -<A,B>_0 times that element. Other patterns: nullopt.
std::optional<GradedJets> n0(const GradedJets& a1, const GradedJets& a2, const GradedJets& a3);

/// Max |coefficient| over the scalar and section parts.
double max_coeff(const GradedJets& e);

/// e1 - e2 at the common order; degrees must agree.
GradedJets difference(const GradedJets& e1, const GradedJets& e2);

}  // namespace bcv
