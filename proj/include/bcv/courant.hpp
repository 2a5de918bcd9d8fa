#pragma once

#include <span>
#include <string>
#include <vector>

#include "bcv/cgeom.hpp"
#include "bcv/report.hpp"

namespace bcv {

enum class Chirality { Hol, Anti };

/// Jet variable of the k-th coordinate of one chirality.
inline int chiral_var(Chirality c, int k, int n) { return c == Chirality::Hol ? k : n + k; }

/// One chirality half of a section of E: vector v^i and form w_i, n jets each.
struct HalfSection {
  std::vector<CJet> v, w;

  static HalfSection zero(int n, int order, int num_vars);
  int dim() const { return static_cast<int>(v.size()); }
  int order() const;
  HalfSection truncated(int order) const;

  HalfSection& operator+=(const HalfSection& o);
  HalfSection& operator-=(const HalfSection& o);
  HalfSection& operator*=(Complex s);
  friend HalfSection operator+(HalfSection a, const HalfSection& b) { return a += b; }
  friend HalfSection operator-(HalfSection a, const HalfSection& b) { return a -= b; }
  friend HalfSection operator*(HalfSection a, Complex s) { return a *= s; }
  friend HalfSection operator*(Complex s, HalfSection a) { return a *= s; }
};

HalfSection operator*(const CJet& f, const HalfSection& a);

HalfSection half(const SectionJets& s, Chirality c);
SectionJets combine(const HalfSection& hol, const HalfSection& anti);

/// Standard pairing without a 1/2: v^i w'_i + v'^i w_i on one half.
CJet pairing_s(const HalfSection& a, const HalfSection& b);
/// Sum of both chirality halves.
CJet pairing_s(const SectionJets& a, const SectionJets& b);
CJet pairing_s(const SectionE& a, const SectionE& b, std::span<const Complex> point, int order = 0,
               const ParamValues& params = {});

/// Dorfman bracket on one half, differentiating only in that chirality's coordinates:
/// [v1,v2] Lie, [v,w] = L_v w, [w,v] = -i_v dw, [w1,w2] = 0. One order is consumed.
HalfSection dorfman(const HalfSection& a, const HalfSection& b, Chirality c);
/// Both halves independently; the two chiralities never mix.
SectionJets dorfman(const SectionJets& a, const SectionJets& b);
SectionJets dorfman(const SectionE& a, const SectionE& b, std::span<const Complex> point, int order,
                    const ParamValues& params = {});

/// v(f) along one chirality.
CJet vector_action(const HalfSection& a, const CJet& f, Chirality c);
/// The form df restricted to one chirality.
HalfSection differential(const CJet& f, Chirality c, int n);

// ---------------------------------------------------------------- vertex algebroid

/// Polynomial in the formal parameter h; coeffs[k] multiplies h^k. Coefficients of
/// one polynomial share a jet order.
template <typename T>
struct HPoly {
  std::vector<T> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  const T& operator[](int k) const { return coeffs.at(k); }
};

using SectionPoly = HPoly<HalfSection>;
using FunctionPoly = HPoly<CJet>;

SectionPoly constant_poly(const HalfSection& a);

/// Sums at the common (lower) jet order; degrees may differ.
SectionPoly operator+(const SectionPoly& a, const SectionPoly& b);
FunctionPoly operator+(const FunctionPoly& a, const FunctionPoly& b);

/// The (va) operations on the holomorphic half with coordinates X^i = z^i. Arguments
/// are C[h]-polynomials of mixed sections; every operation is C[h]-bilinear and splits
/// each section into its vector and form parts.
SectionPoly vertex_star(const CJet& f, const SectionPoly& a);
SectionPoly vertex_bracket(const SectionPoly& a, const SectionPoly& b);
FunctionPoly vertex_pairing(const SectionPoly& a, const SectionPoly& b);
FunctionPoly vertex_anchor(const SectionPoly& a, const CJet& f);
SectionPoly vertex_del(const CJet& f, int n);

/// Coefficient of h^1 (zero if absent).
HalfSection quasiclassical_limit(const SectionPoly& p);
CJet quasiclassical_limit(const FunctionPoly& p);

/// Largest coefficient modulus over all jets, and differences between polynomials.
double max_coeff(const CJet& j);
double max_coeff(const HalfSection& a);
double max_coeff_diff(const SectionPoly& a, const SectionPoly& b);
double max_coeff_diff(const FunctionPoly& a, const FunctionPoly& b);

// ---------------------------------------------------------------- Courant axioms

/// Operations of the Courant algebroid obtained in the limit:
/// [q1,q2]_0 = -[q1,q2]_D, <q1,q2>_0 = -<q1,q2>^s, d = d, pi_0(q)(f) = -v(f).
HalfSection bracket0(const HalfSection& a, const HalfSection& b, Chirality c);
CJet pairing0(const HalfSection& a, const HalfSection& b);
CJet anchor0(const HalfSection& a, const CJet& f, Chirality c);

/// Evaluates the six axioms for every argument combination at every point, on each
/// chirality half separately. Residuals are max coefficient moduli of the differences.
Report check_courant_axioms(const std::vector<SectionE>& sections, const std::vector<Expr>& functions,
                            const std::vector<std::vector<Complex>>& points, double tol, int order = 3,
                            const ParamValues& params = {});

}  // namespace bcv
