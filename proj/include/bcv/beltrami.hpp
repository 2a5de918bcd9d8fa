#pragma once

#include <span>
#include <vector>

#include "bcv/cgeom.hpp"
#include "bcv/courant.hpp"
#include "bcv/report.hpp"

namespace bcv {

/// M = [[g, mu], [mubar, b]] in E (x) Ebar. Every block is indexed [E index][Ebar index]:
/// g^{i jb}, mu^i_{jb}, mubar^{jb}_i, b_{i jb}. Rows of M run over (d_i, dz^i), columns
/// over (d_jb, dzb^j).
struct BeltramiCourant {
  TensorField g, mu, mub, b;

  static BeltramiCourant zero(int n);
  int dim() const { return g.dim(); }
};

/// Point jets of the four blocks, each n x n.
struct MJets {
  JetTensor g, mu, mub, b;

  int dim() const { return g.extent(0); }
  int order() const;
  MJets truncated(int order) const;
  MJets& operator+=(const MJets& o);
  MJets& operator-=(const MJets& o);
  friend MJets operator+(MJets a, const MJets& b) { return a += b; }
  friend MJets operator-(MJets a, const MJets& b) { return a -= b; }
  double max_abs() const;
};

MJets m_eval(const BeltramiCourant& M, std::span<const Complex> point, int order, const ParamValues& params = {},
             int num_vars = -1);

/// The 2n x 2n block matrix and back.
JetTensor assemble(const MJets& m);
MJets split(const JetTensor& full);

/// Convention for turning an element of E (x) Ebar into an endomorphism of E.
enum class Phi2Convention { Canonical, Transpose };

/// Sign applied to the holomorphic form when alpha is lifted to the jet element
/// xi = (v, s w) (x) 1 + 1 (x) (vbar, wbar). See the notes in the README.
constexpr int kHolomorphicFormLift = -1;

/// D alpha: g-slot 0, mu-slot d_jb v^i, mubar-slot d_i vbar^jb, b-slot d_i wbar_jb - d_jb w_i.
MJets d_op(const SectionJets& alpha);
/// Dorfman action of xi on M: holomorphic bracket against each column, antiholomorphic
/// bracket against each row.
MJets phi1(const SectionJets& alpha, const MJets& M);
/// M . D alpha . M as a composition of endomorphisms of E.
MJets phi2(const SectionJets& alpha, const MJets& M, Phi2Convention conv = Phi2Convention::Canonical);
/// -D alpha + phi1 + phi2.
MJets delta_M(const SectionJets& alpha, const MJets& M, Phi2Convention conv = Phi2Convention::Canonical);

/// Rank-one term a (x) abar; a = (vector n, form n) in E, abar likewise in Ebar.
struct RankOne {
  std::vector<CJet> a, abar;
};
MJets from_rank_ones(const std::vector<RankOne>& terms, int n);
/// The displayed jet formula for phi2, summed over both assignments of the two L slots.
MJets phi2_jet(const SectionJets& alpha, const std::vector<RankOne>& L1, const std::vector<RankOne>& L2);

/// Component formulas for the g = 0 case: dmu and db transcribed term by term, dmubar by
/// formal conjugation of dmu. Throws if g is not identically zero at the point.
MJets component_delta(const SectionJets& alpha, const MJets& M);

/// Swaps z^k and zb^k inside a jet (formal conjugation at jet level).
CJet swap_chirality(const CJet& j, int n);

/// G and B on the realified index set.
struct BackgroundJets {
  JetTensor G, B;
};

BackgroundJets gb_map(const MJets& M);

MJets d_op(const SectionE& alpha, std::span<const Complex> point, int order, const ParamValues& params = {});
MJets phi1(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
           const ParamValues& params = {});
MJets phi2(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
           const ParamValues& params = {});
MJets delta_M(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
              const ParamValues& params = {});
MJets component_delta(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
                      const ParamValues& params = {});
BackgroundJets gb_map(const BeltramiCourant& M, std::span<const Complex> point, int order = 0,
                      const ParamValues& params = {});

/// Compares the first-order change of (G, B) along delta_M with
/// -(L_V G, L_V B + 2 dW), (V, W) = -(v, vbar, w, wbar). The change is read off an
/// auxiliary jet variable t in gb_map(M + t delta_M).
Report check_theorem11(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, double tol,
                       int order = 3, const ParamValues& params = {});

}  // namespace bcv
