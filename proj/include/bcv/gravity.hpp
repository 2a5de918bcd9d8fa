#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

#include "bcv/cgeom.hpp"
#include "bcv/report.hpp"
#include "bcv/sampling.hpp"

namespace bcv {

enum class MetricSource { Bivector, Metric, KahlerPotential };

/// Hermitian data on a chart: the bivector g^{i jb} (given directly, as the inverse of a
/// metric g_{i jb}, or through a Kahler potential) and the dilaton seed Phi0. The volume
/// density is f = -2 Phi0.
struct HermitianData {
  int dim = 1;
  MetricSource source = MetricSource::Bivector;
  TensorField g;  // (hol-up, anti-up) for Bivector, (hol-down, anti-down) for Metric
  Expr potential;
  Expr phi0;
  ParamValues params;

  static HermitianData from_bivector(TensorField g, Expr phi0 = {}, ParamValues params = {});
  static HermitianData from_metric(TensorField g_low, Expr phi0 = {}, ParamValues params = {});
  static HermitianData from_kahler_potential(int dim, Expr K, Expr phi0 = {}, ParamValues params = {});
};

struct MetricJets {
  JetTensor up;   // g^{i jb}
  JetTensor low;  // g_{i jb}, sum_jb g^{i jb} g_{k jb} = delta
  CJet f;

  int dim() const { return up.extent(0); }
  int order() const { return std::min({up.order(), low.order(), f.order()}); }
};

MetricJets metric_eval(const HermitianData& data, std::span<const Complex> point, int order, int num_vars = -1);

/// max |d_i d_jb Phi0| at the point.
double phi0_defect(const HermitianData& data, std::span<const Complex> point);

/// max over |d_k g_{i jb} - d_i g_{k jb}| and the conjugate family.
double kahler_defect(const MetricJets& m);

/// [[g, h]]^{k lb}; order drops by 2.
JetTensor double_bracket(const JetTensor& g, const JetTensor& h);
JetTensor double_bracket(const TensorField& g, const TensorField& h, std::span<const Complex> point, int order,
                         const ParamValues& params = {});

/// g = v (x) vb with v holomorphic and vb antiholomorphic.
struct BivectorTerm {
  std::vector<CJet> v, vb;
};

/// Sum over term pairs of [v, w] (x) [vb, wb].
JetTensor double_bracket_jet(const std::vector<BivectorTerm>& g, const std::vector<BivectorTerm>& h);
JetTensor bivector_from_terms(const std::vector<BivectorTerm>& terms);

struct VectorJets {
  std::vector<CJet> v, vb;
  std::vector<CJet> flat() const;  // (v, vb) on the realified index set
};

VectorJets divergence_g(const JetTensor& g_up, const CJet& f);
VectorJets divergence_g(const HermitianData& data, std::span<const Complex> point, int order);

/// div_Omega u = d_i u^i + u^i d_i f + (conjugate family).
CJet divergence(const VectorJets& u, const CJet& f);

/// Checks "holomorphic_divergence", "bracket_equation", "double_divergence".
Report mc_residuals(const MetricJets& m, double tol);
Report mc_residuals(const HermitianData& data, std::span<const Complex> point, double tol, int order = 3);

struct Background {
  JetTensor G, B;  // realified, lower indices
  CJet Phi;
};

/// G_{i kb} = g_{i kb}, B_{i kb} = -g_{i kb}, Phi = log sqrt(det g_low) + Phi0.
Background background_from_g(const MetricJets& m, const CJet& phi0);
Background background_from_g(const HermitianData& data, std::span<const Complex> point, int order = 3);

struct EinsteinResiduals {
  Eigen::MatrixXcd eq1;  // graviton equation, upper indices
  Eigen::MatrixXcd eq2;  // B-field equation, antisymmetric
  Complex eq3;           // dilaton equation
  Eigen::MatrixXcd ricci;

  double max_abs() const;
};

/// Needs jets of order >= 2. Riemann R^r_{s m n} = d_m Gam^r_{n s} - d_n Gam^r_{m s} + ...,
/// Ricci R_{s n} = R^r_{s r n}, H = dB.
EinsteinResiduals einstein_residuals(const JetTensor& G, const JetTensor& B, const CJet& Phi);
EinsteinResiduals einstein_residuals(const TensorField& G, const TensorField& B, const Expr& Phi,
                                     std::span<const Complex> point, int order = 3, const ParamValues& params = {});

/// Ricci tensor values from the Levi-Civita connection of G.
Eigen::MatrixXcd ricci_tensor(const JetTensor& G);

/// Checks "kahler_defect", "ricci_identity", "christoffel_agreement", "ricci_symmetry".
Report ricci_kahler_identity(const HermitianData& data, std::span<const Complex> point, double tol, int order = 3);

enum class Classification { BothVanish, BothViolated, Discrepancy };
std::string to_string(Classification c);

struct PointVerdict {
  int index = 0;
  double mc = 0;
  double einstein = 0;
  Classification classification = Classification::BothVanish;
};

struct EquivalenceResult {
  Report report;
  std::vector<PointVerdict> points;
};

EquivalenceResult equivalence_report(const HermitianData& data, const std::vector<std::vector<Complex>>& points,
                                     double tol, int order = 3);

// Built-in families.
HermitianData flat_family(int n, Expr phi0 = {});
HermitianData linear_dilaton_family(int n, double lambda);
HermitianData fubini_study_family(int n, Expr phi0 = {});
HermitianData fubini_study_potential(int n, Expr phi0 = {});
HermitianData flat_reparametrized_family(int n);
HermitianData random_kahler_family(Rng& rng, int n);
HermitianData random_hermitian_family(Rng& rng, int n);

}  // namespace bcv
