#include "bcv/gravity.hpp"

#include <future>
#include <stdexcept>

#include <Eigen/Dense>

namespace bcv {

namespace {

const std::vector<IndexType> kBivector{IndexType::HolUp, IndexType::AntiUp};
const std::vector<IndexType> kMetric{IndexType::HolDown, IndexType::AntiDown};

double peak(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

Eigen::MatrixXcd values(const JetTensor& t) { return t.value_matrix(); }

// Dense value array of a rank-3 realified tensor.
struct Cube {
  int N = 0;
  std::vector<Complex> a;
  explicit Cube(int n) : N(n), a(static_cast<std::size_t>(n) * n * n) {}
  Complex& operator()(int i, int j, int k) { return a[(static_cast<std::size_t>(i) * N + j) * N + k]; }
  Complex operator()(int i, int j, int k) const { return a[(static_cast<std::size_t>(i) * N + j) * N + k]; }
};

}  // namespace

HermitianData HermitianData::from_bivector(TensorField g, Expr phi0, ParamValues params) {
  if (g.signature() != kBivector) throw std::invalid_argument("HermitianData: bivector must be (hol-up, anti-up)");
  HermitianData d;
  d.dim = g.dim();
  d.source = MetricSource::Bivector;
  d.g = std::move(g);
  d.phi0 = std::move(phi0);
  d.params = std::move(params);
  return d;
}

HermitianData HermitianData::from_metric(TensorField g_low, Expr phi0, ParamValues params) {
  if (g_low.signature() != kMetric) throw std::invalid_argument("HermitianData: metric must be (hol-down, anti-down)");
  HermitianData d;
  d.dim = g_low.dim();
  d.source = MetricSource::Metric;
  d.g = std::move(g_low);
  d.phi0 = std::move(phi0);
  d.params = std::move(params);
  return d;
}

HermitianData HermitianData::from_kahler_potential(int dim, Expr K, Expr phi0, ParamValues params) {
  if (K.max_coord_index() > dim) throw std::invalid_argument("HermitianData: potential uses coordinates beyond dim");
  HermitianData d;
  d.dim = dim;
  d.source = MetricSource::KahlerPotential;
  d.g = TensorField::zero(dim, kMetric);
  d.potential = std::move(K);
  d.phi0 = std::move(phi0);
  d.params = std::move(params);
  return d;
}

namespace {

Complex partial2(const CJet& j, int a, int b) {
  std::vector<int> e(j.num_vars(), 0);
  ++e[a];
  ++e[b];
  return j.partial(e);
}

}  // namespace

MetricJets metric_eval(const HermitianData& data, std::span<const Complex> point, int order, int num_vars) {
  const int n = data.dim;
  if (static_cast<int>(point.size()) != 2 * n) throw std::invalid_argument("metric_eval: point must have length 2n");
  MetricJets m;
  m.f = eval_jet(data.phi0, point, order, data.params, num_vars) * Complex(-2);
  switch (data.source) {
    case MetricSource::Bivector:
      m.up = tensor_eval(data.g, point, order, data.params, num_vars);
      m.low = transpose(inverse(m.up));
      break;
    case MetricSource::Metric:
      m.low = tensor_eval(data.g, point, order, data.params, num_vars);
      m.up = transpose(inverse(m.low));
      break;
    case MetricSource::KahlerPotential: {
      const CJet K = eval_jet(data.potential, point, order + 2, data.params, num_vars);
      m.low = JetTensor({n, n}, order, K.num_vars());
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m.low(i, j) = K.derivative(i).derivative(n + j);
      m.up = transpose(inverse(m.low));
      break;
    }
  }
  return m;
}

double phi0_defect(const HermitianData& data, std::span<const Complex> point) {
  const int n = data.dim;
  const CJet p = eval_jet(data.phi0, point, 2, data.params);
  double d = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d = std::max(d, std::abs(partial2(p, i, n + j)));
  return d;
}

double kahler_defect(const MetricJets& m) {
  const int n = m.dim();
  double d = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        d = std::max(d, std::abs(m.low(i, j).partial(k) - m.low(k, j).partial(i)));
        d = std::max(d, std::abs(m.low(i, j).partial(n + k) - m.low(i, k).partial(n + j)));
      }
    }
  }
  return d;
}

// ---------------------------------------------------------------- [[g, h]]

JetTensor double_bracket(const JetTensor& g, const JetTensor& h) {
  const int n = g.extent(0);
  const int K = std::min(g.order(), h.order()) - 2;
  if (K < 0) throw JetError("double_bracket: insufficient jet order");
  const int nv = g.num_vars();
  auto d = [&](const CJet& x, int a) { return x.derivative(a); };
  JetTensor out({n, n}, K, nv);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      CJet acc = CJet::zero(K, nv);
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          const CJet a = g(i, j).truncated(K) * d(d(h(k, l), i), n + j);
          const CJet b = h(i, j).truncated(K) * d(d(g(k, l), i), n + j);
          const CJet c = d(g(k, j), i).truncated(K) * d(h(i, l), n + j).truncated(K);
          const CJet e = d(h(k, j), i).truncated(K) * d(g(i, l), n + j).truncated(K);
          acc += a + b;
          acc -= c + e;
        }
      }
      out(k, l) = acc;
    }
  }
  return out;
}

JetTensor double_bracket(const TensorField& g, const TensorField& h, std::span<const Complex> point, int order,
                         const ParamValues& params) {
  if (g.signature() != kBivector || h.signature() != kBivector) {
    throw std::invalid_argument("double_bracket: arguments must be (hol-up, anti-up)");
  }
  return double_bracket(tensor_eval(g, point, order, params), tensor_eval(h, point, order, params));
}

namespace {

std::vector<CJet> lie_bracket(const std::vector<CJet>& v, const std::vector<CJet>& w, int offset, int K) {
  const int n = static_cast<int>(v.size());
  std::vector<CJet> out;
  for (int k = 0; k < n; ++k) {
    CJet acc = CJet::zero(K, v[0].num_vars());
    for (int i = 0; i < n; ++i) {
      acc += v[i].truncated(K) * w[k].derivative(offset + i).truncated(K);
      acc -= w[i].truncated(K) * v[k].derivative(offset + i).truncated(K);
    }
    out.push_back(acc);
  }
  return out;
}

}  // namespace

JetTensor bivector_from_terms(const std::vector<BivectorTerm>& terms) {
  const int n = static_cast<int>(terms.at(0).v.size());
  const int o = terms[0].v[0].order();
  JetTensor g({n, n}, o, terms[0].v[0].num_vars());
  for (const auto& t : terms)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) g(i, j) += t.v[i].truncated(o) * t.vb[j].truncated(o);
  return g;
}

JetTensor double_bracket_jet(const std::vector<BivectorTerm>& g, const std::vector<BivectorTerm>& h) {
  const int n = static_cast<int>(g.at(0).v.size());
  const int K = std::min(g[0].v[0].order(), h.at(0).v[0].order()) - 1;
  JetTensor out({n, n}, K, g[0].v[0].num_vars());
  for (const auto& a : g) {
    for (const auto& b : h) {
      const auto hol = lie_bracket(a.v, b.v, 0, K);
      const auto anti = lie_bracket(a.vb, b.vb, n, K);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) out(k, l) += hol[k] * anti[l];
    }
  }
  return out;
}

// ---------------------------------------------------------------- divergences

std::vector<CJet> VectorJets::flat() const {
  std::vector<CJet> out(v);
  out.insert(out.end(), vb.begin(), vb.end());
  return out;
}

VectorJets divergence_g(const JetTensor& g, const CJet& f) {
  const int n = g.extent(0);
  const int K = std::min(g.order(), f.order()) - 1;
  if (K < 0) throw JetError("divergence_g: insufficient jet order");
  const int nv = g.num_vars();
  VectorJets u{std::vector<CJet>(n, CJet::zero(K, nv)), std::vector<CJet>(n, CJet::zero(K, nv))};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const CJet gk = g(i, j).truncated(K);
      u.vb[j] += g(i, j).derivative(i) + f.derivative(i) * gk;
      u.v[i] += g(i, j).derivative(n + j) + f.derivative(n + j) * gk;
    }
  }
  return u;
}

VectorJets divergence_g(const HermitianData& data, std::span<const Complex> point, int order) {
  const MetricJets m = metric_eval(data, point, order);
  return divergence_g(m.up, m.f);
}

CJet divergence(const VectorJets& u, const CJet& f) {
  const int n = static_cast<int>(u.v.size());
  const int K = std::min(u.v.at(0).order(), f.order()) - 1;
  if (K < 0) throw JetError("divergence: insufficient jet order");
  CJet acc = CJet::zero(K, f.num_vars());
  for (int i = 0; i < n; ++i) {
    acc += u.v[i].derivative(i) + f.derivative(i).truncated(K) * u.v[i].truncated(K);
    acc += u.vb[i].derivative(n + i) + f.derivative(n + i).truncated(K) * u.vb[i].truncated(K);
  }
  return acc;
}

// ---------------------------------------------------------------- Maurer-Cartan side

Report mc_residuals(const MetricJets& m, double tol) {
  const int n = m.dim();
  if (m.order() < 2) throw JetError("mc_residuals: jet order must be >= 2");
  const VectorJets u = divergence_g(m.up, m.f);

  double r1 = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      r1 = std::max(r1, std::abs(u.v[i].partial(n + k)));
      r1 = std::max(r1, std::abs(u.vb[i].partial(k)));
    }
  }

  const JetTensor gg = double_bracket(m.up, m.up);
  const std::vector<CJet> V = u.flat();
  const RealTensor L = lie_derivative(V, realify(kBivector, m.up, n));
  const RealTensor B = realify(kBivector, gg, n);
  double r2 = 0;
  for (std::size_t k = 0; k < L.t.size(); ++k) r2 = std::max(r2, std::abs(L.t.data()[k].value() + B.t.data()[k].value()));

  const double r3 = std::abs(divergence(u, m.f).value());

  Report rep;
  rep.record("holomorphic_divergence", r1, tol);
  rep.record("bracket_equation", r2, tol);
  rep.record("double_divergence", r3, tol);
  return rep;
}

Report mc_residuals(const HermitianData& data, std::span<const Complex> point, double tol, int order) {
  if (order < 3) throw std::invalid_argument("mc_residuals: order must be >= 3");
  return mc_residuals(metric_eval(data, point, order), tol);
}

// ---------------------------------------------------------------- background

Background background_from_g(const MetricJets& m, const CJet& phi0) {
  const int n = m.dim();
  const int K = std::min(m.low.order(), phi0.order());
  const int nv = m.low.num_vars();
  Background bg{JetTensor({2 * n, 2 * n}, K, nv), JetTensor({2 * n, 2 * n}, K, nv), CJet::zero(K, nv)};
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      const CJet g = m.low(i, k).truncated(K);
      bg.G(i, n + k) = g;
      bg.G(n + k, i) = g;
      bg.B(i, n + k) = -g;
      bg.B(n + k, i) = g;
    }
  }
  const CJet det = determinant(m.low.truncated(K));
  const Complex d0 = det.value();
  if (std::abs(d0.imag()) <= 1e-14 * std::abs(d0) && d0.real() <= 0) {
    throw DomainError("background_from_g: det g_{i jb} is not positive");
  }
  bg.Phi = log(det) * Complex(0.5) + phi0.truncated(K);
  return bg;
}

Background background_from_g(const HermitianData& data, std::span<const Complex> point, int order) {
  const MetricJets m = metric_eval(data, point, order);
  return background_from_g(m, eval_jet(data.phi0, point, order, data.params));
}

// ---------------------------------------------------------------- Einstein side

namespace {

struct Connection {
  int N = 0;
  Eigen::MatrixXcd Ginv;
  Cube gam;                       // Gam^r_{m n}
  std::vector<Cube> dgam;         // d_a Gam^r_{m n}
  explicit Connection(int n) : N(n), gam(n) {}
};

Connection connection(const JetTensor& G) {
  const int N = G.extent(0);
  if (G.order() < 2) throw JetError("einstein: metric jets must have order >= 2");
  const JetTensor Ginv = inverse(G);
  Connection c(N);
  c.Ginv = values(Ginv);
  std::vector<JetTensor> dG;
  for (int a = 0; a < N; ++a) dG.push_back(G.derivative(a));
  const JetTensor Gi = Ginv.truncated(G.order() - 1);
  for (int r = 0; r < N; ++r) {
    for (int m = 0; m < N; ++m) {
      for (int n = 0; n < N; ++n) {
        CJet acc = CJet::zero(G.order() - 1, G.num_vars());
        for (int s = 0; s < N; ++s) acc += Gi(r, s) * (dG[m](s, n) + dG[n](s, m) - dG[s](m, n));
        acc *= Complex(0.5);
        c.gam(r, m, n) = acc.value();
        if (c.dgam.empty()) c.dgam.assign(N, Cube(N));
        for (int a = 0; a < N; ++a) c.dgam[a](r, m, n) = acc.partial(a);
      }
    }
  }
  return c;
}

Eigen::MatrixXcd ricci_from(const Connection& c) {
  const int N = c.N;
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(N, N);
  for (int s = 0; s < N; ++s) {
    for (int n = 0; n < N; ++n) {
      Complex acc = 0;
      for (int r = 0; r < N; ++r) {
        acc += c.dgam[r](r, n, s) - c.dgam[n](r, r, s);
        for (int l = 0; l < N; ++l) acc += c.gam(r, r, l) * c.gam(l, n, s) - c.gam(r, n, l) * c.gam(l, r, s);
      }
      R(s, n) = acc;
    }
  }
  return R;
}

}  // namespace

Eigen::MatrixXcd ricci_tensor(const JetTensor& G) { return ricci_from(connection(G)); }

double EinsteinResiduals::max_abs() const {
  return std::max({peak(eq1), peak(eq2), std::abs(eq3)});
}

EinsteinResiduals einstein_residuals(const JetTensor& G, const JetTensor& B, const CJet& Phi) {
  const int N = G.extent(0);
  if (B.extent(0) != N || Phi.order() < 2 || B.order() < 2) throw JetError("einstein_residuals: need order >= 2");
  const Connection c = connection(G);
  const Eigen::MatrixXcd& Gi = c.Ginv;
  EinsteinResiduals out;
  out.ricci = ricci_from(c);
  const Eigen::MatrixXcd Rup = Gi * out.ricci * Gi.transpose();
  const Complex R = (Gi.transpose().cwiseProduct(out.ricci)).sum();

  // H = dB and its raised form as jets, so that d_m H^{m n r} is available.
  // on a real surface every 3-form vanishes
  const RealTensor H = N >= 3 ? exterior_derivative(RealTensor{{false, false}, B})
                              : RealTensor{{false, false, false}, JetTensor({N, N, N}, B.order() - 1, B.num_vars())};
  const int KH = H.t.order();
  const JetTensor GiJ = inverse(G).truncated(KH);
  JetTensor Hup = H.t;
  for (int slot = 0; slot < 3; ++slot) {
    JetTensor next(Hup.shape(), KH, Hup.num_vars());
    for (std::size_t flat = 0; flat < next.size(); ++flat) {
      auto idx = next.index_of(flat);
      const int top = idx[slot];
      CJet acc = CJet::zero(KH, Hup.num_vars());
      for (int a = 0; a < N; ++a) {
        idx[slot] = a;
        acc += GiJ(top, a) * Hup.at(idx);
      }
      next.data()[flat] = acc;
    }
    Hup = std::move(next);
  }
  Cube h(N), hu(N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int e = 0; e < N; ++e) {
        h(a, b, e) = H.t(a, b, e).value();
        hu(a, b, e) = Hup(a, b, e).value();
      }

  Eigen::VectorXcd dPhi(N);
  Eigen::MatrixXcd hess(N, N);  // nabla_m nabla_n Phi
  for (int a = 0; a < N; ++a) dPhi(a) = Phi.partial(a);
  for (int a = 0; a < N; ++a) {
    for (int b = 0; b < N; ++b) {
      Complex acc = partial2(Phi, a, b);
      for (int l = 0; l < N; ++l) acc -= c.gam(l, a, b) * dPhi(l);
      hess(a, b) = acc;
    }
  }
  const Eigen::MatrixXcd hess_up = Gi * hess * Gi.transpose();

  // eq1: R^{mn} - 1/4 H^{m l r} H^n_{l r} + 2 nabla^m nabla^n Phi
  out.eq1 = Eigen::MatrixXcd::Zero(N, N);
  for (int m = 0; m < N; ++m) {
    for (int n = 0; n < N; ++n) {
      Complex hh = 0;
      for (int l = 0; l < N; ++l)
        for (int r = 0; r < N; ++r) {
          Complex lowered = 0;  // H^n_{l r}
          for (int a = 0; a < N; ++a) lowered += Gi(n, a) * h(a, l, r);
          hh += hu(m, l, r) * lowered;
        }
      out.eq1(m, n) = Rup(m, n) - 0.25 * hh + 2.0 * hess_up(m, n);
    }
  }

  // eq2: nabla_m H^{m n r} - 2 (nabla_l Phi) H^{l n r}; filled for n < r, the rest by antisymmetry
  out.eq2 = Eigen::MatrixXcd::Zero(N, N);
  for (int n = 0; n < N; ++n) {
    for (int r = n + 1; r < N; ++r) {
      Complex acc = 0;
      for (int m = 0; m < N; ++m) {
        acc += Hup(m, n, r).partial(m);
        for (int l = 0; l < N; ++l) acc += c.gam(m, m, l) * hu(l, n, r);
        acc -= 2.0 * dPhi(m) * hu(m, n, r);
      }
      out.eq2(n, r) = acc;
      out.eq2(r, n) = -acc;
    }
  }

  // eq3: 4 (nabla Phi)^2 - 4 box Phi + R + 1/12 H_{mnr} H^{mnr}
  Complex hsq = 0;
  for (std::size_t k = 0; k < h.a.size(); ++k) hsq += h.a[k] * hu.a[k];
  const Complex grad2 = dPhi.transpose() * Gi * dPhi;
  const Complex box = (Gi.transpose().cwiseProduct(hess)).sum();
  out.eq3 = 4.0 * grad2 - 4.0 * box + R + hsq / 12.0;
  return out;
}

EinsteinResiduals einstein_residuals(const TensorField& G, const TensorField& B, const Expr& Phi,
                                     std::span<const Complex> point, int order, const ParamValues& params) {
  const std::vector<IndexType> real2{IndexType::RealDown, IndexType::RealDown};
  if (G.signature() != real2 || B.signature() != real2) {
    throw std::invalid_argument("einstein_residuals: G and B must be (real-down, real-down)");
  }
  return einstein_residuals(tensor_eval(G, point, order, params), tensor_eval(B, point, order, params),
                            eval_jet(Phi, point, order, params));
}

// ---------------------------------------------------------------- Kahler identity

Report ricci_kahler_identity(const HermitianData& data, std::span<const Complex> point, double tol, int order) {
  const int n = data.dim;
  const MetricJets m = metric_eval(data, point, order);
  Report rep;
  rep.record("kahler_defect", kahler_defect(m), tol);

  const CJet ld = log(determinant(m.low));
  Eigen::MatrixXcd Rl(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) Rl(i, j) = -partial2(ld, i, n + j);
  const Eigen::MatrixXcd gu = values(m.up);
  // R^{i jb} = g^{i kb} g^{l jb} R_{l kb}
  const Eigen::MatrixXcd Ru = gu * Rl.transpose() * gu;
  const Eigen::MatrixXcd half = values(double_bracket(m.up, m.up)) * 0.5;
  rep.record("ricci_identity", peak(Ru - half) / std::max(1.0, peak(half)), tol);

  const Background bg = background_from_g(m, CJet::zero(m.order(), m.low.num_vars()));
  const Eigen::MatrixXcd ric = ricci_tensor(bg.G);
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(2 * n, 2 * n);
  expect.topRightCorner(n, n) = Rl;
  expect.bottomLeftCorner(n, n) = Rl.transpose();
  rep.record("christoffel_agreement", peak(ric - expect) / std::max(1.0, peak(expect)), tol);
  rep.record("ricci_symmetry", peak(ric - ric.transpose()), tol);
  rep.conventions["ricci"] = "R_{i jb} = -d_i d_jb log det g_{k lb}; R_{s n} = R^r_{s r n}";
  return rep;
}

// ---------------------------------------------------------------- equivalence harness

std::string to_string(Classification c) {
  switch (c) {
    case Classification::BothVanish:
      return "both-vanish";
    case Classification::BothViolated:
      return "both-violated";
    case Classification::Discrepancy:
      return "discrepancy";
  }
  return "unknown";
}

EquivalenceResult equivalence_report(const HermitianData& data, const std::vector<std::vector<Complex>>& points,
                                     double tol, int order) {
  struct PointResult {
    Report mc;
    EinsteinResiduals ein;
    double phi0;
  };
  std::vector<std::future<PointResult>> jobs;
  for (const auto& p : points) {
    jobs.push_back(std::async(std::launch::async, [&data, &p, tol, order] {
      const MetricJets m = metric_eval(data, p, order);
      const Background bg = background_from_g(m, eval_jet(data.phi0, p, order, data.params));
      return PointResult{mc_residuals(m, tol), einstein_residuals(bg.G, bg.B, bg.Phi), phi0_defect(data, p)};
    }));
  }

  EquivalenceResult out;
  int discrepancies = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    const PointResult r = jobs[k].get();
    PointVerdict v;
    v.index = static_cast<int>(k);
    for (const auto& c : r.mc.checks) v.mc = std::max(v.mc, c.residual);
    v.einstein = r.ein.max_abs();
    const bool mc_ok = v.mc <= tol, ein_ok = v.einstein <= tol;
    v.classification = mc_ok && ein_ok    ? Classification::BothVanish
                       : !mc_ok && !ein_ok ? Classification::BothViolated
                                           : Classification::Discrepancy;
    if (v.classification == Classification::Discrepancy) ++discrepancies;
    out.report.merge(r.mc);
    out.report.record("einstein_eq1", peak(r.ein.eq1), tol);
    out.report.record("einstein_eq2", peak(r.ein.eq2), tol);
    out.report.record("einstein_eq3", std::abs(r.ein.eq3), tol);
    out.report.record("phi0_pluriharmonic", r.phi0, 1e-9);
    out.points.push_back(v);
  }
  out.report.record("discrepancies", discrepancies, 0);
  out.report.conventions["volume_density"] = "f = -2 Phi0";
  out.report.conventions["dilaton"] = "Phi = 1/2 log det g_{i jb} + Phi0";
  out.report.conventions["H"] = "H_{mnr} = d_m B_{nr} + d_n B_{rm} + d_r B_{mn}";
  out.report.conventions["riemann"] = "R^r_{smn} = d_m Gam^r_{ns} - d_n Gam^r_{ms} + Gam^r_{ml} Gam^l_{ns} - Gam^r_{nl} Gam^l_{ms}";
  return out;
}

// ---------------------------------------------------------------- families

namespace {

Expr z(int i) { return Expr::coord(i, false); }
Expr zb(int i) { return Expr::coord(i, true); }

// Real (on the real slice) pluriharmonic function q + conj(q), q holomorphic.
Expr random_pluriharmonic(Rng& rng, int n, double scale) {
  const Expr q = random_polynomial(rng, n, 2, scale, VarSet::Holomorphic);
  return q + complex_conjugate(q);
}

}  // namespace

HermitianData flat_family(int n, Expr phi0) {
  TensorField g = TensorField::zero(n, kBivector);
  for (int i = 0; i < n; ++i) g.set_component(std::vector{i, i}, Expr::literal(1.0));
  return HermitianData::from_bivector(g, std::move(phi0));
}

HermitianData linear_dilaton_family(int n, double lambda) {
  Expr phi0;
  for (int i = 0; i < n; ++i) phi0 = phi0 + z(i) + zb(i);
  return flat_family(n, Expr::literal(lambda) * phi0);
}

HermitianData fubini_study_family(int n, Expr phi0) {
  Expr r = Expr::literal(1.0);
  for (int i = 0; i < n; ++i) r = r + z(i) * zb(i);
  TensorField g = TensorField::zero(n, kBivector);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      g.set_component(std::vector{i, j}, r * (i == j ? Expr::literal(1.0) + z(i) * zb(j) : z(i) * zb(j)));
  return HermitianData::from_bivector(g, std::move(phi0));
}

HermitianData fubini_study_potential(int n, Expr phi0) {
  Expr r = Expr::literal(1.0);
  for (int i = 0; i < n; ++i) r = r + z(i) * zb(i);
  return HermitianData::from_kahler_potential(n, log(r), std::move(phi0));
}

HermitianData flat_reparametrized_family(int n) {
  TensorField g = TensorField::zero(n, kBivector);
  Expr phi0;
  for (int i = 0; i < n; ++i) {
    g.set_component(std::vector{i, i}, exp(-(z(i) + zb(i))));
    phi0 = phi0 - Expr::literal(0.5) * (z(i) + zb(i));
  }
  return HermitianData::from_bivector(g, phi0);
}

HermitianData random_kahler_family(Rng& rng, int n) {
  Expr K;
  for (int i = 0; i < n; ++i) K = K + z(i) * zb(i);
  const Expr p = random_polynomial(rng, n, 3, 0.15);
  K = K + p + complex_conjugate(p);
  return HermitianData::from_kahler_potential(n, K, random_pluriharmonic(rng, n, 0.3));
}

HermitianData random_hermitian_family(Rng& rng, int n) {
  std::vector<Expr> A;
  for (int k = 0; k < n * n; ++k) A.push_back(random_polynomial(rng, n, 2, 0.3));
  TensorField g = TensorField::zero(n, kBivector);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Expr e = i == j ? Expr::literal(1.0) : Expr();
      for (int k = 0; k < n; ++k) e = e + A[i * n + k] * complex_conjugate(A[j * n + k]);
      g.set_component(std::vector{i, j}, e);
    }
  }
  return HermitianData::from_bivector(g, random_pluriharmonic(rng, n, 0.3));
}

}  // namespace bcv
