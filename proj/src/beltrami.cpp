#include "bcv/beltrami.hpp"

#include <stdexcept>

namespace bcv {

namespace {

constexpr Complex kLift{static_cast<double>(kHolomorphicFormLift), 0.0};

JetTensor square(int n, int order, int num_vars) { return JetTensor({n, n}, order, num_vars); }

int vars_of(const SectionJets& a) { return a.v.at(0).num_vars(); }

}  // namespace

BeltramiCourant BeltramiCourant::zero(int n) {
  return {TensorField::zero(n, {IndexType::HolUp, IndexType::AntiUp}),
          TensorField::zero(n, {IndexType::HolUp, IndexType::AntiDown}),
          TensorField::zero(n, {IndexType::HolDown, IndexType::AntiUp}),
          TensorField::zero(n, {IndexType::HolDown, IndexType::AntiDown})};
}

int MJets::order() const { return std::min({g.order(), mu.order(), mub.order(), b.order()}); }

MJets MJets::truncated(int order) const {
  return {g.truncated(order), mu.truncated(order), mub.truncated(order), b.truncated(order)};
}

MJets& MJets::operator+=(const MJets& o) {
  const int k = std::min(order(), o.order());
  *this = truncated(k);
  const MJets t = o.truncated(k);
  g += t.g;
  mu += t.mu;
  mub += t.mub;
  b += t.b;
  return *this;
}

MJets& MJets::operator-=(const MJets& o) {
  const int k = std::min(order(), o.order());
  *this = truncated(k);
  const MJets t = o.truncated(k);
  g -= t.g;
  mu -= t.mu;
  mub -= t.mub;
  b -= t.b;
  return *this;
}

double MJets::max_abs() const {
  return std::max({bcv::max_abs(g), bcv::max_abs(mu), bcv::max_abs(mub), bcv::max_abs(b)});
}

MJets m_eval(const BeltramiCourant& M, std::span<const Complex> point, int order, const ParamValues& params,
             int num_vars) {
  auto check = [](const TensorField& t, IndexType a, IndexType b, const char* name) {
    if (t.signature() != std::vector{a, b}) {
      throw std::invalid_argument(std::string("BeltramiCourant: block ") + name + " must have signature (" +
                                  to_string(a) + ", " + to_string(b) + ")");
    }
  };
  check(M.g, IndexType::HolUp, IndexType::AntiUp, "g");
  check(M.mu, IndexType::HolUp, IndexType::AntiDown, "mu");
  check(M.mub, IndexType::HolDown, IndexType::AntiUp, "mubar");
  check(M.b, IndexType::HolDown, IndexType::AntiDown, "b");
  return {tensor_eval(M.g, point, order, params, num_vars), tensor_eval(M.mu, point, order, params, num_vars),
          tensor_eval(M.mub, point, order, params, num_vars), tensor_eval(M.b, point, order, params, num_vars)};
}

JetTensor assemble(const MJets& m) {
  const int n = m.dim();
  const MJets t = m.truncated(m.order());
  JetTensor full({2 * n, 2 * n}, t.order(), t.g.num_vars());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      full(i, j) = t.g(i, j);
      full(i, n + j) = t.mu(i, j);
      full(n + i, j) = t.mub(i, j);
      full(n + i, n + j) = t.b(i, j);
    }
  }
  return full;
}

MJets split(const JetTensor& full) {
  const int n = full.extent(0) / 2;
  MJets m{square(n, full.order(), full.num_vars()), square(n, full.order(), full.num_vars()),
          square(n, full.order(), full.num_vars()), square(n, full.order(), full.num_vars())};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m.g(i, j) = full(i, j);
      m.mu(i, j) = full(i, n + j);
      m.mub(i, j) = full(n + i, j);
      m.b(i, j) = full(n + i, n + j);
    }
  }
  return m;
}

// ---------------------------------------------------------------- D, phi1, phi2

MJets d_op(const SectionJets& alpha) {
  const int n = alpha.dim();
  const int K = alpha.order() - 1;
  if (K < 0) throw JetError("d_op: insufficient jet order");
  const int nv = vars_of(alpha);
  MJets r{square(n, K, nv), square(n, K, nv), square(n, K, nv), square(n, K, nv)};
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      r.mu(i, j) = alpha.v[i].derivative(n + j);
      r.mub(i, j) = alpha.vb[j].derivative(i);
      r.b(i, j) = alpha.wb[j].derivative(i) - alpha.w[i].derivative(n + j);
    }
  }
  return r;
}

MJets phi1(const SectionJets& alpha, const MJets& M) {
  const int n = alpha.dim();
  const int K = std::min(alpha.order(), M.order()) - 1;
  if (K < 0) throw JetError("phi1: insufficient jet order");
  const int nv = vars_of(alpha);
  MJets r{square(n, K, nv), square(n, K, nv), square(n, K, nv), square(n, K, nv)};

  HalfSection xi_hol{alpha.v, alpha.w};
  for (auto& j : xi_hol.w) j *= kLift;
  const HalfSection xi_anti{alpha.vb, alpha.wb};

  auto column = [&](const JetTensor& vec, const JetTensor& form, int j) {
    HalfSection s;
    for (int i = 0; i < n; ++i) {
      s.v.push_back(vec(i, j));
      s.w.push_back(form(i, j));
    }
    return s;
  };
  auto row = [&](const JetTensor& vec, const JetTensor& form, int i) {
    HalfSection s;
    for (int j = 0; j < n; ++j) {
      s.v.push_back(vec(i, j));
      s.w.push_back(form(i, j));
    }
    return s;
  };

  for (int j = 0; j < n; ++j) {
    // Ebar factor d_jb: E-section (g^{. j}, mubar^{j}_.); Ebar factor dzb^j: (mu^._j, b_.j)
    const HalfSection a = dorfman(xi_hol, column(M.g, M.mub, j), Chirality::Hol);
    const HalfSection c = dorfman(xi_hol, column(M.mu, M.b, j), Chirality::Hol);
    for (int i = 0; i < n; ++i) {
      r.g(i, j) += a.v[i].truncated(K);
      r.mub(i, j) += a.w[i].truncated(K);
      r.mu(i, j) += c.v[i].truncated(K);
      r.b(i, j) += c.w[i].truncated(K);
    }
  }
  for (int i = 0; i < n; ++i) {
    // E factor d_i: Ebar-section (g^{i .}, mu^i_.); E factor dz^i: (mubar^._i, b_i.)
    const HalfSection a = dorfman(xi_anti, row(M.g, M.mu, i), Chirality::Anti);
    const HalfSection c = dorfman(xi_anti, row(M.mub, M.b, i), Chirality::Anti);
    for (int j = 0; j < n; ++j) {
      r.g(i, j) += a.v[j].truncated(K);
      r.mu(i, j) += a.w[j].truncated(K);
      r.mub(i, j) += c.v[j].truncated(K);
      r.b(i, j) += c.w[j].truncated(K);
    }
  }
  return r;
}

namespace {

// Endomorphism of E = (E, Ebar) induced by X in E (x) Ebar through the standard pairing:
// [[0, X eta], [X^T eta, 0]], eta swapping vector and form slots.
JetTensor endomorphism(const JetTensor& X) {
  const int m = X.extent(0);  // 2n
  const int n = m / 2;
  JetTensor E({2 * m, 2 * m}, X.order(), X.num_vars());
  auto eta = [n](int a) { return a < n ? a + n : a - n; };
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      E(a, m + eta(b)) = X(a, b);
      E(m + b, eta(a)) = X(a, b);
    }
  }
  return E;
}

JetTensor from_endomorphism(const JetTensor& E) {
  const int m = E.extent(0) / 2;
  const int n = m / 2;
  auto eta = [n](int a) { return a < n ? a + n : a - n; };
  JetTensor X({m, m}, E.order(), E.num_vars());
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) X(a, b) = E(a, m + eta(b));
  return X;
}

}  // namespace

MJets phi2(const SectionJets& alpha, const MJets& M, Phi2Convention conv) {
  const JetTensor D = assemble(d_op(alpha));
  const JetTensor Mf = assemble(M);
  const JetTensor EM = endomorphism(Mf);
  const JetTensor ED = endomorphism(conv == Phi2Convention::Canonical ? D : transpose(D));
  return split(from_endomorphism(matmul(matmul(EM, ED), EM)));
}

MJets delta_M(const SectionJets& alpha, const MJets& M, Phi2Convention conv) {
  MJets r = phi1(alpha, M);
  r -= d_op(alpha);
  r += phi2(alpha, M, conv);
  return r;
}

// ---------------------------------------------------------------- jet formula for phi2

MJets from_rank_ones(const std::vector<RankOne>& terms, int n) {
  const int o = terms.at(0).a.at(0).order();
  const int nv = terms[0].a[0].num_vars();
  JetTensor full({2 * n, 2 * n}, o, nv);
  for (const auto& t : terms)
    for (int p = 0; p < 2 * n; ++p)
      for (int q = 0; q < 2 * n; ++q) full(p, q) += t.a[p].truncated(o) * t.abar[q].truncated(o);
  return split(full);
}

MJets phi2_jet(const SectionJets& alpha, const std::vector<RankOne>& L1, const std::vector<RankOne>& L2) {
  const int n = alpha.dim();
  const int K = alpha.order() - 1;
  const int nv = vars_of(alpha);
  // jet lift of alpha: E-part (v, lift * w), Ebar-part (vbar, wbar), as 2n-vectors
  std::vector<CJet> xe, xb;
  for (int i = 0; i < n; ++i) xe.push_back(alpha.v[i]);
  for (int i = 0; i < n; ++i) xe.push_back(alpha.w[i] * kLift);
  for (int i = 0; i < n; ++i) xb.push_back(alpha.vb[i]);
  for (int i = 0; i < n; ++i) xb.push_back(alpha.wb[i]);

  // derivative of a 2n-vector along the vector part of u in one chirality
  auto along = [&](const std::vector<CJet>& x, const std::vector<CJet>& u, Chirality c) {
    std::vector<CJet> out(2 * n, CJet::zero(K, nv));
    for (int p = 0; p < 2 * n; ++p)
      for (int l = 0; l < n; ++l) out[p] += u[l].truncated(K) * x[p].derivative(chiral_var(c, l, n));
    return out;
  };
  // <x, y>^s for 2n-vectors (vector, form)
  auto pair = [&](const std::vector<CJet>& x, const std::vector<CJet>& y) {
    CJet acc = CJet::zero(K, nv);
    for (int i = 0; i < n; ++i) {
      acc += x[i].truncated(K) * y[n + i].truncated(K);
      acc += y[i].truncated(K) * x[n + i].truncated(K);
    }
    return acc;
  };

  JetTensor full({2 * n, 2 * n}, K, nv);
  auto accumulate = [&](const std::vector<RankOne>& LJ, const std::vector<RankOne>& LK) {
    for (const auto& J : LJ) {
      const auto dE = along(xe, J.abar, Chirality::Anti);  // abar^J(f) acting on the E-part
      const auto dB = along(xb, J.a, Chirality::Hol);      // a^J(f) acting on the Ebar-part
      for (const auto& Kt : LK) {
        const CJet c1 = pair(dE, Kt.a) * Complex(0.5);
        const CJet c2 = pair(dB, Kt.abar) * Complex(0.5);
        for (int p = 0; p < 2 * n; ++p) {
          for (int q = 0; q < 2 * n; ++q) {
            full(p, q) += c1 * J.a[p].truncated(K) * Kt.abar[q].truncated(K);
            full(p, q) += c2 * Kt.a[p].truncated(K) * J.abar[q].truncated(K);
          }
        }
      }
    }
  };
  accumulate(L1, L2);
  accumulate(L2, L1);
  return split(full);
}

// ---------------------------------------------------------------- component formulas

CJet swap_chirality(const CJet& j, int n) {
  std::vector<int> perm(j.num_vars());
  for (int v = 0; v < j.num_vars(); ++v) perm[v] = v < n ? v + n : v < 2 * n ? v - n : v;
  return permute_vars(j, perm);
}

namespace {

// delta mu^i_jb from the displayed transformation of mu (first line).
JetTensor delta_mu_formula(const std::vector<CJet>& v, const std::vector<CJet>& vb, const JetTensor& mu, int K) {
  const int n = mu.extent(0);
  const int nv = mu.num_vars();
  auto d = [&](const CJet& x, int var) { return x.derivative(var).truncated(K); };
  auto t = [&](const CJet& x) { return x.truncated(K); };
  JetTensor r = square(n, K, nv);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CJet acc = -d(v[i], n + j);
      for (int k = 0; k < n; ++k) {
        acc += t(v[k]) * d(mu(i, j), k);
        acc += t(vb[k]) * d(mu(i, j), n + k);
        acc += t(mu(i, k)) * d(vb[k], n + j);
        acc -= t(mu(k, j)) * d(v[i], k);
        for (int l = 0; l < n; ++l) acc += t(mu(i, l)) * t(mu(k, j)) * d(vb[l], k);
      }
      r(i, j) = acc;
    }
  }
  return r;
}

}  // namespace

MJets component_delta(const SectionJets& alpha, const MJets& M) {
  const int n = alpha.dim();
  for (const auto& j : M.g.data())
    for (auto c : j.coeffs())
      if (c != Complex(0)) throw std::invalid_argument("component_delta: requires g = 0");
  const int K = std::min(alpha.order(), M.order()) - 1;
  if (K < 0) throw JetError("component_delta: insufficient jet order");
  const int nv = vars_of(alpha);
  auto d = [&](const CJet& x, int var) { return x.derivative(var).truncated(K); };
  auto t = [&](const CJet& x) { return x.truncated(K); };
  const auto &v = alpha.v, &vb = alpha.vb, &w = alpha.w, &wb = alpha.wb;
  const auto &mu = M.mu, &mub = M.mub, &b = M.b;

  MJets r{square(n, K, nv), delta_mu_formula(v, vb, mu, K), square(n, K, nv), square(n, K, nv)};

  // mubar: conjugate the inputs, apply the mu formula, conjugate back.
  {
    std::vector<CJet> vc, vbc;
    for (int i = 0; i < n; ++i) {
      vc.push_back(swap_chirality(vb[i], n));
      vbc.push_back(swap_chirality(v[i], n));
    }
    JetTensor muc = square(n, mub.order(), nv);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) muc(j, i) = swap_chirality(mub(i, j), n);
    const JetTensor dc = delta_mu_formula(vc, vbc, muc, K);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r.mub(i, j) = swap_chirality(dc(j, i), n);
  }

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      CJet acc = d(w[i], n + j) - d(wb[j], i);
      for (int k = 0; k < n; ++k) {
        // diffeomorphism part
        acc += t(v[k]) * d(b(i, j), k);
        acc += t(vb[k]) * d(b(i, j), n + k);
        acc += t(b(i, k)) * d(vb[k], n + j);
        acc += t(b(k, j)) * d(v[k], i);
        // two-form part
        acc += t(mu(k, j)) * (d(w[i], k) - d(w[k], i));
        acc += t(mub(i, k)) * (d(wb[k], n + j) - d(wb[j], n + k));
        for (int l = 0; l < n; ++l) {
          acc += t(b(i, l)) * t(mu(k, j)) * d(vb[l], k);
          acc += t(b(l, j)) * t(mub(i, k)) * d(v[l], n + k);
          acc += t(mub(i, l)) * t(mu(k, j)) * (d(wb[l], k) - d(w[k], n + l));
        }
      }
      r.b(i, j) = acc;
    }
  }
  return r;
}

// ---------------------------------------------------------------- (G, B)

BackgroundJets gb_map(const MJets& M) {
  const int n = M.dim();
  const MJets m = M.truncated(M.order());
  const int K = m.order();
  const int nv = m.g.num_vars();
  const JetTensor gl = transpose(inverse(m.g));  // gl(i, j) = g_{i jb}
  JetTensor G({2 * n, 2 * n}, K, nv), B({2 * n, 2 * n}, K, nv);
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < n; ++k) {
      CJet mm = CJet::zero(K, nv);
      for (int ib = 0; ib < n; ++ib)
        for (int j = 0; j < n; ++j) mm += gl(j, ib) * m.mub(s, ib) * m.mu(j, k);
      G(s, n + k) = mm + gl(s, k) - m.b(s, k);
      B(s, n + k) = mm - gl(s, k) - m.b(s, k);
      G(n + k, s) = G(s, n + k);
      B(n + k, s) = -B(s, n + k);
    }
  }
  for (int s = 0; s < n; ++s) {
    for (int i = 0; i < n; ++i) {
      CJet gh = CJet::zero(K, nv), bh = CJet::zero(K, nv), ga = CJet::zero(K, nv), ba = CJet::zero(K, nv);
      for (int j = 0; j < n; ++j) {
        gh -= gl(i, j) * m.mub(s, j) + gl(s, j) * m.mub(i, j);
        bh += gl(s, j) * m.mub(i, j) - gl(i, j) * m.mub(s, j);
        ga -= gl(j, s) * m.mu(j, i) + gl(j, i) * m.mu(j, s);
        ba += gl(j, i) * m.mu(j, s) - gl(j, s) * m.mu(j, i);
      }
      G(s, i) = gh;
      B(s, i) = bh;
      G(n + s, n + i) = ga;
      B(n + s, n + i) = ba;
    }
  }
  return {G, B};
}

// ---------------------------------------------------------------- field-level wrappers

MJets d_op(const SectionE& alpha, std::span<const Complex> point, int order, const ParamValues& params) {
  return d_op(section_eval(alpha, point, order, params));
}

MJets phi1(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
           const ParamValues& params) {
  return phi1(section_eval(alpha, point, order, params), m_eval(M, point, order, params));
}

MJets phi2(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
           const ParamValues& params) {
  return phi2(section_eval(alpha, point, order, params), m_eval(M, point, order, params));
}

MJets delta_M(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
              const ParamValues& params) {
  return delta_M(section_eval(alpha, point, order, params), m_eval(M, point, order, params));
}

MJets component_delta(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, int order,
                      const ParamValues& params) {
  return component_delta(section_eval(alpha, point, order, params), m_eval(M, point, order, params));
}

BackgroundJets gb_map(const BeltramiCourant& M, std::span<const Complex> point, int order, const ParamValues& params) {
  return gb_map(m_eval(M, point, order, params));
}

// ---------------------------------------------------------------- induced (G, B) variation

Report check_theorem11(const SectionE& alpha, const BeltramiCourant& M, std::span<const Complex> point, double tol,
                       int order, const ParamValues& params) {
  if (order < 2) throw std::invalid_argument("check_theorem11: jet order must be >= 2");
  const int n = M.dim();
  const int nv = 2 * n + 1;  // last variable is the perturbation parameter t
  const SectionJets a = section_eval(alpha, point, order, params, nv);
  const MJets m = m_eval(M, point, order, params, nv);

  const MJets dm = delta_M(a, m);
  const int K = dm.order();
  const CJet t = CJet::variable(2 * n, 0.0, K, nv);
  MJets mt = m.truncated(K);
  for (auto [dst, src] : {std::pair{&mt.g, &dm.g}, std::pair{&mt.mu, &dm.mu}, std::pair{&mt.mub, &dm.mub},
                           std::pair{&mt.b, &dm.b}}) {
    for (std::size_t k = 0; k < dst->size(); ++k) dst->data()[k] += t * src->data()[k];
  }
  const BackgroundJets perturbed = gb_map(mt);
  const BackgroundJets base = gb_map(m);

  // generator (V, W) = -(v, vbar, w, wbar)
  std::vector<CJet> V;
  JetTensor W({2 * n}, order, nv);
  for (int i = 0; i < n; ++i) V.push_back(-a.v[i]);
  for (int i = 0; i < n; ++i) V.push_back(-a.vb[i]);
  for (int i = 0; i < n; ++i) {
    W(i) = -a.w[i];
    W(n + i) = -a.wb[i];
  }
  const RealTensor LG = lie_derivative(V, RealTensor{{false, false}, base.G});
  const RealTensor LB = lie_derivative(V, RealTensor{{false, false}, base.B});
  const RealTensor dW = exterior_derivative(RealTensor{{false}, W});

  Report rep;
  double scale = 1.0;
  double rg = 0, rb = 0;
  for (int mu_ = 0; mu_ < 2 * n; ++mu_) {
    for (int nu = 0; nu < 2 * n; ++nu) {
      const Complex dG = perturbed.G(mu_, nu).partial(2 * n);
      const Complex dB = perturbed.B(mu_, nu).partial(2 * n);
      const Complex tG = -LG.t(mu_, nu).value();
      const Complex tB = -(LB.t(mu_, nu).value() + 2.0 * dW.t(mu_, nu).value());
      scale = std::max({scale, std::abs(tG), std::abs(tB)});
      rg = std::max(rg, std::abs(dG - tG));
      rb = std::max(rb, std::abs(dB - tB));
    }
  }
  rep.record("delta_G", rg / scale, tol);
  rep.record("delta_B", rb / scale, tol);
  rep.conventions["generator"] = "(v_bold, omega_bold) = -(v, vbar, omega, omegabar)";
  rep.conventions["holomorphic_form_lift"] = std::to_string(kHolomorphicFormLift);
  rep.conventions["phi2_contraction"] = "canonical";
  rep.conventions["b_shift"] = "2 d omega";
  rep.conventions["residual"] = "max abs / max(1, max |target|)";
  return rep;
}

}  // namespace bcv
