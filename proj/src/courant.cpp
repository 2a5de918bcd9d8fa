#include "bcv/courant.hpp"

#include <stdexcept>

namespace bcv {

// ---------------------------------------------------------------- HalfSection

HalfSection HalfSection::zero(int n, int order, int num_vars) {
  HalfSection h;
  h.v.assign(n, CJet::zero(order, num_vars));
  h.w.assign(n, CJet::zero(order, num_vars));
  return h;
}

int HalfSection::order() const { return v.at(0).order(); }

HalfSection HalfSection::truncated(int order) const {
  HalfSection r = *this;
  for (auto& j : r.v) j = j.truncated(order);
  for (auto& j : r.w) j = j.truncated(order);
  return r;
}

HalfSection& HalfSection::operator+=(const HalfSection& o) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] += o.v[i];
    w[i] += o.w[i];
  }
  return *this;
}

HalfSection& HalfSection::operator-=(const HalfSection& o) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] -= o.v[i];
    w[i] -= o.w[i];
  }
  return *this;
}

HalfSection& HalfSection::operator*=(Complex s) {
  for (auto& j : v) j *= s;
  for (auto& j : w) j *= s;
  return *this;
}

HalfSection operator*(const CJet& f, const HalfSection& a) {
  HalfSection r = a;
  for (auto& j : r.v) j = f * j;
  for (auto& j : r.w) j = f * j;
  return r;
}

HalfSection half(const SectionJets& s, Chirality c) {
  return c == Chirality::Hol ? HalfSection{s.v, s.w} : HalfSection{s.vb, s.wb};
}

SectionJets combine(const HalfSection& hol, const HalfSection& anti) { return {hol.v, anti.v, hol.w, anti.w}; }

// ---------------------------------------------------------------- pairing / Dorfman

namespace {

int common(std::initializer_list<int> orders) { return *std::min_element(orders.begin(), orders.end()); }

}  // namespace

CJet pairing_s(const HalfSection& a, const HalfSection& b) {
  const int o = std::min(a.order(), b.order());
  const int nv = a.v[0].num_vars();
  CJet acc = CJet::zero(o, nv);
  for (int i = 0; i < a.dim(); ++i) {
    acc += a.v[i].truncated(o) * b.w[i].truncated(o);
    acc += b.v[i].truncated(o) * a.w[i].truncated(o);
  }
  return acc;
}

CJet pairing_s(const SectionJets& a, const SectionJets& b) {
  return pairing_s(half(a, Chirality::Hol), half(b, Chirality::Hol)) +
         pairing_s(half(a, Chirality::Anti), half(b, Chirality::Anti));
}

CJet pairing_s(const SectionE& a, const SectionE& b, std::span<const Complex> point, int order,
               const ParamValues& params) {
  return pairing_s(section_eval(a, point, order, params), section_eval(b, point, order, params));
}

HalfSection dorfman(const HalfSection& a, const HalfSection& b, Chirality c) {
  const int n = a.dim();
  const int K = common({a.order(), b.order()}) - 1;
  if (K < 0) throw JetError("dorfman: insufficient jet order");
  const int nv = a.v[0].num_vars();
  auto d = [&](const CJet& j, int k) { return j.derivative(chiral_var(c, k, n)).truncated(K); };
  std::vector<CJet> v1, w1, v2, w2;
  for (int i = 0; i < n; ++i) {
    v1.push_back(a.v[i].truncated(K));
    w1.push_back(a.w[i].truncated(K));
    v2.push_back(b.v[i].truncated(K));
    w2.push_back(b.w[i].truncated(K));
  }
  // dX[i][k] = d_k X^i
  auto grad = [&](const std::vector<CJet>& x) {
    std::vector<std::vector<CJet>> g(n);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) g[i].push_back(d(x[i], k));
    return g;
  };
  // a.v, a.w etc. at full order for differentiation
  const auto dv1 = grad(a.v), dv2 = grad(b.v), dw1 = grad(a.w), dw2 = grad(b.w);
  HalfSection r = HalfSection::zero(n, K, nv);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      r.v[i] += v1[k] * dv2[i][k] - v2[k] * dv1[i][k];
      r.w[i] += v1[k] * dw2[i][k] + w2[k] * dv1[k][i];
      r.w[i] -= v2[k] * (dw1[i][k] - dw1[k][i]);
    }
  }
  return r;
}

SectionJets dorfman(const SectionJets& a, const SectionJets& b) {
  return combine(dorfman(half(a, Chirality::Hol), half(b, Chirality::Hol), Chirality::Hol),
                 dorfman(half(a, Chirality::Anti), half(b, Chirality::Anti), Chirality::Anti));
}

SectionJets dorfman(const SectionE& a, const SectionE& b, std::span<const Complex> point, int order,
                    const ParamValues& params) {
  return dorfman(section_eval(a, point, order, params), section_eval(b, point, order, params));
}

CJet vector_action(const HalfSection& a, const CJet& f, Chirality c) {
  const int n = a.dim();
  const int K = common({a.order(), f.order()}) - 1;
  if (K < 0) throw JetError("vector_action: insufficient jet order");
  CJet acc = CJet::zero(K, f.num_vars());
  for (int k = 0; k < n; ++k) acc += a.v[k].truncated(K) * f.derivative(chiral_var(c, k, n)).truncated(K);
  return acc;
}

HalfSection differential(const CJet& f, Chirality c, int n) {
  HalfSection r = HalfSection::zero(n, f.order() - 1, f.num_vars());
  for (int k = 0; k < n; ++k) r.w[k] = f.derivative(chiral_var(c, k, n));
  return r;
}

// ---------------------------------------------------------------- vertex algebroid

namespace {

template <typename T>
int poly_order(const HPoly<T>& p);

template <>
int poly_order(const SectionPoly& p) {
  int o = 1 << 20;
  for (const auto& c : p.coeffs) o = std::min(o, c.order());
  return o;
}

template <>
int poly_order(const FunctionPoly& p) {
  int o = 1 << 20;
  for (const auto& c : p.coeffs) o = std::min(o, c.order());
  return o;
}

// Accumulates terms of possibly different jet orders and truncates to the lowest.
template <typename T>
class PolyBuilder {
 public:
  void add(int power, T term) { terms_.emplace_back(power, std::move(term)); }

  HPoly<T> finish(const T& zero_at_full) const {
    int order = zero_at_full.order();
    int degree = 0;
    for (const auto& [p, t] : terms_) {
      order = std::min(order, t.order());
      degree = std::max(degree, p);
    }
    HPoly<T> out;
    out.coeffs.assign(degree + 1, zero_at_full.truncated(order));
    for (const auto& [p, t] : terms_) out.coeffs[p] += t.truncated(order);
    return out;
  }

 private:
  std::vector<std::pair<int, T>> terms_;
};

HalfSection vector_part(const HalfSection& a) {
  HalfSection r = a;
  for (auto& j : r.w) j = CJet::zero(j.order(), j.num_vars());
  return r;
}

// dX^i d_i d_k v1^s d_s v2^k
HalfSection bracket_correction(const HalfSection& a, const HalfSection& b) {
  const int n = a.dim();
  const int K = common({a.order(), b.order() + 1}) - 2;
  if (K < 0) throw JetError("vertex bracket: insufficient jet order");
  const int nv = a.v[0].num_vars();
  HalfSection r = HalfSection::zero(n, K, nv);
  for (int s = 0; s < n; ++s) {
    for (int k = 0; k < n; ++k) {
      const CJet dv2 = b.v[k].derivative(s).truncated(K);
      const CJet dkv1 = a.v[s].derivative(k);
      for (int i = 0; i < n; ++i) r.w[i] += dkv1.derivative(i).truncated(K) * dv2;
    }
  }
  return r;
}

}  // namespace

SectionPoly constant_poly(const HalfSection& a) { return SectionPoly{{a}}; }

namespace {

template <typename T>
HPoly<T> add_polys(const HPoly<T>& a, const HPoly<T>& b) {
  PolyBuilder<T> out;
  for (int k = 0; k <= a.degree(); ++k) out.add(k, a.coeffs[k]);
  for (int k = 0; k <= b.degree(); ++k) out.add(k, b.coeffs[k]);
  T zero = a.coeffs.at(0);
  zero *= Complex(0);
  return out.finish(zero);
}

}  // namespace

SectionPoly operator+(const SectionPoly& a, const SectionPoly& b) { return add_polys(a, b); }
FunctionPoly operator+(const FunctionPoly& a, const FunctionPoly& b) { return add_polys(a, b); }

SectionPoly vertex_star(const CJet& f, const SectionPoly& a) {
  const int n = a.coeffs.at(0).dim();
  PolyBuilder<HalfSection> out;
  for (int p = 0; p <= a.degree(); ++p) {
    const HalfSection& x = a.coeffs[p];
    const int K = common({f.order(), x.order()});
    out.add(p, f.truncated(K) * x.truncated(K));
    const int K2 = common({f.order() - 2, x.order()});
    if (K2 < 0) throw JetError("vertex star: insufficient jet order");
    HalfSection corr = HalfSection::zero(n, K2, f.num_vars());
    for (int i = 0; i < n; ++i) {
      const CJet di = f.derivative(i);
      for (int j = 0; j < n; ++j) corr.w[i] += di.derivative(j).truncated(K2) * x.v[j].truncated(K2);
    }
    out.add(p + 1, corr);
  }
  return out.finish(HalfSection::zero(n, poly_order(a), f.num_vars()));
}

SectionPoly vertex_bracket(const SectionPoly& a, const SectionPoly& b) {
  const int n = a.coeffs.at(0).dim();
  const int nv = a.coeffs[0].v[0].num_vars();
  PolyBuilder<HalfSection> out;
  for (int p = 0; p <= a.degree(); ++p) {
    for (int q = 0; q <= b.degree(); ++q) {
      const HalfSection& x = a.coeffs[p];
      const HalfSection& y = b.coeffs[q];
      out.add(p + q + 1, dorfman(x, y, Chirality::Hol) * Complex(-1));
      out.add(p + q + 2, bracket_correction(vector_part(x), vector_part(y)) * Complex(-1));
    }
  }
  return out.finish(HalfSection::zero(n, std::min(poly_order(a), poly_order(b)), nv));
}

FunctionPoly vertex_pairing(const SectionPoly& a, const SectionPoly& b) {
  const int n = a.coeffs.at(0).dim();
  const int nv = a.coeffs[0].v[0].num_vars();
  PolyBuilder<CJet> out;
  for (int p = 0; p <= a.degree(); ++p) {
    for (int q = 0; q <= b.degree(); ++q) {
      const HalfSection& x = a.coeffs[p];
      const HalfSection& y = b.coeffs[q];
      out.add(p + q + 1, -pairing_s(x, y));
      const int K = common({x.order(), y.order()}) - 1;
      if (K < 0) throw JetError("vertex pairing: insufficient jet order");
      CJet vv = CJet::zero(K, nv);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) vv += x.v[j].derivative(i).truncated(K) * y.v[i].derivative(j).truncated(K);
      out.add(p + q + 2, -vv);
    }
  }
  return out.finish(CJet::zero(std::min(poly_order(a), poly_order(b)), nv));
}

FunctionPoly vertex_anchor(const SectionPoly& a, const CJet& f) {
  PolyBuilder<CJet> out;
  for (int p = 0; p <= a.degree(); ++p) out.add(p + 1, -vector_action(a.coeffs[p], f, Chirality::Hol));
  return out.finish(CJet::zero(std::min(poly_order(a), f.order()), f.num_vars()));
}

SectionPoly vertex_del(const CJet& f, int n) { return constant_poly(differential(f, Chirality::Hol, n)); }

HalfSection quasiclassical_limit(const SectionPoly& p) {
  if (p.degree() >= 1) return p.coeffs[1];
  const auto& c = p.coeffs.at(0);
  return HalfSection::zero(c.dim(), c.order(), c.v[0].num_vars());
}

CJet quasiclassical_limit(const FunctionPoly& p) {
  if (p.degree() >= 1) return p.coeffs[1];
  const auto& c = p.coeffs.at(0);
  return CJet::zero(c.order(), c.num_vars());
}

double max_coeff(const CJet& j) {
  double m = 0;
  for (auto c : j.coeffs()) m = std::max(m, std::abs(c));
  return m;
}

double max_coeff(const HalfSection& a) {
  double m = 0;
  for (const auto& j : a.v) m = std::max(m, max_coeff(j));
  for (const auto& j : a.w) m = std::max(m, max_coeff(j));
  return m;
}

double max_coeff_diff(const SectionPoly& a, const SectionPoly& b) {
  const int o = std::min(poly_order(a), poly_order(b));
  double m = 0;
  const int deg = std::max(a.degree(), b.degree());
  for (int k = 0; k <= deg; ++k) {
    if (k <= a.degree() && k <= b.degree()) {
      m = std::max(m, max_coeff(a.coeffs[k].truncated(o) - b.coeffs[k].truncated(o)));
    } else {
      m = std::max(m, max_coeff(k <= a.degree() ? a.coeffs[k] : b.coeffs[k]));
    }
  }
  return m;
}

double max_coeff_diff(const FunctionPoly& a, const FunctionPoly& b) {
  const int o = std::min(poly_order(a), poly_order(b));
  double m = 0;
  const int deg = std::max(a.degree(), b.degree());
  for (int k = 0; k <= deg; ++k) {
    if (k <= a.degree() && k <= b.degree()) {
      m = std::max(m, max_coeff(a.coeffs[k].truncated(o) - b.coeffs[k].truncated(o)));
    } else {
      m = std::max(m, max_coeff(k <= a.degree() ? a.coeffs[k] : b.coeffs[k]));
    }
  }
  return m;
}

// ---------------------------------------------------------------- Courant axioms

HalfSection bracket0(const HalfSection& a, const HalfSection& b, Chirality c) { return dorfman(a, b, c) * Complex(-1); }

CJet pairing0(const HalfSection& a, const HalfSection& b) { return -pairing_s(a, b); }

CJet anchor0(const HalfSection& a, const CJet& f, Chirality c) { return -vector_action(a, f, c); }

namespace {

double diff(const HalfSection& a, const HalfSection& b) {
  const int o = std::min(a.order(), b.order());
  return max_coeff(a.truncated(o) - b.truncated(o));
}

double diff(const CJet& a, const CJet& b) {
  const int o = std::min(a.order(), b.order());
  return max_coeff(a.truncated(o) - b.truncated(o));
}

}  // namespace

Report check_courant_axioms(const std::vector<SectionE>& sections, const std::vector<Expr>& functions,
                            const std::vector<std::vector<Complex>>& points, double tol, int order,
                            const ParamValues& params) {
  if (sections.size() < 2 || functions.empty()) {
    throw std::invalid_argument("check_courant_axioms: needs at least two sections and one function");
  }
  if (order < 2) throw std::invalid_argument("check_courant_axioms: jet order must be >= 2");
  Report rep;
  const char* names[] = {"anchor_of_del", "leibniz_in_function", "pairing_invariance", "bracket_of_del",
                         "pairing_with_del", "symmetric_part"};
  for (auto nm : names) rep.record(nm, 0.0, tol);
  rep.conventions["bracket0"] = "-dorfman";
  rep.conventions["pairing0"] = "-pairing_s";
  rep.conventions["anchor0"] = "-v(f)";
  rep.conventions["pairing_s_half_factor"] = "none";

  for (const auto& p : points) {
    std::vector<SectionJets> S;
    for (const auto& s : sections) S.push_back(section_eval(s, p, order, params));
    std::vector<CJet> F;
    for (const auto& f : functions) F.push_back(eval_jet(f, p, order, params));
    const int n = S[0].dim();

    for (Chirality c : {Chirality::Hol, Chirality::Anti}) {
      std::vector<HalfSection> Q;
      for (const auto& s : S) Q.push_back(half(s, c));
      for (const auto& f : F) {
        const HalfSection df = differential(f, c, n);
        for (const auto& g : F) rep.record(names[0], max_coeff(anchor0(df, g, c)), tol);
        for (const auto& q : Q) {
          rep.record(names[3], diff(bracket0(q, df, c), differential(anchor0(q, f, c), c, n)), tol);
          rep.record(names[4], diff(pairing0(q, df), anchor0(q, f, c)), tol);
        }
      }
      for (const auto& q1 : Q) {
        for (const auto& q2 : Q) {
          for (const auto& f : F) {
            const HalfSection lhs = bracket0(q1, f * q2, c);
            const int K = lhs.order();
            const HalfSection rhs =
                f.truncated(K) * bracket0(q1, q2, c).truncated(K) + anchor0(q1, f, c).truncated(K) * q2.truncated(K);
            rep.record(names[1], diff(lhs, rhs), tol);
          }
          const HalfSection sym = bracket0(q1, q2, c) + bracket0(q2, q1, c);
          rep.record(names[5], diff(sym, differential(pairing0(q1, q2), c, n)), tol);
          for (const auto& q : Q) {
            const CJet lhs = pairing0(bracket0(q, q1, c), q2) + pairing0(q1, bracket0(q, q2, c));
            rep.record(names[2], diff(lhs, anchor0(q, pairing0(q1, q2), c)), tol);
          }
        }
      }
    }
  }
  return rep;
}

}  // namespace bcv
