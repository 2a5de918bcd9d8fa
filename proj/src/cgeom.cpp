#include "bcv/cgeom.hpp"

#include <stdexcept>

namespace bcv {

bool is_upper(IndexType t) { return t == IndexType::HolUp || t == IndexType::AntiUp || t == IndexType::RealUp; }

IndexType conjugate(IndexType t) {
  switch (t) {
    case IndexType::HolUp:
      return IndexType::AntiUp;
    case IndexType::HolDown:
      return IndexType::AntiDown;
    case IndexType::AntiUp:
      return IndexType::HolUp;
    case IndexType::AntiDown:
      return IndexType::HolDown;
    default:
      return t;
  }
}

int extent(IndexType t, int n) { return (t == IndexType::RealUp || t == IndexType::RealDown) ? 2 * n : n; }

int realified_offset(IndexType t, int n) { return (t == IndexType::AntiUp || t == IndexType::AntiDown) ? n : 0; }

bool contractible(IndexType a, IndexType b) {
  switch (a) {
    case IndexType::HolUp:
      return b == IndexType::HolDown;
    case IndexType::HolDown:
      return b == IndexType::HolUp;
    case IndexType::AntiUp:
      return b == IndexType::AntiDown;
    case IndexType::AntiDown:
      return b == IndexType::AntiUp;
    case IndexType::RealUp:
      return b == IndexType::RealDown;
    case IndexType::RealDown:
      return b == IndexType::RealUp;
  }
  return false;
}

std::string to_string(IndexType t) {
  switch (t) {
    case IndexType::HolUp:
      return "hol-up";
    case IndexType::HolDown:
      return "hol-down";
    case IndexType::AntiUp:
      return "anti-up";
    case IndexType::AntiDown:
      return "anti-down";
    case IndexType::RealUp:
      return "real-up";
    case IndexType::RealDown:
      return "real-down";
  }
  return "?";
}

IndexType index_type_from_string(const std::string& s) {
  for (auto t : {IndexType::HolUp, IndexType::HolDown, IndexType::AntiUp, IndexType::AntiDown, IndexType::RealUp,
                 IndexType::RealDown})
    if (to_string(t) == s) return t;
  throw std::invalid_argument("unknown index type '" + s + "'");
}

std::vector<std::string> Chart::coordinate_names() const {
  std::vector<std::string> names;
  for (int i = 1; i <= dim; ++i) names.push_back("z" + std::to_string(i));
  for (int i = 1; i <= dim; ++i) names.push_back("zb" + std::to_string(i));
  return names;
}

// ---------------------------------------------------------------- TensorField

TensorField::TensorField(int dim, std::vector<IndexType> signature, std::vector<Expr> components)
    : dim_(dim), signature_(std::move(signature)), components_(std::move(components)) {
  if (dim_ < 1) throw std::invalid_argument("TensorField: dimension must be >= 1");
  std::size_t expected = 1;
  for (auto t : signature_) expected *= static_cast<std::size_t>(extent(t, dim_));
  if (components_.size() != expected) {
    throw std::invalid_argument("TensorField: expected " + std::to_string(expected) + " components, got " +
                                std::to_string(components_.size()));
  }
  for (const auto& c : components_) {
    if (c.max_coord_index() > dim_) throw std::invalid_argument("TensorField: component uses a coordinate beyond dim");
  }
}

TensorField TensorField::zero(int dim, std::vector<IndexType> signature) {
  std::size_t count = 1;
  for (auto t : signature) count *= static_cast<std::size_t>(extent(t, dim));
  return TensorField(dim, std::move(signature), std::vector<Expr>(count));
}

TensorField TensorField::scalar(int dim, Expr e) { return TensorField(dim, {}, {std::move(e)}); }

std::vector<int> TensorField::shape() const {
  std::vector<int> s;
  for (auto t : signature_) s.push_back(extent(t, dim_));
  return s;
}

std::size_t TensorField::offset(std::span<const int> idx) const {
  if (idx.size() != signature_.size()) throw std::invalid_argument("TensorField: index rank mismatch");
  std::size_t off = 0;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    const int e = extent(signature_[a], dim_);
    if (idx[a] < 0 || idx[a] >= e) throw std::out_of_range("TensorField: index out of range");
    off = off * e + idx[a];
  }
  return off;
}

const Expr& TensorField::component(std::span<const int> idx) const { return components_[offset(idx)]; }

void TensorField::set_component(std::span<const int> idx, Expr e) { components_[offset(idx)] = std::move(e); }

JetTensor tensor_eval(const TensorField& t, std::span<const Complex> point, int order, const ParamValues& params,
                      int num_vars) {
  if (static_cast<int>(point.size()) != 2 * t.dim()) throw EvalError("tensor_eval: point length must be 2n");
  const int nv = num_vars < 0 ? 2 * t.dim() : num_vars;
  JetTensor r(t.shape(), order, nv);
  for (std::size_t k = 0; k < r.size(); ++k) r.data()[k] = eval_jet(t.components()[k], point, order, params, nv);
  return r;
}

// ---------------------------------------------------------------- realified calculus

RealTensor realify(const std::vector<IndexType>& signature, const JetTensor& comps, int n) {
  RealTensor r;
  std::vector<int> shape(signature.size(), 2 * n);
  r.t = JetTensor(shape, comps.order(), comps.num_vars());
  for (auto s : signature) r.upper.push_back(is_upper(s));
  for (std::size_t k = 0; k < comps.size(); ++k) {
    auto idx = comps.index_of(k);
    for (std::size_t a = 0; a < idx.size(); ++a) idx[a] += realified_offset(signature[a], n);
    r.t.at(idx) = comps.data()[k];
  }
  return r;
}

RealTensor lie_derivative(std::span<const CJet> V, const RealTensor& t) {
  const int N = static_cast<int>(V.size());
  for (int a = 0; a < t.rank(); ++a)
    if (t.t.extent(a) != N) throw JetError("lie_derivative: tensor is not on the realified index set");
  const int K = std::min(t.t.order(), V.empty() ? t.t.order() : V[0].order()) - 1;
  if (K < 0) throw JetError("lie_derivative: insufficient jet order");

  std::vector<JetTensor> dt;
  std::vector<std::vector<CJet>> dV(N, std::vector<CJet>(N));  // dV[r][a] = d_r V^a
  std::vector<CJet> Vk;
  for (int r = 0; r < N; ++r) {
    dt.push_back(t.t.derivative(r).truncated(K));
    for (int a = 0; a < N; ++a) dV[r][a] = V[a].derivative(r).truncated(K);
    Vk.push_back(V[r].truncated(K));
  }
  const JetTensor tk = t.t.truncated(K);

  RealTensor out{t.upper, JetTensor(t.t.shape(), K, t.t.num_vars())};
  for (std::size_t flat = 0; flat < out.t.size(); ++flat) {
    auto idx = out.t.index_of(flat);
    CJet acc = CJet::zero(K, t.t.num_vars());
    for (int r = 0; r < N; ++r) acc += Vk[r] * dt[r].data()[flat];
    for (int s = 0; s < t.rank(); ++s) {
      const int orig = idx[s];
      for (int r = 0; r < N; ++r) {
        idx[s] = r;
        if (t.upper[s]) {
          acc -= tk.at(idx) * dV[r][orig];
        } else {
          acc += tk.at(idx) * dV[orig][r];
        }
      }
      idx[s] = orig;
    }
    out.t.data()[flat] = acc;
  }
  return out;
}

RealTensor lie_derivative(const TensorField& v, const TensorField& vbar, const TensorField& t,
                          std::span<const Complex> point, int order, const ParamValues& params) {
  const int n = t.dim();
  if (v.signature() != std::vector{IndexType::HolUp} || vbar.signature() != std::vector{IndexType::AntiUp}) {
    throw std::invalid_argument("lie_derivative: v must be hol-up and vbar anti-up");
  }
  const JetTensor vj = tensor_eval(v, point, order, params);
  const JetTensor vbj = tensor_eval(vbar, point, order, params);
  std::vector<CJet> V(vj.data());
  V.insert(V.end(), vbj.data().begin(), vbj.data().end());
  return lie_derivative(V, realify(t.signature(), tensor_eval(t, point, order, params), n));
}

double antisymmetry_defect(const JetTensor& t) {
  double defect = 0;
  for (std::size_t flat = 0; flat < t.size(); ++flat) {
    auto idx = t.index_of(flat);
    for (int a = 0; a < t.rank(); ++a) {
      for (int b = a + 1; b < t.rank(); ++b) {
        std::swap(idx[a], idx[b]);
        const CJet& other = t.at(idx);
        std::swap(idx[a], idx[b]);
        const auto c1 = t.data()[flat].coeffs();
        const auto c2 = other.coeffs();
        for (std::size_t k = 0; k < c1.size(); ++k) defect = std::max(defect, std::abs(c1[k] + c2[k]));
      }
    }
  }
  return defect;
}

RealTensor exterior_derivative(const RealTensor& form, double antisym_tol, int real_dim) {
  for (bool u : form.upper)
    if (u) throw std::invalid_argument("exterior_derivative: form must have lower indices only");
  const int k = form.rank();
  const int N = k > 0 ? form.t.extent(0) : real_dim > 0 ? real_dim : form.t.num_vars();
  if (k > 0 && antisymmetry_defect(form.t) > antisym_tol * std::max(1.0, max_abs(form.t))) {
    throw std::invalid_argument("exterior_derivative: input is not antisymmetric");
  }
  if (k >= N) throw std::invalid_argument("exterior_derivative: form degree must be below 2n");
  if (form.t.order() < 1) throw JetError("exterior_derivative: insufficient jet order");

  std::vector<JetTensor> d;
  for (int r = 0; r < N; ++r) d.push_back(form.t.derivative(r));
  RealTensor out{std::vector<bool>(k + 1, false),
                 JetTensor(std::vector<int>(k + 1, N), form.t.order() - 1, form.t.num_vars())};
  std::vector<int> rest(k);
  for (std::size_t flat = 0; flat < out.t.size(); ++flat) {
    auto idx = out.t.index_of(flat);
    CJet acc = CJet::zero(out.t.order(), out.t.num_vars());
    for (int j = 0; j <= k; ++j) {
      for (int a = 0, b = 0; a <= k; ++a)
        if (a != j) rest[b++] = idx[a];
      const CJet& term = d[idx[j]].at(rest);
      if (j % 2 == 0) {
        acc += term;
      } else {
        acc -= term;
      }
    }
    out.t.data()[flat] = acc;
  }
  return out;
}

TensorField conjugate(const TensorField& t) {
  const int n = t.dim();
  std::vector<IndexType> sig;
  for (auto s : t.signature()) sig.push_back(conjugate(s));
  TensorField out = TensorField::zero(n, sig);
  const auto shape = t.shape();
  std::vector<int> idx(shape.size());
  for (std::size_t flat = 0; flat < t.components().size(); ++flat) {
    std::size_t rem = flat;
    for (int a = static_cast<int>(shape.size()) - 1; a >= 0; --a) {
      idx[a] = static_cast<int>(rem % shape[a]);
      rem /= shape[a];
    }
    auto target = idx;
    for (std::size_t a = 0; a < idx.size(); ++a)
      if (t.signature()[a] == IndexType::RealUp || t.signature()[a] == IndexType::RealDown)
        target[a] = (idx[a] + n) % (2 * n);
    out.set_component(target, conjugate_symbols(t.components()[flat]));
  }
  return out;
}

// ---------------------------------------------------------------- sections

SectionE SectionE::zero(int dim) {
  SectionE s;
  s.dim = dim;
  s.v = s.vb = s.w = s.wb = std::vector<Expr>(dim);
  return s;
}

int SectionJets::order() const { return v.at(0).order(); }

SectionJets SectionJets::truncated(int order) const {
  SectionJets r = *this;
  for (auto* block : {&r.v, &r.vb, &r.w, &r.wb})
    for (auto& j : *block) j = j.truncated(order);
  return r;
}

SectionJets section_eval(const SectionE& s, std::span<const Complex> point, int order, const ParamValues& params,
                         int num_vars) {
  if (static_cast<int>(point.size()) != 2 * s.dim) throw EvalError("section_eval: point length must be 2n");
  auto block = [&](const std::vector<Expr>& b) {
    if (static_cast<int>(b.size()) != s.dim) throw std::invalid_argument("SectionE: block length must equal dim");
    std::vector<CJet> out;
    for (const auto& e : b) out.push_back(eval_jet(e, point, order, params, num_vars));
    return out;
  };
  return {block(s.v), block(s.vb), block(s.w), block(s.wb)};
}

SectionE conjugate(const SectionE& s) {
  auto c = [](const std::vector<Expr>& b) {
    std::vector<Expr> out;
    for (const auto& e : b) out.push_back(conjugate_symbols(e));
    return out;
  };
  return {s.dim, c(s.vb), c(s.v), c(s.wb), c(s.w)};
}

}  // namespace bcv
