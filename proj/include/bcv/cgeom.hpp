#pragma once

#include <span>
#include <string>
#include <vector>

#include "bcv/fieldlang.hpp"
#include "bcv/jet_tensor.hpp"

namespace bcv {

/// Slot types. The Real* variants range over the realified index set
/// (z1..zn, zb1..zbn) in that order, extent 2n.
enum class IndexType { HolUp, HolDown, AntiUp, AntiDown, RealUp, RealDown };

bool is_upper(IndexType t);
IndexType conjugate(IndexType t);
int extent(IndexType t, int n);
/// Offset of the slot's range inside the realified index set.
int realified_offset(IndexType t, int n);
/// Only hol-up/hol-down and anti-up/anti-down (and real-up/real-down) contract.
bool contractible(IndexType a, IndexType b);
std::string to_string(IndexType t);
IndexType index_type_from_string(const std::string& s);

struct Chart {
  int dim = 1;
  Expr volume_exponent;  // f, with volume form e^f dz^1..dz^n dzb^1..dzb^n
  ParamValues params;

  std::vector<std::string> coordinate_names() const;
};

class TensorField {
 public:
  TensorField() = default;
  TensorField(int dim, std::vector<IndexType> signature, std::vector<Expr> components);

  static TensorField zero(int dim, std::vector<IndexType> signature);
  static TensorField scalar(int dim, Expr e);

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(signature_.size()); }
  const std::vector<IndexType>& signature() const { return signature_; }
  const std::vector<Expr>& components() const { return components_; }
  std::vector<int> shape() const;

  const Expr& component(std::span<const int> idx) const;
  void set_component(std::span<const int> idx, Expr e);

 private:
  std::size_t offset(std::span<const int> idx) const;

  int dim_ = 1;
  std::vector<IndexType> signature_;
  std::vector<Expr> components_;
};

/// Jets of every component, shaped by the signature's extents.
JetTensor tensor_eval(const TensorField& t, std::span<const Complex> point, int order,
                      const ParamValues& params = {}, int num_vars = -1);

/// A tensor on the realified index set: every slot has extent 2n.
struct RealTensor {
  std::vector<bool> upper;
  JetTensor t;

  int rank() const { return static_cast<int>(upper.size()); }
};

/// Embeds block-typed components into the realified index set (zero elsewhere).
RealTensor realify(const std::vector<IndexType>& signature, const JetTensor& comps, int n);

/// Standard Lie derivative: V^r d_r t, minus t^{..r..} d_r V^a per upper slot, plus
/// t_{..r..} d_b V^r per lower slot. V has 2n entries (v then vbar). The result is one
/// order lower than the lower of the operand orders.
RealTensor lie_derivative(std::span<const CJet> V, const RealTensor& t);

RealTensor lie_derivative(const TensorField& v, const TensorField& vbar, const TensorField& t,
                          std::span<const Complex> point, int order, const ParamValues& params = {});

/// (d w)_{m0..mk} = sum_j (-1)^j d_{mj} w_{m0..^mj..mk}. The input must be a fully
/// antisymmetric lower-index tensor; this is checked on every jet coefficient.
/// For a scalar (rank 0) `real_dim` gives the number of coordinates to differentiate in.
RealTensor exterior_derivative(const RealTensor& form, double antisym_tol = 1e-10, int real_dim = -1);

/// Largest coefficient-level deviation from full antisymmetry.
double antisymmetry_defect(const JetTensor& t);

/// Swaps hol and anti slot types and z/zb symbols in every component.
TensorField conjugate(const TensorField& t);

/// Section (v, vbar, w, wbar) of E = TM + T*M split by chirality.
struct SectionE {
  int dim = 1;
  std::vector<Expr> v, vb, w, wb;

  static SectionE zero(int dim);
};

struct SectionJets {
  std::vector<CJet> v, vb, w, wb;

  int dim() const { return static_cast<int>(v.size()); }
  int order() const;
  SectionJets truncated(int order) const;
};

SectionJets section_eval(const SectionE& s, std::span<const Complex> point, int order,
                         const ParamValues& params = {}, int num_vars = -1);

SectionE conjugate(const SectionE& s);

}  // namespace bcv
