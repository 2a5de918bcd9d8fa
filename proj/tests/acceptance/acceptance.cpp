// Prints one PASS/FAIL line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <Eigen/Dense>

#include "../support/fd.hpp"
#include "bcv/beltrami.hpp"
#include "bcv/gravity.hpp"
#include "bcv/homotopy.hpp"
#include "bcv/scenario.hpp"

using namespace bcv;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Tracks the worst residual seen against a bound.
struct Worst {
  double value = 0;
  double bound;
  explicit Worst(double b) : bound(b) {}
  void operator()(double x) { value = std::isnan(x) ? INFINITY : std::max(value, x); }
  bool ok() const { return value <= bound; }
  std::string str(const char* name) const {
    std::ostringstream s;
    s << name << " " << value << " (<= " << bound << ")";
    return s.str();
  }
};

const std::vector<IndexType> kG{IndexType::HolUp, IndexType::AntiUp};
const std::vector<IndexType> kMu{IndexType::HolUp, IndexType::AntiDown};
const std::vector<IndexType> kMub{IndexType::HolDown, IndexType::AntiUp};
const std::vector<IndexType> kB{IndexType::HolDown, IndexType::AntiDown};

SectionE random_section(Rng& rng, int n, int degree) {
  SectionE s = SectionE::zero(n);
  for (auto* b : {&s.v, &s.vb, &s.w, &s.wb})
    for (auto& e : *b) e = random_polynomial(rng, n, degree, 1.0);
  return s;
}

TensorField random_field(Rng& rng, int n, const std::vector<IndexType>& sig, int degree, double scale,
                         bool unit = false) {
  std::vector<Expr> e;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      Expr x = random_polynomial(rng, n, degree, scale);
      if (unit && i == j) x = x + Expr::literal(1.0);
      e.push_back(x);
    }
  return TensorField(n, sig, e);
}

double diff(const JetTensor& a, const JetTensor& b) {
  const int k = std::min(a.order(), b.order());
  JetTensor d = a.truncated(k);
  d -= b.truncated(k);
  return max_abs(d);
}

double cond(const Eigen::MatrixXcd& m) {
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  const auto s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

HalfSection hol(const SectionE& s, std::span<const Complex> p, int order) {
  return half(section_eval(s, p, order), Chirality::Hol);
}

Outcome jets_fd() {
  Rng rng(2024);
  Worst w(1e-6);
  for (int t = 0; t < 50; ++t) {
    const int n = 1 + t % 3;
    const auto p = random_point(rng, n, 0.5, false);
    const Expr e = random_expression(rng, n, 3, p);
    const CJet j = eval_jet(e, p, 2);
    auto f = [&](const std::vector<Complex>& q) { return eval_value(e, q); };
    for (int k = 0; k < 2 * n; ++k) {
      w(fd::rel_err(j.partial(k), fd::first(f, p, k)));
      for (int l = k; l < 2 * n; ++l) {
        std::vector<int> a(2 * n, 0);
        ++a[k];
        ++a[l];
        w(fd::rel_err(j.partial(a), fd::second(f, p, k, l)));
      }
    }
  }
  return {w.ok(), "50 expressions, " + w.str("max rel err")};
}

Outcome courant_axioms() {
  Rng rng(31);
  Worst w(1e-9);
  for (int n : {2, 3}) {
    for (int t = 0; t < 100; ++t) {
      std::vector<SectionE> S{random_section(rng, n, 2), random_section(rng, n, 2), random_section(rng, n, 2)};
      std::vector<Expr> F{random_polynomial(rng, n, 2, 1.0), random_polynomial(rng, n, 3, 1.0)};
      const auto rep = check_courant_axioms(S, F, {random_point(rng, n, 0.5, false)}, 1e-9);
      if (rep.checks.size() != 6) return {false, "expected six axiom checks"};
      for (const auto& c : rep.checks) w(c.residual);
    }
  }
  return {w.ok(), "200 draws (n = 2, 3), six axioms, " + w.str("max residual")};
}

Outcome vertex_algebroid() {
  Rng rng(5);
  Worst leib(1e-9), lim(1e-12);
  for (int t = 0; t < 100; ++t) {
    const int n = 2;
    const auto p = random_point(rng, n, 0.5, false);
    const auto a = constant_poly(hol(random_section(rng, n, 3), p, 5));
    const auto b = constant_poly(hol(random_section(rng, n, 3), p, 5));
    const auto c = constant_poly(hol(random_section(rng, n, 3), p, 5));
    leib(max_coeff_diff(vertex_bracket(a, vertex_bracket(b, c)),
                        vertex_bracket(vertex_bracket(a, b), c) + vertex_bracket(b, vertex_bracket(a, c))));
    const auto A = a.coeffs[0], B = b.coeffs[0];
    const HalfSection bl = quasiclassical_limit(vertex_bracket(a, b));
    const HalfSection dor = dorfman(A, B, Chirality::Hol) * Complex(-1);
    const int o = std::min(bl.order(), dor.order());
    lim(max_coeff(bl.truncated(o) - dor.truncated(o)));
    const CJet pl = quasiclassical_limit(vertex_pairing(a, b));
    const CJet ps = pairing_s(A, B);
    const int po = std::min(pl.order(), ps.order());
    lim(max_coeff(pl.truncated(po) + ps.truncated(po)));
  }
  return {leib.ok() && lim.ok(), "100 draws, " + leib.str("Leibniz") + ", " + lim.str("h^1 limits")};
}

Outcome complex_structure() {
  Rng rng(77);
  Worst w(1e-10);
  int count = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const int degree = t % 4;
    const auto p = random_point(rng, n, 0.5, false);
    const Expr weight = random_polynomial(rng, n, 3, 1.0);
    if (weight.max_coord_index() == 0) return {false, "volume weight came out constant"};
    const CJet f = eval_jet(weight, p, 4);
    std::optional<SectionE> s;
    if (degree == 1 || degree == 2) {
      SectionE sec = SectionE::zero(n);
      for (auto* b : {&sec.v, &sec.w})
        for (auto& e : *b) e = random_polynomial(rng, n, 3, 1.0);
      s = sec;
    }
    const GradedJets x = graded_eval(GradedElement::make(n, degree, random_polynomial(rng, n, 3, 1.0), s), p, 4);
    if (degree <= 1) w(max_coeff(q_diff(q_diff(x, f), f)));
    if (degree == 1 || degree == 2) {
      GradedJets bq = b_op(q_diff(x, f));
      bq.scalar = -bq.scalar;
      if (bq.section) *bq.section *= Complex(-1);
      w(max_coeff(difference(q_diff(b_op(x), f), bq)));
    }
    if (degree >= 2) w(max_coeff(b_op(b_op(x))));
    ++count;
  }
  return {w.ok() && count == 100, "100 graded elements, Q^2, Qb + bQ, b^2: " + w.str("max residual")};
}

Outcome symmetry_oracle() {
  Rng rng(99);
  Worst w(1e-8), rank(1e-10);
  for (int t = 0; t < 100; ++t) {
    const int n = 2;
    const auto p = random_point(rng, n, 0.5, t % 2 == 0);
    BeltramiCourant M = BeltramiCourant::zero(n);
    M.mu = random_field(rng, n, kMu, 2, 1.0);
    M.mub = random_field(rng, n, kMub, 2, 1.0);
    M.b = random_field(rng, n, kB, 2, 1.0);
    const SectionE a = random_section(rng, n, 3);
    const MJets lhs = delta_M(a, M, p, 3);
    const MJets rhs = component_delta(a, M, p, 3);
    const double scale = std::max(1.0, rhs.max_abs());
    w(diff(lhs.mu, rhs.mu) / scale);
    w(diff(lhs.mub, rhs.mub) / scale);
    w(diff(lhs.b, rhs.b) / scale);
    w(max_abs(lhs.g) / scale);
  }
  for (int t = 0; t < 30; ++t) {
    const int n = 1 + t % 3;
    const int nv = 2 * n;
    const auto p = random_point(rng, n, 0.5, false);
    const SectionJets a = section_eval(random_section(rng, n, 3), p, 3);
    auto jets = [&] {
      std::vector<CJet> out;
      for (int c = 0; c < 2 * n; ++c) {
        CJet j = CJet::zero(3, nv);
        for (auto& x : j.coeffs()) x = random_complex(rng, 1.0);
        out.push_back(j);
      }
      return out;
    };
    std::vector<RankOne> L{RankOne{jets(), jets()}};
    if (t % 2) L.push_back(RankOne{jets(), jets()});
    const MJets endo = phi2(a, from_rank_ones(L, n));
    const MJets d = endo - phi2_jet(a, L, L);
    rank(d.max_abs() / std::max(1.0, endo.max_abs()));
  }
  return {w.ok() && rank.ok(), "100 draws at n = 2, " + w.str("delta_M vs components") + "; 30 rank-one draws, " +
                                   rank.str("phi2")};
}

Outcome theorem11() {
  Rng rng(42);
  Worst w(1e-8);
  int draws = 0;
  while (draws < 50) {
    const int n = 1 + draws % 3;
    const auto p = random_point(rng, n, 0.4, draws % 2 == 0);
    BeltramiCourant M{random_field(rng, n, kG, 2, 0.3, true), random_field(rng, n, kMu, 2, 1.0),
                      random_field(rng, n, kMub, 2, 1.0), random_field(rng, n, kB, 2, 1.0)};
    if (cond(tensor_eval(M.g, p, 0).value_matrix()) > 10.0) continue;
    const auto rep = check_theorem11(random_section(rng, n, 3), M, p, 1e-8);
    for (const auto& c : rep.checks) w(c.residual);
    ++draws;
  }
  return {w.ok(), "50 draws (cond g <= 10), " + w.str("max residual")};
}

Outcome kahler_identity() {
  Rng rng(13);
  Worst fs(1e-7), rk(1e-7);
  const auto FS = fubini_study_family(2);
  for (int k = 0; k < 20; ++k) fs(ricci_kahler_identity(FS, random_point(rng, 2, 0.5), 1e-7).residual("ricci_identity"));
  for (int k = 0; k < 10; ++k) {
    const int n = 1 + k % 3;
    const auto data = random_kahler_family(rng, n);
    for (int q = 0; q < 3; ++q) {
      const auto rep = ricci_kahler_identity(data, random_point(rng, n, 0.4), 1e-7);
      rk(rep.residual("ricci_identity"));
      rk(rep.residual("kahler_defect"));
    }
  }
  return {fs.ok() && rk.ok(), "Fubini-Study 20 points " + fs.str("rel") + "; 10 random Kahler metrics " + rk.str("rel")};
}

Outcome equivalence() {
  Rng rng(8);
  std::ostringstream detail;
  bool ok = true;
  auto pts = [&](int n) {
    std::vector<std::vector<Complex>> out;
    for (int k = 0; k < 20; ++k) out.push_back(random_point(rng, n, 0.5));
    return out;
  };
  auto run = [&](const char* name, const HermitianData& data, std::optional<Classification> expect) {
    const auto r = equivalence_report(data, pts(data.dim), 1e-8);
    int bad = 0, mismatched = 0;
    for (const auto& v : r.points) {
      if (v.classification == Classification::Discrepancy) ++bad;
      if (expect && v.classification != *expect) ++mismatched;
    }
    ok = ok && bad == 0 && mismatched == 0 && r.points.size() >= 20;
    detail << name << " " << bad << " discrepancies";
    if (mismatched) detail << " (" << mismatched << " unexpected)";
    detail << "; ";
  };
  run("flat", flat_family(2, parse("0.4", 2)), Classification::BothVanish);
  run("linear-dilaton", linear_dilaton_family(2, 0.3), Classification::BothViolated);
  run("fubini-study", fubini_study_family(2), std::nullopt);
  for (int k = 0; k < 2; ++k) run("random-hermitian", random_hermitian_family(rng, 2), std::nullopt);

  // constraint-3 and dilaton-equation residuals at lambda and 2 lambda
  const std::vector<Complex> p{0.1, -0.2, 0.1, -0.2};
  double worst = 0;
  for (double lambda : {0.1, 0.3, 0.7}) {
    const auto a = linear_dilaton_family(2, lambda), b = linear_dilaton_family(2, 2 * lambda);
    const double mc_ratio = mc_residuals(b, p, 1e-9).residual("double_divergence") /
                            mc_residuals(a, p, 1e-9).residual("double_divergence");
    const Background ga = background_from_g(a, p), gb = background_from_g(b, p);
    const double eq_ratio = std::abs(einstein_residuals(gb.G, gb.B, gb.Phi).eq3) /
                            std::abs(einstein_residuals(ga.G, ga.B, ga.Phi).eq3);
    worst = std::max({worst, std::abs(mc_ratio - 4), std::abs(eq_ratio - 4)});
  }
  ok = ok && worst <= 1e-9;
  detail << "lambda^2 scaling error " << worst;
  return {ok, detail.str()};
}

Outcome double_bracket_paths() {
  Rng rng(12);
  Worst w(1e-9);
  for (int t = 0; t < 100; ++t) {
    const int n = 1 + t % 3;
    const auto p = random_point(rng, n, 0.5, false);
    auto term = [&] {
      BivectorTerm b;
      for (int i = 0; i < n; ++i) {
        b.v.push_back(eval_jet(random_polynomial(rng, n, 3, 1.0, VarSet::Holomorphic), p, 4));
        b.vb.push_back(eval_jet(random_polynomial(rng, n, 3, 1.0, VarSet::Antiholomorphic), p, 4));
      }
      return b;
    };
    std::vector<BivectorTerm> G{term()}, H{term()};
    if (t % 2) G.push_back(term());
    const JetTensor comp = double_bracket(bivector_from_terms(G), bivector_from_terms(H));
    w(diff(double_bracket_jet(G, H), comp) / std::max(1.0, max_abs(comp)));
  }
  return {w.ok(), "100 rank-decomposed draws, " + w.str("max rel diff")};
}

Outcome cli_end_to_end() {
  namespace fs = std::filesystem;
  int configs = 0, passed = 0, deterministic = 0;
  std::set<std::string> kinds;
  for (const auto& entry : fs::directory_iterator(fs::path(BCV_SOURCE_DIR) / "configs")) {
    if (entry.path().extension() != ".yaml") continue;
    ++configs;
    const auto cfg = cli::load_config(entry.path().string());
    auto a = cli::run_scenario(cfg), b = cli::run_scenario(cfg);
    kinds.insert(a["scenario"]["kind"].get<std::string>());
    if (a["passed"].get<bool>()) ++passed;
    a.erase("timing");
    b.erase("timing");
    if (cli::dump(a) == cli::dump(b)) ++deterministic;
  }
  const std::string cmd = std::string(BCV_PYTHON) + " " + BCV_SOURCE_DIR + "/tests/cli/check_cli.py " + BCV_EXE +
                          " " + BCV_SOURCE_DIR + " > /dev/null 2>&1";
  const bool script = std::system(cmd.c_str()) == 0;
  std::ostringstream s;
  s << configs << " configs covering " << kinds.size() << " kinds, " << passed << " pass, " << deterministic
    << " deterministic; executable schema/exit-code script " << (script ? "ok" : "failed");
  return {configs == passed && configs == deterministic && kinds.size() == 9 && script, s.str()};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
  double budget_seconds;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {"jet correctness", jets_fd, 5},
      {"Courant axioms", courant_axioms, 10},
      {"vertex algebroid", vertex_algebroid, 0},
      {"complex structure", complex_structure, 0},
      {"symmetry oracle", symmetry_oracle, 0},
      {"induced (G, B) variation", theorem11, 30},
      {"Kahler identity", kahler_identity, 0},
      {"constraint/Einstein equivalence", equivalence, 60},
      {"double bracket dual path", double_bracket_paths, 0},
      {"CLI end-to-end", cli_end_to_end, 180},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto& c = criteria[k];
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0 && secs > c.budget_seconds) {
      o.pass = false;
      o.detail += "; over time budget";
    }
    if (!o.pass) ++failed;
    std::printf("[%s] %2zu %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", k + 1, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed ? 1 : 0;
}
