#include "boxlab/decomposition.hpp"

#include "boxlab/inequalities.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <thread>

namespace boxlab {

std::string strategy_label(DetStrategy s) { return std::to_string(s.alpha) + std::to_string(s.beta); }

std::string to_string(InstanceStatus s) {
  switch (s) {
    case InstanceStatus::Feasible: return "feasible";
    case InstanceStatus::Infeasible: return "infeasible";
    case InstanceStatus::Degenerate: return "degenerate";
    case InstanceStatus::Pruned: return "pruned";
    case InstanceStatus::Inconclusive: return "inconclusive";
    case InstanceStatus::Unsupported: return "unsupported";
  }
  return "?";
}

Grouping Grouping::singletons(int m) {
  Grouping g;
  for (int i = 0; i < m; ++i) g.group_of.push_back(i);
  return g;
}

Grouping Grouping::from_blocks(int m, const std::vector<std::vector<int>>& blocks) {
  Grouping g;
  g.group_of.assign(m, -1);
  for (int b = 0; b < static_cast<int>(blocks.size()); ++b)
    for (int l : blocks[b]) {
      if (l < 0 || l >= m || g.group_of[l] != -1) throw DomainError("blocks must partition 0.." + std::to_string(m - 1));
      g.group_of[l] = b;
    }
  for (int v : g.group_of)
    if (v < 0) throw DomainError("blocks do not cover every index");
  return g;
}

int Grouping::groups() const {
  int k = 0;
  for (int v : group_of) k = std::max(k, v + 1);
  return k;
}

std::vector<std::vector<int>> Grouping::blocks() const {
  std::vector<std::vector<int>> out(groups());
  for (int l = 0; l < size(); ++l) out[group_of[l]].push_back(l);
  return out;
}

int LhvLhsModel::dimension() const {
  std::vector<SingleTable> seen;
  for (const auto& t : bob_tables)
    if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
  return static_cast<int>(seen.size());
}

namespace {

// Variables: p_l at l, beta_{l,y} at m + y m + l, with w_l(b|y) = (p_l + (-1)^b beta_{l,y}) / 2.
class Instance {
public:
  Instance(const Box222& box, const AliceAssignment& A, const Grouping& G, ModelKind kind)
      : box_(box), A_(A), G_(G), kind_(kind), m_(A.size()), n_(3 * A.size()) {
    if (m_ < 1 || m_ > 4) throw DimensionError("assignment size must be 1..4, got " + std::to_string(m_));
    if (G.size() != m_) throw DimensionError("grouping size does not match the assignment");
    for (int v : G.group_of)
      if (v < 0 || v >= m_) throw DomainError("grouping labels out of range");
    validate_box(box);
    blocks_ = G.blocks();
    for (const auto& b : blocks_)
      if (b.empty()) throw DomainError("grouping labels must be contiguous");
  }

  Certificate run() {
    cert_.variables = n_;
    add_box_equations();
    if (!solve()) return infeasible("box equations are inconsistent");
    add_couplings();
    if (!solve()) return infeasible("group couplings are inconsistent with the box equations");

    for (;;) {
      for (int l = 0; l < m_; ++l)
        if (zero_on_space(var(P(l)))) {
          cert_.forced_zero = l;
          const std::string what = "p(" + name(l) + ") is forced to 0";
          if (tangency_) return infeasible(what + " after tangency propagation");
          throw DegenerateError(l, what + " by the linear system");
        }
      if (propagate()) {
        if (!solve()) return infeasible("propagated equalities are inconsistent");
        continue;
      }
      auto step = implied_equalities();
      if (step == Step::Infeasible) return cert_;
      if (step == Step::Changed) {
        if (!solve()) return infeasible("implied equalities are inconsistent");
        continue;
      }
      break;
    }
    return kind_ == ModelKind::Lhv ? finish_lhv() : finish_lhs();
  }

private:
  enum class Step { Fixed, Changed, Infeasible };

  int P(int l) const { return l; }
  int B(int l, int y) const { return m_ + y * m_ + l; }
  VectorXq var(int i) const {
    VectorXq v = VectorXq::Zero(n_);
    v(i) = 1;
    return v;
  }
  // p_l + s beta_{l,y}
  VectorXq edge(int l, int y, int s) const {
    VectorXq v = var(P(l));
    v(B(l, y)) = s;
    return v;
  }
  std::string name(int l) const { return "lambda" + std::to_string(l) + "[" + strategy_label(A_.strategies[l]) + "]"; }
  static std::string sgn(int s) { return s > 0 ? "+" : "-"; }

  void add_eq(const VectorXq& a, const Rational& b, std::string why) {
    rows_.push_back(a);
    rhs_.push_back(b);
    if (!why.empty()) cert_.derivation.push_back(std::move(why));
  }

  bool solve() {
    MatrixXq A(static_cast<int>(rows_.size()), n_);
    VectorXq b(static_cast<int>(rows_.size()));
    for (int i = 0; i < A.rows(); ++i) {
      A.row(i) = rows_[i].transpose();
      b(i) = rhs_[i];
    }
    sol_ = solve_linear_exact(A, b);
    cert_.equations = static_cast<int>(rows_.size());
    cert_.rank = sol_.rank;
    cert_.augmented_rank = sol_.augmented_rank;
    cert_.free_parameters = sol_.consistent ? sol_.space.dim() : 0;
    return sol_.consistent;
  }

  AffineForm restrict(const VectorXq& a) const {
    return AffineForm(a.dot(sol_.space.particular), (a.transpose() * sol_.space.basis).transpose());
  }

  bool zero_on_space(const VectorXq& a) const {
    AffineForm f = restrict(a);
    return f.constant == 0 && f.is_constant();
  }

  Certificate infeasible(std::string why) {
    cert_.verdict = Verdict::Infeasible;
    cert_.summary = std::move(why);
    return cert_;
  }

  void add_box_equations() {
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            const int s = b ? -1 : 1;
            VectorXq row = VectorXq::Zero(n_);
            for (int l = 0; l < m_; ++l)
              if (A_.strategies[l].response(x) == a) {
                row(P(l)) += Rational(1, 2);
                row(B(l, y)) += Rational(s, 2);
              }
            add_eq(row, box_(x, y, a, b), "");
          }
    // A zero entry kills every term that contributes to it; each term is nonnegative.
    for (int x = 0; x < 2; ++x)
      for (int y = 0; y < 2; ++y)
        for (int a = 0; a < 2; ++a)
          for (int b = 0; b < 2; ++b) {
            if (box_(x, y, a, b) != 0) continue;
            const int s = b ? -1 : 1;
            for (int l = 0; l < m_; ++l)
              if (A_.strategies[l].response(x) == a)
                add_eq(edge(l, y, s), 0,
                       "p(" + std::to_string(a) + std::to_string(b) + "|" + std::to_string(x) + std::to_string(y) +
                           ") = 0 gives w_" + name(l) + "(" + std::to_string(b) + "|" + std::to_string(y) + ") = 0");
          }
  }

  // Equal Bob tables within a group: beta_{r,y} p_u = beta_{u,y} p_r. Restricted to the
  // solution space this must be affine; it is then added as its exact linearization.
  void add_couplings() {
    const VectorXq& x0 = sol_.space.particular;
    const MatrixXq& N = sol_.space.basis;
    std::vector<std::pair<VectorXq, Rational>> pending;
    for (const auto& blk : blocks_)
      for (std::size_t j = 1; j < blk.size(); ++j)
        for (int y = 0; y < 2; ++y) {
          const int r = blk[0], u = blk[j];
          const int br = B(r, y), pu = P(u), bu = B(u, y), pr = P(r);
          if (N.cols() > 0) {
            MatrixXq Q = N.row(br).transpose() * N.row(pu) - N.row(bu).transpose() * N.row(pr);
            MatrixXq S = Q + Q.transpose();
            for (int i = 0; i < S.rows(); ++i)
              for (int k = 0; k < S.cols(); ++k)
                if (S(i, k) != 0)
                  throw UnsupportedInstance("coupling of " + name(r) + " and " + name(u) +
                                            " is quadratic on the solution space");
          }
          VectorXq grad = VectorXq::Zero(n_);
          grad(br) += x0(pu);
          grad(pu) += x0(br);
          grad(bu) -= x0(pr);
          grad(pr) -= x0(bu);
          const Rational g0 = x0(br) * x0(pu) - x0(bu) * x0(pr);
          // g(x) = g(x0) + grad.(x - x0) on the space
          pending.emplace_back(grad, grad.dot(x0) - g0);
        }
    for (auto& [a, b] : pending)
      add_eq(a, b, "equal Bob tables within a group (linearized coupling)");
  }

  // Returns true if any equality was added.
  bool propagate() {
    bool changed = false;
    for (int l = 0; l < m_; ++l)
      for (int y = 0; y < 2; ++y)
        for (int s : {1, -1}) {
          const VectorXq e = edge(l, y, -s);  // p_l - s beta_{l,y}
          if (!zero_on_space(e)) continue;
          const std::string bob = "Bob at " + name(l) + " is deterministic for setting " + std::to_string(y);
          if (kind_ == ModelKind::LhvLhs) {
            const VectorXq other = var(B(l, 1 - y));
            if (!zero_on_space(other)) {
              add_eq(other, 0, bob + ", so the disc forces beta(" + name(l) + "," + std::to_string(1 - y) + ") = 0");
              tangency_ = true;
              changed = true;
            }
          }
          for (int u : blocks_[G_.group_of[l]]) {
            if (u == l) continue;
            const VectorXq f = edge(u, y, -s);
            if (!zero_on_space(f)) {
              add_eq(f, 0, bob + ", shared with " + name(u));
              changed = true;
            }
          }
          if (changed) return true;
        }
    return changed;
  }

  struct Relaxation {
    std::vector<AffineForm> forms;
    std::vector<std::string> names;
    std::vector<VectorXq> x_rows;
  };

  Relaxation relaxation_forms() const {
    Relaxation R;
    auto push = [&](const VectorXq& a, std::string nm) {
      if (zero_on_space(a)) return;
      R.forms.push_back(restrict(a));
      R.names.push_back(std::move(nm));
      R.x_rows.push_back(a);
    };
    for (int l = 0; l < m_; ++l) {
      push(var(P(l)), "p(" + name(l) + ")");
      for (int y = 0; y < 2; ++y)
        for (int s : {1, -1})
          push(edge(l, y, s), "p " + sgn(s) + " beta(" + name(l) + "," + std::to_string(y) + ")");
    }
    return R;
  }

  // forms >= 0 over theta; with_tau adds form - tau >= 0, tau <= 1 and maximizes tau.
  LinearProgram relaxation_lp(const Relaxation& R, bool with_tau) const {
    const int d = sol_.space.dim();
    LinearProgram lp(d + (with_tau ? 1 : 0), false);
    for (const auto& f : R.forms) {
      VectorXq a = VectorXq::Zero(lp.num_vars);
      a.head(d) = f.coeffs;
      if (with_tau) a(d) = -1;
      lp.add_row(a, Sense::Ge, -f.constant);
    }
    if (with_tau) {
      VectorXq a = VectorXq::Zero(lp.num_vars);
      a(d) = 1;
      lp.add_row(a, Sense::Le, 1);
      lp.objective(d) = 1;
    }
    return lp;
  }

  Step implied_equalities() {
    Relaxation R = relaxation_forms();
    LinearProgram lp = relaxation_lp(R, true);
    LpResult res = lp_solve_exact(lp);
    // tau is free, so a negative optimum means the forms have no common zero-or-positive point.
    if (res.status == LpStatus::Infeasible || (res.status == LpStatus::Optimal && res.value < 0)) {
      LinearProgram plain = relaxation_lp(R, false);
      LpResult r2 = lp_feasible_exact(plain);
      if (r2.status != LpStatus::Infeasible || !r2.farkas) throw std::logic_error("relaxation status mismatch");
      cert_.farkas = r2.farkas;
      cert_.relaxation = plain;
      infeasible("linear relaxation p >= 0, |beta| <= p is empty (Farkas certificate)");
      return Step::Infeasible;
    }
    if (res.status != LpStatus::Optimal) throw std::logic_error("tau relaxation unbounded");
    interior_ = res.x.head(sol_.space.dim());
    if (res.value > 0) return Step::Fixed;

    LinearProgram base = relaxation_lp(R, false);
    std::vector<int> tight;
    for (int i = 0; i < static_cast<int>(R.forms.size()); ++i) {
      LinearProgram q = base;
      q.objective = R.forms[i].coeffs;
      LpResult r = lp_solve_exact(q);
      if (r.status == LpStatus::Optimal && r.value + R.forms[i].constant == 0) tight.push_back(i);
    }
    if (tight.empty()) throw std::logic_error("relaxation has no interior yet no implied equality");
    for (int i : tight) add_eq(R.x_rows[i], 0, "relaxation forces " + R.names[i] + " = 0");
    return Step::Changed;
  }

  LhvLhsModel build_witness(const VectorXq& theta) const {
    const VectorXq x = sol_.space.point(theta);
    LhvLhsModel M;
    for (int l = 0; l < m_; ++l) {
      const Rational p = x(P(l));
      M.weights.push_back(p);
      M.alice_tables.push_back(deterministic_table(A_.strategies[l]));
      M.bob_tables.push_back(SingleTable::from_zero((p + x(B(l, 0))) / (2 * p), (p + x(B(l, 1))) / (2 * p)));
      if (kind_ == ModelKind::LhvLhs) M.bob_states.push_back(reconstruct_pure_state(M.bob_tables.back()));
    }
    return M;
  }

  Certificate accept(const VectorXq& theta, const std::string& how) {
    LhvLhsModel M = build_witness(theta);
    VerifyResult v = verify_model(M, box_, kind_);
    if (!v) throw std::logic_error("witness failed verification: " + v.reason);
    cert_.verdict = Verdict::Feasible;
    cert_.witness = std::move(M);
    cert_.summary = "witness found (" + how + ")";
    return cert_;
  }

  Certificate finish_lhv() { return accept(interior_, "relaxation interior point"); }

  Certificate finish_lhs() {
    std::vector<DiscConstraint> discs;
    std::vector<AffineForm> strict;
    for (int l = 0; l < m_; ++l) {
      discs.push_back({restrict(var(B(l, 0))), restrict(var(B(l, 1))), restrict(var(P(l)))});
      strict.push_back(restrict(var(P(l))));
    }
    DiscOptions opts;
    opts.candidates.push_back(interior_);
    DiscCertificate dc = disc_feasibility(sol_.space, discs, strict, {}, opts);
    DiscProblem problem{sol_.space.dim(), discs, strict, {}};
    cert_.disc_problem = problem;
    if (dc.verdict == DiscVerdict::Feasible) return accept(dc.point, dc.found_by);
    if (dc.farkas) {
      cert_.farkas = dc.farkas;
      cert_.relaxation = outer_relaxation(problem);
      return infeasible("disc relaxation is empty (Farkas certificate)");
    }
    cert_.trace = std::move(dc.trace);
    return infeasible("subdivision closes every box (" + std::to_string(cert_.trace->leaves.size()) + " leaves)");
  }

  const Box222& box_;
  AliceAssignment A_;
  Grouping G_;
  ModelKind kind_;
  int m_, n_;
  std::vector<std::vector<int>> blocks_;
  std::vector<VectorXq> rows_;
  std::vector<Rational> rhs_;
  LinearSolution<Rational> sol_;
  VectorXq interior_;
  bool tangency_ = false;
  Certificate cert_;
};

}  // namespace

Certificate dlhvlhs_feasible(const Box222& box, const AliceAssignment& assignment, const Grouping& grouping) {
  return Instance(box, assignment, grouping, ModelKind::LhvLhs).run();
}

Certificate dlhv_feasible(const Box222& box, const AliceAssignment& assignment, const Grouping& grouping) {
  return Instance(box, assignment, grouping, ModelKind::Lhv).run();
}

Box222 recompose(const LhvLhsModel& model) {
  std::array<Rational, 16> acc{};
  for (int l = 0; l < model.size(); ++l) {
    const Box222 term = product_box(model.alice_tables[l], model.bob_tables[l]);
    for (int i = 0; i < 16; ++i) acc[i] += model.weights[l] * term.data()[i];
  }
  return Box222(acc);
}

VerifyResult verify_model(const LhvLhsModel& model, const Box222& box, ModelKind kind) {
  auto fail = [](std::string r) { return VerifyResult{false, std::move(r)}; };
  const int n = model.size();
  if (n == 0) return fail("model has no terms");
  if (static_cast<int>(model.alice_tables.size()) != n || static_cast<int>(model.bob_tables.size()) != n)
    return fail("table count does not match weight count");
  Rational total = 0;
  for (int l = 0; l < n; ++l) {
    if (model.weights[l] <= 0) return fail("weight " + std::to_string(l) + " is not positive");
    total += model.weights[l];
  }
  if (total != 1) return fail("weights sum to " + to_string(total));
  for (int l = 0; l < n; ++l) {
    try {
      validate_table(model.alice_tables[l]);
      validate_table(model.bob_tables[l]);
    } catch (const Error& e) {
      return fail("term " + std::to_string(l) + ": " + e.what());
    }
  }
  if (kind == ModelKind::LhvLhs) {
    for (int l = 0; l < n; ++l)
      if (mub_disc(model.bob_tables[l]) > 0)
        return fail("Bob table " + std::to_string(l) + " lies outside the disc");
    if (!model.bob_states.empty() && static_cast<int>(model.bob_states.size()) != n)
      return fail("state count does not match weight count");
    for (int l = 0; l < n; ++l) {
      ReconstructedState st =
          model.bob_states.empty() ? reconstruct_pure_state(model.bob_tables[l]) : model.bob_states[l];
      TableD t = mub_table(st.ket());
      for (int s = 0; s < 2; ++s)
        if (std::abs(t(s, 0) - to_double(model.bob_tables[l](s, 0))) > 1e-12)
          return fail("state " + std::to_string(l) + " does not reproduce its Bob table");
    }
  }
  const Box222 r = recompose(model);
  for (int i = 0; i < 16; ++i)
    if (r.data()[i] != box.data()[i])
      return fail("recomposed entry " + std::to_string(i) + " is " + to_string(r.data()[i]) + ", expected " +
                  to_string(box.data()[i]));
  return {};
}

LhvLhsModel merge_equal_bob_tables(const LhvLhsModel& model) {
  LhvLhsModel out;
  std::vector<std::array<Rational, 4>> acc;
  for (int l = 0; l < model.size(); ++l) {
    auto it = std::find(out.bob_tables.begin(), out.bob_tables.end(), model.bob_tables[l]);
    const auto& a = model.alice_tables[l].data();
    if (it == out.bob_tables.end()) {
      out.bob_tables.push_back(model.bob_tables[l]);
      out.weights.push_back(model.weights[l]);
      if (!model.bob_states.empty()) out.bob_states.push_back(model.bob_states[l]);
      acc.push_back({model.weights[l] * a[0], model.weights[l] * a[1], model.weights[l] * a[2],
                     model.weights[l] * a[3]});
    } else {
      const auto k = it - out.bob_tables.begin();
      out.weights[k] += model.weights[l];
      for (int i = 0; i < 4; ++i) acc[k][i] += model.weights[l] * a[i];
    }
  }
  for (std::size_t k = 0; k < acc.size(); ++k) {
    std::array<Rational, 4> t;
    for (int i = 0; i < 4; ++i) t[i] = acc[k][i] / out.weights[k];
    out.alice_tables.push_back(SingleTable(t));
  }
  return out;
}

namespace {

LhvLhsModel model_from(const std::vector<std::pair<int, Rational>>& terms,
                       const std::vector<std::pair<Rational, Rational>>& bob) {
  LhvLhsModel M;
  for (std::size_t l = 0; l < terms.size(); ++l) {
    M.weights.push_back(terms[l].second);
    M.alice_tables.push_back(deterministic_table(DetStrategy::from_index(terms[l].first)));
    M.bob_tables.push_back(SingleTable::from_zero(bob[l].first, bob[l].second));
    M.bob_states.push_back(reconstruct_pure_state(M.bob_tables.back()));
  }
  return M;
}

}  // namespace

LhvLhsModel bb84_symmetric_model(const Rational& V) {
  if (V <= 0 || V > 1) throw DomainError("V must lie in (0, 1]");
  const Rational q = Rational(1, 4);
  const Rational hi = (1 + V) / 2, lo = (1 - V) / 2;
  return model_from({{0, q}, {1, q}, {2, q}, {3, q}}, {{hi, lo}, {lo, hi}, {hi, hi}, {lo, lo}});
}

LhvLhsModel example2_model() {
  return model_from({{0, Rational(1, 2)}, {2, Rational(1, 4)}, {3, Rational(1, 4)}},
                    {{Rational(3, 4), Rational(3, 4)}, {Rational(1), Rational(1, 2)}, {Rational(1, 2), Rational(1)}});
}

// ---------------------------------------------------------------------------
// Search

int search_threads(const SearchOptions& opts) {
  if (opts.threads > 0) return opts.threads;
  if (const char* env = std::getenv("BOXLAB_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::vector<AliceAssignment> strategy_subsets(int m) {
  if (m < 1 || m > 4) throw DimensionError("subset size must be 1..4");
  std::vector<AliceAssignment> out;
  for (int mask = 0; mask < 16; ++mask) {
    if (__builtin_popcount(mask) != m) continue;
    AliceAssignment A;
    for (int i = 0; i < 4; ++i)
      if (mask >> i & 1) A.strategies.push_back(DetStrategy::from_index(i));
    out.push_back(A);
  }
  std::sort(out.begin(), out.end(), [](const AliceAssignment& a, const AliceAssignment& b) {
    return std::lexicographical_compare(a.strategies.begin(), a.strategies.end(), b.strategies.begin(),
                                        b.strategies.end());
  });
  return out;
}

std::vector<Grouping> groupings_with_blocks(int m, int k) {
  std::vector<Grouping> out;
  if (k < 1 || k > m) return out;
  std::vector<int> a(m, 0);
  auto rec = [&](auto&& self, int i, int mx) -> void {
    if (i == m) {
      if (mx + 1 == k) out.push_back(Grouping{a});
      return;
    }
    if (mx + 1 + (m - i) < k) return;
    for (int v = 0; v <= std::min(mx + 1, k - 1); ++v) {
      a[i] = v;
      self(self, i + 1, std::max(mx, v));
    }
  };
  a[0] = 0;
  if (m == 1) {
    if (k == 1) out.push_back(Grouping{a});
    return out;
  }
  rec(rec, 1, 0);
  return out;
}

bool alice_marginal_compatible(const Box222& box, const AliceAssignment& A) {
  const SingleTable ta = alice_marginal_at(box, 0);
  const int m = A.size();
  // p_l - tau >= 0, sum p = 1, sum_{l: response(x) = 0} p_l = t(x,0); maximize tau.
  LinearProgram lp(m + 1, false);
  for (int l = 0; l < m; ++l) {
    VectorXq a = VectorXq::Zero(m + 1);
    a(l) = 1;
    a(m) = -1;
    lp.add_row(a, Sense::Ge, 0);
  }
  VectorXq sum = VectorXq::Zero(m + 1);
  sum.head(m).setOnes();
  lp.add_row(sum, Sense::Eq, 1);
  for (int x = 0; x < 2; ++x) {
    VectorXq a = VectorXq::Zero(m + 1);
    for (int l = 0; l < m; ++l)
      if (A.strategies[l].response(x) == 0) a(l) = 1;
    lp.add_row(a, Sense::Eq, ta(x, 0));
  }
  VectorXq cap = VectorXq::Zero(m + 1);
  cap(m) = 1;
  lp.add_row(cap, Sense::Le, 1);
  lp.objective(m) = 1;
  LpResult r = lp_solve_exact(lp);
  return r.status == LpStatus::Optimal && r.value > 0;
}

namespace {

struct Job {
  AliceAssignment assignment;
  Grouping grouping;
  bool pruned = false;
};

std::vector<Job> jobs_for(const Box222& box, int k, bool prune) {
  std::vector<Job> jobs;
  for (int m = k; m <= 4; ++m) {
    const auto groupings = groupings_with_blocks(m, k);
    for (const auto& A : strategy_subsets(m)) {
      const bool pruned = prune && !alice_marginal_compatible(box, A);
      for (const auto& G : groupings) jobs.push_back({A, G, pruned});
    }
  }
  return jobs;
}

InstanceRecord solve_job(const Box222& box, const Job& job, int k, ModelKind kind, bool keep) {
  InstanceRecord rec{job.assignment, job.grouping, k, InstanceStatus::Infeasible, "", std::nullopt};
  if (job.pruned) {
    rec.status = InstanceStatus::Pruned;
    rec.note = "Alice marginal unreachable with positive weights";
    return rec;
  }
  try {
    Certificate c = kind == ModelKind::LhvLhs ? dlhvlhs_feasible(box, job.assignment, job.grouping)
                                              : dlhv_feasible(box, job.assignment, job.grouping);
    rec.status = c.verdict == Verdict::Feasible ? InstanceStatus::Feasible : InstanceStatus::Infeasible;
    rec.note = c.summary;
    if (keep || rec.status == InstanceStatus::Feasible) rec.certificate = std::move(c);
  } catch (const DegenerateError& e) {
    rec.status = InstanceStatus::Degenerate;
    rec.note = e.what();
  } catch (const SubdivisionLimit& e) {
    rec.status = InstanceStatus::Inconclusive;
    rec.note = e.what();
  } catch (const UnsupportedInstance& e) {
    rec.status = InstanceStatus::Unsupported;
    rec.note = e.what();
  }
  return rec;
}

// Solves jobs in parallel. With stop_at_first the result ends at the first
// feasible job in enumeration order, independent of the thread count.
std::vector<InstanceRecord> run_jobs(const Box222& box, const std::vector<Job>& jobs, int k, ModelKind kind,
                                     const SearchOptions& opts, bool stop_at_first) {
  const std::size_t n = jobs.size();
  std::vector<std::optional<InstanceRecord>> out(n);
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> best{std::numeric_limits<std::size_t>::max()};
  std::exception_ptr err;
  std::mutex err_mu;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= n) return;
      if (stop_at_first && i > best.load()) return;
      try {
        out[i] = solve_job(box, jobs[i], k, kind, opts.keep_certificates);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mu);
        if (!err) err = std::current_exception();
        best = 0;
        return;
      }
      if (stop_at_first && out[i]->status == InstanceStatus::Feasible) {
        std::size_t cur = best.load();
        while (i < cur && !best.compare_exchange_weak(cur, i)) {
        }
      }
    }
  };
  const int t = std::min<int>(search_threads(opts), static_cast<int>(std::max<std::size_t>(n, 1)));
  if (t <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < t; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (err) std::rethrow_exception(err);

  std::vector<InstanceRecord> recs;
  const std::size_t first = best.load();
  const std::size_t end = stop_at_first && first < n ? first + 1 : n;
  for (std::size_t i = 0; i < end; ++i) recs.push_back(std::move(*out[i]));
  return recs;
}

bool inconclusive(const InstanceRecord& r) {
  return r.status == InstanceStatus::Inconclusive || r.status == InstanceStatus::Unsupported;
}

DimensionReport min_dim(const Box222& box, ModelKind kind, const SearchOptions& opts) {
  validate_box(box);
  if (!is_no_signalling(box)) throw SignallingError("box is signalling");
  DimensionReport rep;
  rep.kind = kind;
  if (kind == ModelKind::LhvLhs && !is_unsteerable_mub(box)) {
    rep.verdict = "steerable";
    return rep;
  }
  if (kind == ModelKind::Lhv && !is_bell_local_lp(box).local) {
    rep.verdict = "nonlocal";
    return rep;
  }
  bool unsettled = false;
  for (int k = 1; k <= std::min(opts.max_dim, 4); ++k) {
    auto recs = run_jobs(box, jobs_for(box, k, opts.prune_marginals), k, kind, opts, true);
    rep.explored += static_cast<long>(recs.size());
    const bool found = !recs.empty() && recs.back().status == InstanceStatus::Feasible;
    if (found) {
      rep.verdict = "min-dim";
      rep.min_dim = k;
      rep.exact = !unsettled;
      rep.witness = recs.back().certificate->witness;
      rep.witness_assignment = recs.back().assignment;
      rep.witness_grouping = recs.back().grouping;
    }
    for (auto& r : recs) {
      unsettled = unsettled || inconclusive(r);
      rep.instances.push_back(std::move(r));
    }
    if (found) return rep;
  }
  if (unsettled || opts.max_dim < 4) {
    rep.verdict = "inconclusive";
    rep.exact = false;
    return rep;
  }
  throw ExhaustionError(std::string(kind == ModelKind::LhvLhs ? "unsteerable" : "local") +
                        " box has no model with at most 4 hidden values");
}

}  // namespace

std::vector<InstanceRecord> enumerate_dimension(const Box222& box, int k, ModelKind kind, const SearchOptions& opts) {
  if (k < 1 || k > 4) throw DimensionError("dimension must be 1..4");
  validate_box(box);
  return run_jobs(box, jobs_for(box, k, opts.prune_marginals), k, kind, opts, false);
}

DimensionReport min_dim_lhvlhs(const Box222& box, const SearchOptions& opts) {
  return min_dim(box, ModelKind::LhvLhs, opts);
}

DimensionReport min_dim_lhv(const Box222& box, const SearchOptions& opts) {
  return min_dim(box, ModelKind::Lhv, opts);
}

SuperResult is_super_unsteerable(const Box222& box, int dimA, const SearchOptions& opts) {
  if (dimA < 2) throw DimensionError("dimA must be at least 2");
  SuperResult r;
  r.report = min_dim_lhvlhs(box, opts);
  r.value = r.report.min_dim && *r.report.min_dim > dimA;
  return r;
}

SuperResult is_superlocal(const Box222& box, int dimA, int dimB, const SearchOptions& opts) {
  if (dimA < 2 || dimB < 2) throw DimensionError("dimensions must be at least 2");
  SuperResult r;
  r.report = min_dim_lhv(box, opts);
  r.value = r.report.min_dim && *r.report.min_dim > std::min(dimA, dimB);
  return r;
}

}  // namespace boxlab
