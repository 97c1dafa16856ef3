#include "boxlab/solver/disc.hpp"
#include "boxlab/errors.hpp"
#include "boxlab/solver/interval.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

namespace boxlab {

double AffineForm::eval(const Eigen::VectorXd& theta) const {
  double v = to_double(constant);
  for (int i = 0; i < coeffs.size(); ++i)
    if (coeffs(i) != 0) v += to_double(coeffs(i)) * theta(i);
  return v;
}

bool AffineForm::is_constant() const {
  for (int i = 0; i < coeffs.size(); ++i)
    if (coeffs(i) != 0) return false;
  return true;
}

std::string describe(const ConstraintRef& c) {
  switch (c.kind) {
    case ConstraintKind::Disc: return "disc[" + std::to_string(c.index) + "]";
    case ConstraintKind::Strict: return "strict[" + std::to_string(c.index) + "]";
    case ConstraintKind::Nonneg: return "nonneg[" + std::to_string(c.index) + "]";
  }
  return "?";
}

bool certify_point(const VectorXq& theta, const DiscProblem& P) {
  if (theta.size() != P.dim) return false;
  for (const auto& d : P.discs) {
    Rational u = d.u(theta), v = d.v(theta), w = d.w(theta);
    if (w < 0 || u * u + v * v > w * w) return false;
  }
  for (const auto& s : P.strict_positive)
    if (s(theta) <= 0) return false;
  for (const auto& f : P.nonnegative)
    if (f(theta) < 0) return false;
  return true;
}

LinearProgram outer_relaxation(const DiscProblem& P) {
  LinearProgram lp(P.dim);
  auto add = [&](const AffineForm& f, int sign_f, const AffineForm& g) {
    // sign_f * f <= g   <=>   (sign_f f_c - g_c) . theta <= g_0 - sign_f f_0
    VectorXq a = Rational(sign_f) * f.coeffs - g.coeffs;
    lp.add_row(a, Sense::Le, g.constant - Rational(sign_f) * f.constant);
  };
  for (const auto& d : P.discs) {
    add(d.u, 1, d.w);
    add(d.u, -1, d.w);
    add(d.v, 1, d.w);
    add(d.v, -1, d.w);
    lp.add_row(d.w.coeffs, Sense::Ge, -d.w.constant);
  }
  for (const auto& f : P.nonnegative) lp.add_row(f.coeffs, Sense::Ge, -f.constant);
  return lp;
}

namespace {

// Rational points on the unit circle; the polygon through them lies inside
// the disc, so any point of the polygon relaxation is disc-feasible.
std::vector<std::pair<Rational, Rational>> inscribed_vertices() {
  std::vector<std::pair<Rational, Rational>> q1 = {
      {1, 0}, {Rational(12, 13), Rational(5, 13)}, {Rational(4, 5), Rational(3, 5)},
      {Rational(3, 5), Rational(4, 5)}, {Rational(5, 13), Rational(12, 13)}};
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& [c, s] : q1) out.push_back({c, s});
  for (const auto& [c, s] : q1) out.push_back({-s, c});
  for (const auto& [c, s] : q1) out.push_back({-c, -s});
  for (const auto& [c, s] : q1) out.push_back({s, -c});
  return out;
}

template <class S>
Interval<S> eval_interval(const AffineForm& f, const std::vector<Interval<S>>& X) {
  Interval<S> r = Interval<S>::enclose(f.constant);
  for (int i = 0; i < f.coeffs.size(); ++i)
    if (f.coeffs(i) != 0) r = r + Interval<S>::enclose(f.coeffs(i)) * X[i];
  return r;
}

// A constraint violated at every point of the closed box, if any.
template <class S>
std::optional<ConstraintRef> closed_by(const DiscProblem& P, const ParamBox& box) {
  std::vector<Interval<S>> X;
  X.reserve(box.size());
  for (const auto& [lo, hi] : box) X.push_back(Interval<S>::enclose(lo, hi));
  using R = Rounding<S>;
  for (int i = 0; i < static_cast<int>(P.discs.size()); ++i) {
    const auto& d = P.discs[i];
    Interval<S> W = eval_interval(d.w, X);
    if (W.hi < S(0)) return ConstraintRef{ConstraintKind::Disc, i};
    Interval<S> U = eval_interval(d.u, X), V = eval_interval(d.v, X);
    S lower = R::down(U.sq_lower() + V.sq_lower());
    S upper = R::up(W.hi * W.hi);
    if (lower > upper) return ConstraintRef{ConstraintKind::Disc, i};
  }
  for (int i = 0; i < static_cast<int>(P.strict_positive.size()); ++i)
    if (eval_interval(P.strict_positive[i], X).hi <= S(0)) return ConstraintRef{ConstraintKind::Strict, i};
  for (int i = 0; i < static_cast<int>(P.nonnegative.size()); ++i)
    if (eval_interval(P.nonnegative[i], X).hi < S(0)) return ConstraintRef{ConstraintKind::Nonneg, i};
  return std::nullopt;
}

double slack(const DiscProblem& P, const Eigen::VectorXd& t) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& d : P.discs) {
    double u = d.u.eval(t), v = d.v.eval(t), w = d.w.eval(t);
    m = std::min(m, w - std::hypot(u, v));
  }
  for (const auto& s : P.strict_positive) m = std::min(m, s.eval(t));
  for (const auto& f : P.nonnegative) m = std::min(m, f.eval(t));
  return m;
}

Eigen::VectorXd to_double(const VectorXq& v) {
  Eigen::VectorXd d(v.size());
  for (int i = 0; i < v.size(); ++i) d(i) = boxlab::to_double(v(i));
  return d;
}

VectorXq center(const ParamBox& box) {
  VectorXq c(static_cast<int>(box.size()));
  for (std::size_t i = 0; i < box.size(); ++i) c(static_cast<int>(i)) = (box[i].first + box[i].second) / 2;
  return c;
}

bool try_point(const DiscProblem& P, const VectorXq& theta) {
  if (theta.size() != P.dim) return false;
  if (slack(P, to_double(theta)) < -1e-9) return false;
  return certify_point(theta, P);
}

ParamBox derive_bounds(const DiscProblem& P, DiscCertificate& cert, bool& empty) {
  LinearProgram lp = outer_relaxation(P);
  ParamBox box(P.dim);
  empty = false;
  for (int i = 0; i < P.dim; ++i) {
    for (int dir : {1, -1}) {
      lp.objective = VectorXq::Zero(P.dim);
      lp.objective(i) = dir;
      LpResult r = lp_solve_exact(lp);
      if (r.status == LpStatus::Infeasible) {
        cert.farkas = r.farkas;
        empty = true;
        return box;
      }
      if (r.status == LpStatus::Unbounded) throw DomainError("parameter " + std::to_string(i) + " is unbounded");
      (dir > 0 ? box[i].second : box[i].first) = r.x(i);
    }
  }
  if (P.dim == 0) {
    LpResult r = lp_feasible_exact(lp);
    if (r.status == LpStatus::Infeasible) {
      cert.farkas = r.farkas;
      empty = true;
    }
  }
  return box;
}

// Maximize tau inside the inscribed polygons with strict forms >= tau.
std::optional<VectorXq> polygon_candidate(const DiscProblem& P, const ParamBox& box) {
  const int n = P.dim;
  LinearProgram lp(n + 1);
  auto row = [&](const VectorXq& c, const Rational& tau_coef) {
    VectorXq a(n + 1);
    a.head(n) = c;
    a(n) = tau_coef;
    return a;
  };
  const auto vs = inscribed_vertices();
  for (const auto& d : P.discs) {
    for (std::size_t k = 0; k < vs.size(); ++k) {
      const auto& [x1, y1] = vs[k];
      const auto& [x2, y2] = vs[(k + 1) % vs.size()];
      // Edge normal (y2 - y1, x1 - x2) points outward for counterclockwise order.
      Rational nx = y2 - y1, ny = x1 - x2, h = nx * x1 + ny * y1;
      // nx u + ny v + tau <= h w
      VectorXq c = nx * d.u.coeffs + ny * d.v.coeffs - h * d.w.coeffs;
      lp.add_row(row(c, 1), Sense::Le, h * d.w.constant - nx * d.u.constant - ny * d.v.constant);
    }
  }
  for (const auto& s : P.strict_positive) lp.add_row(row(s.coeffs, -1), Sense::Ge, -s.constant);
  for (const auto& f : P.nonnegative) lp.add_row(row(f.coeffs, 0), Sense::Ge, -f.constant);
  for (int i = 0; i < n; ++i) {
    VectorXq e = VectorXq::Zero(n);
    e(i) = 1;
    lp.add_row(row(e, 0), Sense::Ge, box[i].first);
    lp.add_row(row(e, 0), Sense::Le, box[i].second);
  }
  VectorXq et = VectorXq::Zero(n + 1);
  et(n) = 1;
  lp.add_row(et, Sense::Le, 1);
  lp.objective = et;
  LpResult r = lp_solve_exact(lp);
  if (r.status != LpStatus::Optimal || r.value <= 0) return std::nullopt;
  return VectorXq(r.x.head(n));
}

// One-dimensional problems: every rational critical point and the
// midpoints between consecutive ones.
std::vector<VectorXq> critical_candidates(const DiscProblem& P, const ParamBox& box) {
  std::vector<Rational> pts = {box[0].first, box[0].second};
  auto linear_root = [&](const Rational& c1, const Rational& c0) {
    if (c1 != 0) pts.push_back(-c0 / c1);
  };
  for (const auto& d : P.discs) {
    const Rational u0 = d.u.constant, u1 = d.u.coeffs(0), v0 = d.v.constant, v1 = d.v.coeffs(0),
                   w0 = d.w.constant, w1 = d.w.coeffs(0);
    Rational a = w1 * w1 - u1 * u1 - v1 * v1;
    Rational b = 2 * (w0 * w1 - u0 * u1 - v0 * v1);
    Rational c = w0 * w0 - u0 * u0 - v0 * v0;
    if (a == 0) {
      linear_root(b, c);
    } else {
      Rational root;
      if (rational_sqrt(b * b - 4 * a * c, root)) {
        pts.push_back((-b + root) / (2 * a));
        pts.push_back((-b - root) / (2 * a));
      }
    }
    linear_root(w1, w0);
  }
  for (const auto& s : P.strict_positive) linear_root(s.coeffs(0), s.constant);
  for (const auto& f : P.nonnegative) linear_root(f.coeffs(0), f.constant);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<VectorXq> out;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (pts[i] < box[0].first || pts[i] > box[0].second) continue;
    out.push_back(VectorXq::Constant(1, pts[i]));
    if (i + 1 < pts.size() && pts[i + 1] <= box[0].second) out.push_back(VectorXq::Constant(1, (pts[i] + pts[i + 1]) / 2));
  }
  return out;
}

struct Node {
  ParamBox box;
  int depth = 0;
  double score = 0;
  long order = 0;
};

struct NodeLess {
  bool operator()(const Node& a, const Node& b) const {
    if (a.score != b.score) return a.score < b.score;
    return a.order > b.order;
  }
};

}  // namespace

DiscCertificate disc_feasibility(const AffineSolutionSpace<Rational>& space,
                                 const std::vector<DiscConstraint>& discs,
                                 const std::vector<AffineForm>& strict_positive,
                                 const std::vector<AffineForm>& nonnegative, const DiscOptions& options) {
  DiscProblem P{space.dim(), discs, strict_positive, nonnegative};
  for (const auto& d : P.discs)
    if (d.u.coeffs.size() != P.dim || d.v.coeffs.size() != P.dim || d.w.coeffs.size() != P.dim)
      throw DimensionError("disc form size does not match the parameter space");

  DiscCertificate cert;
  auto found = [&](const VectorXq& theta, const char* how) {
    cert.verdict = DiscVerdict::Feasible;
    cert.point = theta;
    cert.found_by = how;
    return cert;
  };

  if (try_point(P, VectorXq::Zero(P.dim))) return found(VectorXq::Zero(P.dim), "min-norm");
  for (const auto& c : options.candidates)
    if (try_point(P, c)) return found(c, "candidate");

  ParamBox root;
  if (!space.bounds.empty()) {
    root = space.bounds;
  } else {
    bool empty = false;
    root = derive_bounds(P, cert, empty);
    if (empty) {
      cert.verdict = DiscVerdict::Infeasible;
      return cert;
    }
  }
  cert.trace.root = root;

  if (P.dim > 0) {
    if (auto c = polygon_candidate(P, root); c && try_point(P, *c)) return found(*c, "polygon");
    if (P.dim == 1)
      for (const auto& c : critical_candidates(P, root))
        if (try_point(P, c)) return found(c, "critical-point");
  }

  // Best-first subdivision: open nodes ordered by slack at their centre.
  std::vector<Rational> width(P.dim);
  for (int i = 0; i < P.dim; ++i) width[i] = root[i].second - root[i].first;
  std::priority_queue<Node, std::vector<Node>, NodeLess> open;
  long order = 0;
  open.push({root, 0, 0.0, order++});
  while (!open.empty()) {
    Node node = open.top();
    open.pop();
    ++cert.trace.nodes;
    cert.trace.max_depth = std::max(cert.trace.max_depth, node.depth);

    auto closed = closed_by<double>(P, node.box);
    if (!closed && (node.depth >= 30 || P.dim == 0)) closed = closed_by<Rational>(P, node.box);
    if (closed) {
      cert.trace.leaves.push_back({node.box, *closed, node.depth});
      continue;
    }
    VectorXq mid = center(node.box);
    if (try_point(P, mid)) return found(mid, "subdivision");

    if (node.depth >= options.max_depth)
      throw SubdivisionLimit("depth " + std::to_string(node.depth) + " reached without closing a leaf");
    if (cert.trace.nodes >= options.max_nodes)
      throw SubdivisionLimit("node budget of " + std::to_string(options.max_nodes) + " exhausted");

    int split = -1;
    Rational best = -1;
    for (int i = 0; i < P.dim; ++i) {
      if (width[i] == 0) continue;
      Rational rel = (node.box[i].second - node.box[i].first) / width[i];
      if (rel > best) {
        best = rel;
        split = i;
      }
    }
    if (split < 0) throw SubdivisionLimit("degenerate parameter box cannot be split");
    const Rational m = (node.box[split].first + node.box[split].second) / 2;
    for (int half = 0; half < 2; ++half) {
      Node child{node.box, node.depth + 1, 0.0, order++};
      (half == 0 ? child.box[split].second : child.box[split].first) = m;
      child.score = slack(P, to_double(center(child.box)));
      open.push(std::move(child));
    }
  }
  cert.verdict = DiscVerdict::Infeasible;
  return cert;
}

bool verify_trace(const DiscProblem& P, const BnbTrace& trace) {
  if (trace.leaves.empty()) return false;
  auto volume = [](const ParamBox& b) {
    Rational v = 1;
    for (const auto& [lo, hi] : b)
      if (hi > lo) v *= hi - lo;
    return v;
  };
  Rational covered = 0;
  for (const auto& leaf : trace.leaves) {
    if (leaf.box.size() != trace.root.size()) return false;
    for (std::size_t i = 0; i < leaf.box.size(); ++i)
      if (leaf.box[i].first < trace.root[i].first || leaf.box[i].second > trace.root[i].second ||
          leaf.box[i].first > leaf.box[i].second)
        return false;
    // Exact intervals are never wider than the rounded ones used in the search.
    if (!closed_by<Rational>(P, leaf.box)) return false;
    covered += volume(leaf.box);
  }
  if (covered != volume(trace.root)) return false;

  // Equal volume proves coverage only if leaf interiors are disjoint.
  int sd = -1;
  for (std::size_t k = 0; k < trace.root.size() && sd < 0; ++k)
    if (trace.root[k].first < trace.root[k].second) sd = static_cast<int>(k);
  if (sd < 0) return trace.leaves.size() == 1;
  std::vector<const BnbLeaf*> order;
  for (const auto& l : trace.leaves) order.push_back(&l);
  std::sort(order.begin(), order.end(),
            [sd](const BnbLeaf* a, const BnbLeaf* b) { return a->box[sd].first < b->box[sd].first; });
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = i + 1; j < order.size(); ++j) {
      if (order[j]->box[sd].first >= order[i]->box[sd].second) break;
      bool overlap = true;
      for (std::size_t k = 0; k < trace.root.size() && overlap; ++k) {
        const auto& a = order[i]->box[k];
        const auto& b = order[j]->box[k];
        if (trace.root[k].first == trace.root[k].second) continue;
        overlap = std::max(a.first, b.first) < std::min(a.second, b.second);
      }
      if (overlap) return false;
    }
  return true;
}

}  // namespace boxlab
