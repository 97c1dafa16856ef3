#pragma once

#include "boxlab/solver/linear.hpp"
#include "boxlab/solver/lp.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace boxlab {

// c0 + c . theta
struct AffineForm {
  Rational constant = 0;
  VectorXq coeffs;

  AffineForm() = default;
  AffineForm(Rational c0, VectorXq c) : constant(std::move(c0)), coeffs(std::move(c)) {}

  Rational operator()(const VectorXq& theta) const { return constant + coeffs.dot(theta); }
  double eval(const Eigen::VectorXd& theta) const;
  bool is_constant() const;
};

// u^2 + v^2 <= w^2 with w >= 0.
struct DiscConstraint {
  AffineForm u, v, w;
};

using ParamBox = std::vector<std::pair<Rational, Rational>>;

enum class ConstraintKind { Disc, Strict, Nonneg };

struct ConstraintRef {
  ConstraintKind kind = ConstraintKind::Disc;
  int index = 0;
};

struct BnbLeaf {
  ParamBox box;
  ConstraintRef violated;
  int depth = 0;
};

struct BnbTrace {
  ParamBox root;
  std::vector<BnbLeaf> leaves;
  long nodes = 0;
  int max_depth = 0;
};

enum class DiscVerdict { Feasible, Infeasible };

struct DiscCertificate {
  DiscVerdict verdict = DiscVerdict::Infeasible;
  VectorXq point;                           // theta, when feasible
  std::string found_by;                     // which stage produced the point
  std::optional<FarkasCertificate> farkas;  // when the linear relaxation is already empty
  BnbTrace trace;                           // when closed by subdivision
};

struct DiscOptions {
  int max_depth = 60;
  long max_nodes = 400000;
  std::vector<VectorXq> candidates;  // tried after theta = 0
};

struct DiscProblem {
  int dim = 0;
  std::vector<DiscConstraint> discs;
  std::vector<AffineForm> strict_positive;
  std::vector<AffineForm> nonnegative;
};

// Decides whether some theta in the space satisfies every disc, every strict
// form (> 0) and every nonnegative form (>= 0). A feasible verdict carries an
// exactly certified rational point; an infeasible verdict carries either a
// Farkas certificate for the linear relaxation or an exhaustive subdivision
// trace. Throws SubdivisionLimit when neither can be produced.
DiscCertificate disc_feasibility(const AffineSolutionSpace<Rational>& space,
                                 const std::vector<DiscConstraint>& discs,
                                 const std::vector<AffineForm>& strict_positive,
                                 const std::vector<AffineForm>& nonnegative = {},
                                 const DiscOptions& options = {});

// Exact evaluation of every constraint at theta; no tolerance.
bool certify_point(const VectorXq& theta, const DiscProblem& problem);

// Re-checks every closed leaf and that the leaves tile the root box.
bool verify_trace(const DiscProblem& problem, const BnbTrace& trace);

// Linear relaxation: |u| <= w, |v| <= w, w >= 0, nonnegative forms >= 0.
LinearProgram outer_relaxation(const DiscProblem& problem);

std::string describe(const ConstraintRef& c);

}  // namespace boxlab
