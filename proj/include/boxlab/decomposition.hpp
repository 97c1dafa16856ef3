#pragma once

#include "boxlab/boxes.hpp"
#include "boxlab/realizability.hpp"
#include "boxlab/solver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace boxlab {

// Alice's deterministic strategy for each hidden value lambda.
struct AliceAssignment {
  std::vector<DetStrategy> strategies;
  int size() const { return static_cast<int>(strategies.size()); }
};

// group_of[lambda]: lambdas in one group share a Bob table.
struct Grouping {
  std::vector<int> group_of;

  static Grouping singletons(int m);
  static Grouping from_blocks(int m, const std::vector<std::vector<int>>& blocks);
  int size() const { return static_cast<int>(group_of.size()); }
  int groups() const;
  std::vector<std::vector<int>> blocks() const;
};

// Bob tables use settings (0,1) as the canonical MUB pair (sigma_z, sigma_x).
struct LhvLhsModel {
  std::vector<Rational> weights;
  std::vector<SingleTable> alice_tables;
  std::vector<SingleTable> bob_tables;
  std::vector<ReconstructedState> bob_states;  // empty for plain LHV models

  int size() const { return static_cast<int>(weights.size()); }
  // Number of distinct Bob tables: the hidden-variable dimension after merging.
  int dimension() const;
};

enum class ModelKind { LhvLhs, Lhv };

enum class Verdict { Feasible, Infeasible };

struct Certificate {
  Verdict verdict = Verdict::Infeasible;
  std::optional<LhvLhsModel> witness;
  std::string summary;
  std::vector<std::string> derivation;  // equalities added beyond the box equations
  int variables = 0;
  int equations = 0;
  int rank = 0;
  int augmented_rank = 0;
  int free_parameters = 0;
  int forced_zero = -1;                      // lambda pinched to weight 0
  std::optional<FarkasCertificate> farkas;   // linear relaxation infeasible
  std::optional<LinearProgram> relaxation;   // the system the Farkas vector refers to
  std::optional<BnbTrace> trace;             // exhaustive subdivision
  std::optional<DiscProblem> disc_problem;   // what the trace refers to
};

// Exact decision for one (assignment, grouping) instance. Throws
// DegenerateError when the linear structure alone forces a zero weight,
// SubdivisionLimit when the disc stage cannot conclude, UnsupportedInstance
// when group couplings are not linear on the solution space.
Certificate dlhvlhs_feasible(const Box222& box, const AliceAssignment& assignment, const Grouping& grouping);
Certificate dlhv_feasible(const Box222& box, const AliceAssignment& assignment, const Grouping& grouping);

enum class InstanceStatus { Feasible, Infeasible, Degenerate, Pruned, Inconclusive, Unsupported };
std::string to_string(InstanceStatus s);

struct InstanceRecord {
  AliceAssignment assignment;
  Grouping grouping;
  int dimension = 0;
  InstanceStatus status = InstanceStatus::Infeasible;
  std::string note;
  std::optional<Certificate> certificate;
};

struct DimensionReport {
  ModelKind kind = ModelKind::LhvLhs;
  std::string verdict;  // "min-dim", "steerable", "nonlocal", "inconclusive"
  std::optional<int> min_dim;
  bool exact = true;    // no inconclusive instance below min_dim
  std::optional<LhvLhsModel> witness;
  AliceAssignment witness_assignment;
  Grouping witness_grouping;
  long explored = 0;
  std::vector<InstanceRecord> instances;
};

struct SearchOptions {
  int max_dim = 4;
  int threads = 0;            // 0: BOXLAB_THREADS or hardware concurrency
  bool prune_marginals = true;
  bool keep_certificates = false;
};

int search_threads(const SearchOptions& opts);

std::vector<AliceAssignment> strategy_subsets(int m);
// Partitions of {0..m-1} into exactly k blocks, in restricted-growth order.
std::vector<Grouping> groupings_with_blocks(int m, int k);
// True if positive weights on the strategies can reproduce Alice's marginal.
bool alice_marginal_compatible(const Box222& box, const AliceAssignment& assignment);

// Every instance with k groups, no early stop.
std::vector<InstanceRecord> enumerate_dimension(const Box222& box, int k, ModelKind kind,
                                                const SearchOptions& opts = {});

DimensionReport min_dim_lhvlhs(const Box222& box, const SearchOptions& opts = {});
DimensionReport min_dim_lhv(const Box222& box, const SearchOptions& opts = {});

struct SuperResult {
  bool value = false;
  DimensionReport report;
  explicit operator bool() const { return value; }
};

SuperResult is_super_unsteerable(const Box222& box, int dimA, const SearchOptions& opts = {});
SuperResult is_superlocal(const Box222& box, int dimA, int dimB, const SearchOptions& opts = {});

struct VerifyResult {
  bool ok = true;
  std::string reason;
  explicit operator bool() const { return ok; }
};

Box222 recompose(const LhvLhsModel& model);
VerifyResult verify_model(const LhvLhsModel& model, const Box222& box, ModelKind kind = ModelKind::LhvLhs);
LhvLhsModel merge_equal_bob_tables(const LhvLhsModel& model);

std::string strategy_label(DetStrategy s);

// Four equal weights on strategies 00, 01, 10, 11 with Bob Bloch vectors
// (+-V, -+V), (V, V), (-V, -V). Throws NotRealizable when 2V^2 > 1.
LhvLhsModel bb84_symmetric_model(const Rational& V);
// Three-valued model of example2_box().
LhvLhsModel example2_model();

}  // namespace boxlab
