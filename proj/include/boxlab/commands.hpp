#pragma once

#include "boxlab/io.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace boxlab {

struct CommandResult {
  Json output;
  int exit_code = 0;  // 0 ok, 1 failed verification, 2 error
};

// A box or state resolved from the command line: a JSON file holding
// "entries" (box) or "rho" (state), or a named constructor
// "werner:V=q", "erasure:V=q", "bb84:V=q", "example2".
struct ResolvedInput {
  Box222 box;
  Json descriptor;
  std::optional<int> dimA, dimB;
};

ResolvedInput resolve_input(const std::string& input);

struct AnalyzeOptions {
  std::string input;
  std::optional<int> dimA, dimB;
  SearchOptions search;
};

CommandResult run_analyze(const AnalyzeOptions& opts, std::ostream& diag);

struct ReproduceOptions {
  std::string target;
  std::optional<std::string> v;
  SearchOptions search;
};

const std::vector<std::string>& reproduce_targets();
CommandResult run_reproduce(const ReproduceOptions& opts, std::ostream& diag);

CommandResult run_mindim(const std::string& input, const std::string& model, const SearchOptions& search,
                         std::ostream& diag);

// Error object for stdout; the message also goes to diag.
CommandResult error_result(const std::exception& e, std::ostream& diag);

// "steerable", "super-unsteerable:min-dim-N", "not-super-unsteerable" or "inconclusive".
std::string classification_tag(const DimensionReport& lhvlhs, int dimA);

}  // namespace boxlab
