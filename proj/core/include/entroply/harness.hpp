#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entroply/chess.hpp"
#include "entroply/search.hpp"

namespace entroply::harness {

/// One test case: a position plus its success criterion, either a set of
/// best moves (`bm`) or a forced-mate length in moves (`dm`).
struct EpdRecord {
  chess::Position position;
  std::vector<chess::Move> best_moves;
  std::optional<int> direct_mate;
  std::string id;
};

class EpdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses EPD lines (`<board> <stm> <castling> <ep> <opcodes>`). Supported
/// opcodes: bm, dm, id; unknown opcodes are skipped with a warning. Errors
/// carry the line number.
std::vector<EpdRecord> load_epd(std::istream& in, std::vector<std::string>* warnings = nullptr);
std::vector<EpdRecord> load_epd_file(const std::string& path,
                                     std::vector<std::string>* warnings = nullptr);

/// One experiment: the seven result columns, in order.
struct ExperimentRow {
  int experiment_number = 0;
  std::uint64_t nodes_searched = 0;
  double divisor = 1.0;
  int max_depth_attained = 0;
  int max_uniform_depth = 0;
  bool solved = false;
  double step_size = 6.0;

  bool operator==(const ExperimentRow&) const = default;
};

/// Runs one case under `params` with the node budget applied. Solved means
/// the search proved a mate within `dm` moves or returned a `bm` move;
/// budget-aborted searches are never solved. Records with neither
/// criterion are rejected.
ExperimentRow run_case(const EpdRecord& record, const search::SearchParams& params,
                       std::uint64_t node_budget, int experiment_number = 1);

struct SweepSpec {
  std::vector<EpdRecord> suite;
  std::vector<double> divisors;
  std::vector<int> uniform_depths;
  policy::DepthPolicy family;  // divisor replaced per row
  double step_size = 6.0;
  std::uint64_t node_budget = 0;
  int max_extension = 0;  // 0 derives 2 * depth + 4 per row
};

/// One row per record x divisor x depth, numbered from 1 in that nesting
/// order. Rows are independent searches; `jobs` > 1 runs them concurrently
/// with numbering assigned up front, so output order is deterministic.
std::vector<ExperimentRow> run_sweep(const SweepSpec& spec, int jobs = 1);

struct PolicySummary {
  std::string policy;
  int cases = 0;
  int solved = 0;
  double solve_rate = 0.0;
  double median_nodes_solved = 0.0;  // 0 when nothing solved
  double node_ratio_vs_baseline = 0.0;
};

/// Runs every policy over the suite and reports solve rate, median nodes
/// on solved cases, and the node ratio against the baseline (the first
/// uniform policy in the list, else the first policy). When
/// base.max_virtual_depth <= 0, each case runs at the policy's minimal
/// solving budget: 2*dm - 1 uniform plies for flat-stepping policies,
/// dm + 1 for the depth-extending ones (their forcing-line extensions
/// carry the search to the mate).
std::vector<PolicySummary> compare_policies(const std::vector<EpdRecord>& suite,
                                            const std::vector<policy::DepthPolicy>& policies,
                                            const search::SearchParams& base, int jobs = 1);

/// Header `experiment,nodes,divisor,max_depth,max_uniform_depth,solved,step`,
/// solved rendered 1/0, reals with up to six significant digits.
void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out);

}  // namespace entroply::harness
