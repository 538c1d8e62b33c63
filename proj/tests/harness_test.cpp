#include <charconv>
#include <sstream>

#include "doctest.h"
#include "entroply/harness.hpp"

using namespace entroply;
using harness::EpdRecord;
using harness::ExperimentRow;
using search::SearchParams;

namespace {

// Minimal CSV reader used as the round-trip oracle for emit_csv.
std::vector<ExperimentRow> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  REQUIRE(std::getline(in, line));
  REQUIRE(line == "experiment,nodes,divisor,max_depth,max_uniform_depth,solved,step");
  std::vector<ExperimentRow> rows;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 7);
    ExperimentRow row;
    row.experiment_number = std::stoi(cells[0]);
    row.nodes_searched = std::stoull(cells[1]);
    row.divisor = std::stod(cells[2]);
    row.max_depth_attained = std::stoi(cells[3]);
    row.max_uniform_depth = std::stoi(cells[4]);
    row.solved = cells[5] == "1";
    row.step_size = std::stod(cells[6]);
    rows.push_back(row);
  }
  return rows;
}

const char* kMateInOneEpd =
    "6k1/5ppp/8/8/8/8/8/R5K1 w - - bm Ra8#; dm 1; id \"M1.001\";\n";

SearchParams base_params(int depth) {
  SearchParams params = SearchParams::uniform_depth(depth);
  params.node_budget = 2'000'000;
  return params;
}

}  // namespace

TEST_SUITE_BEGIN("harness");

TEST_CASE("epd loads records with bm, dm and id") {
  std::istringstream in(kMateInOneEpd);
  auto records = harness::load_epd(in);
  REQUIRE(records.size() == 1);
  const EpdRecord& r = records[0];
  CHECK(r.id == "M1.001");
  REQUIRE(r.direct_mate.has_value());
  CHECK(*r.direct_mate == 1);
  REQUIRE(r.best_moves.size() == 1);
  CHECK(chess::to_san(r.position, r.best_moves[0]) == "Ra8#");
}

TEST_CASE("epd: empty stream, comments, unknown opcodes, bad lines") {
  std::istringstream empty("");
  CHECK(harness::load_epd(empty).empty());

  std::istringstream commented("# comment line\n\n" + std::string(kMateInOneEpd));
  CHECK(harness::load_epd(commented).size() == 1);

  std::vector<std::string> warnings;
  std::istringstream unknown(
      "6k1/5ppp/8/8/8/8/8/R5K1 w - - dm 1; acd 12; id \"X\";\n");
  auto records = harness::load_epd(unknown, &warnings);
  CHECK(records.size() == 1);
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("acd") != std::string::npos);

  std::istringstream bad("not a fen at all -\n");
  CHECK_THROWS_WITH_AS(harness::load_epd(bad), doctest::Contains("line 1"), harness::EpdError);

  std::istringstream bad_move("6k1/5ppp/8/8/8/8/8/R5K1 w - - bm Qa1; dm 1;\n");
  CHECK_THROWS_WITH_AS(harness::load_epd(bad_move), doctest::Contains("line 1"),
                       harness::EpdError);

  std::istringstream bad_dm("6k1/5ppp/8/8/8/8/8/R5K1 w - - dm zero;\n");
  CHECK_THROWS_AS(harness::load_epd(bad_dm), harness::EpdError);
}

TEST_CASE("run_case solves the mate-in-one fixture") {
  std::istringstream in(kMateInOneEpd);
  auto record = harness::load_epd(in).at(0);
  auto row = harness::run_case(record, base_params(2), 2'000'000, 7);
  CHECK(row.solved);
  CHECK(row.experiment_number == 7);
  CHECK(row.nodes_searched < 10'000);
  CHECK(row.max_uniform_depth == 2);
  CHECK(row.step_size == 6.0);
}

TEST_CASE("run_case honours the node budget") {
  std::istringstream in(kMateInOneEpd);
  auto record = harness::load_epd(in).at(0);
  auto row = harness::run_case(record, base_params(2), 1);
  CHECK_FALSE(row.solved);
  CHECK(row.nodes_searched <= 2);
}

TEST_CASE("run_case cannot see past the extension horizon") {
  // Mate in 2 needs three plies.
  std::istringstream in(
      "4kb1r/p2n1ppp/4q3/4p1B1/4P3/1Q6/PPP2PPP/2KR4 w k - bm Qb8+; dm 2;\n");
  auto record = harness::load_epd(in).at(0);
  SearchParams params = base_params(4);
  params.max_extension = 2;
  auto row = harness::run_case(record, params, 2'000'000);
  CHECK_FALSE(row.solved);
}

TEST_CASE("run_case rejects records without a criterion") {
  std::istringstream in("6k1/5ppp/8/8/8/8/8/R5K1 w - - id \"nocrit\";\n");
  auto record = harness::load_epd(in).at(0);
  CHECK_THROWS_AS(harness::run_case(record, base_params(2), 1000), std::invalid_argument);
}

TEST_CASE("run_sweep enumerates record x divisor x depth with sequential numbering") {
  std::istringstream in(kMateInOneEpd);
  harness::SweepSpec spec;
  spec.suite = harness::load_epd(in);
  spec.divisors = {1.0, 2.0, 3.0};
  spec.uniform_depths = {2};
  spec.family = policy::DepthPolicy::appendix();
  spec.node_budget = 200'000;
  auto rows = harness::run_sweep(spec);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].experiment_number == static_cast<int>(i) + 1);
    CHECK(rows[i].divisor == spec.divisors[i]);
    CHECK(rows[i].solved);
  }
}

TEST_CASE("run_sweep is deterministic and parallel-stable") {
  std::istringstream in(std::string(kMateInOneEpd) +
                        "4kb1r/p2n1ppp/4q3/4p1B1/4P3/1Q6/PPP2PPP/2KR4 w k - dm 2;\n");
  harness::SweepSpec spec;
  spec.suite = harness::load_epd(in);
  spec.divisors = {1.0, 2.0};
  spec.uniform_depths = {2, 3};
  spec.family = policy::DepthPolicy::entropy_reduction(entropy::EntropyModel::asymptotic());
  spec.node_budget = 500'000;

  auto serial = harness::run_sweep(spec, 1);
  auto parallel = harness::run_sweep(spec, 4);
  CHECK(serial == parallel);

  std::ostringstream csv_a, csv_b;
  harness::emit_csv(serial, csv_a);
  harness::emit_csv(harness::run_sweep(spec, 1), csv_b);
  CHECK(csv_a.str() == csv_b.str());
}

TEST_CASE("budget exhaustion marks every row unsolved") {
  std::istringstream in(kMateInOneEpd);
  harness::SweepSpec spec;
  spec.suite = harness::load_epd(in);
  spec.divisors = {1.0};
  spec.uniform_depths = {2};
  spec.family = policy::DepthPolicy::uniform();
  spec.node_budget = 1;
  for (const auto& row : harness::run_sweep(spec)) CHECK_FALSE(row.solved);
}

TEST_CASE("compare_policies: ers beats uniform on a forcing mate") {
  // Queen sacrifice, forced capture, double check, bishop mate.
  std::istringstream in(
      "rnb1kb1r/pp3ppp/2p5/4q3/4n3/3Q4/PPPB1PPP/2KR1BNR w kq - bm Qd8+; dm 3;\n");
  auto suite = harness::load_epd(in);

  SearchParams base;
  base.max_virtual_depth = 0;  // per-case minimal solving budget
  base.node_budget = 2'000'000;
  auto summaries = harness::compare_policies(
      suite,
      {policy::DepthPolicy::entropy_reduction(entropy::EntropyModel::asymptotic()),
       policy::DepthPolicy::uniform()},
      base);
  REQUIRE(summaries.size() == 2);
  CHECK(summaries[0].policy == "ers");
  CHECK(summaries[1].policy == "uniform");
  CHECK(summaries[1].node_ratio_vs_baseline == 1.0);
  CHECK(summaries[0].solve_rate == 1.0);
  CHECK(summaries[1].solve_rate == 1.0);
  CHECK(summaries[0].median_nodes_solved < summaries[1].median_nodes_solved);
  CHECK(summaries[0].node_ratio_vs_baseline < 1.0);
}

TEST_CASE("compare_policies rejects fewer than two policies") {
  std::istringstream in(kMateInOneEpd);
  auto suite = harness::load_epd(in);
  SearchParams base = base_params(2);
  CHECK_THROWS_AS(
      harness::compare_policies(suite, {policy::DepthPolicy::uniform()}, base),
      std::invalid_argument);
}

TEST_CASE("identical policies give identical summaries") {
  std::istringstream in(kMateInOneEpd);
  auto suite = harness::load_epd(in);
  auto ers = policy::DepthPolicy::entropy_reduction(entropy::EntropyModel::asymptotic());
  auto summaries = harness::compare_policies(suite, {ers, ers}, base_params(2));
  CHECK(summaries[0].solve_rate == summaries[1].solve_rate);
  CHECK(summaries[0].median_nodes_solved == summaries[1].median_nodes_solved);
  CHECK(summaries[0].node_ratio_vs_baseline == 1.0);
  CHECK(summaries[1].node_ratio_vs_baseline == 1.0);
}

TEST_CASE("emit_csv reproduces the reference row byte-exactly") {
  ExperimentRow row{1, 20827, 1.0, 17, 16, true, 6.0};
  std::ostringstream out;
  harness::emit_csv({row}, out);
  CHECK(out.str() ==
        "experiment,nodes,divisor,max_depth,max_uniform_depth,solved,step\n"
        "1,20827,1,17,16,1,6\n");
}

TEST_CASE("emit_csv renders fractional divisors and empty row lists") {
  std::ostringstream header_only;
  harness::emit_csv({}, header_only);
  CHECK(header_only.str() ==
        "experiment,nodes,divisor,max_depth,max_uniform_depth,solved,step\n");

  ExperimentRow row{2, 1080, 1.25, 8, 16, false, 6.0};
  std::ostringstream out;
  harness::emit_csv({row}, out);
  CHECK(out.str().find("2,1080,1.25,8,16,0,6\n") != std::string::npos);
}

TEST_CASE("csv round-trips through the parser oracle") {
  std::vector<ExperimentRow> rows = {
      {1, 20827, 1.0, 17, 16, true, 6.0},
      {2, 1080, 1.25, 8, 16, false, 6.0},
      {3, 88532, 1.25, 12, 22, false, 6.0},
      {4, 7711638, 5.0, 14, 70, true, 6.0},
  };
  std::ostringstream out;
  harness::emit_csv(rows, out);
  CHECK(parse_csv(out.str()) == rows);
}

TEST_SUITE_END();
