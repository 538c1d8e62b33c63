#include "entroply/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

namespace entroply::harness {

namespace {

std::string trim(std::string_view s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string_view::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_ws(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string token;
  while (in >> token) out.push_back(token);
  return out;
}

[[noreturn]] void fail(int line, const std::string& message) {
  throw EpdError("line " + std::to_string(line) + ": " + message);
}

void apply_opcode(EpdRecord& record, const std::string& opcode,
                  const std::vector<std::string>& args, int line,
                  std::vector<std::string>* warnings) {
  if (opcode == "bm") {
    if (args.empty()) fail(line, "bm without moves");
    for (const auto& san : args) {
      auto move = chess::find_move_by_san(record.position, san);
      if (!move) fail(line, "bm move '" + san + "' is not legal here");
      record.best_moves.push_back(*move);
    }
  } else if (opcode == "dm") {
    if (args.size() != 1) fail(line, "dm needs one integer");
    int value = 0;
    auto [ptr, ec] = std::from_chars(args[0].data(), args[0].data() + args[0].size(), value);
    if (ec != std::errc() || ptr != args[0].data() + args[0].size() || value < 1) {
      fail(line, "dm value '" + args[0] + "' must be a positive integer");
    }
    record.direct_mate = value;
  } else if (opcode == "id") {
    std::string joined;
    for (const auto& a : args) {
      if (!joined.empty()) joined += ' ';
      joined += a;
    }
    if (joined.size() >= 2 && joined.front() == '"' && joined.back() == '"') {
      joined = joined.substr(1, joined.size() - 2);
    }
    record.id = joined;
  } else if (warnings) {
    warnings->push_back("line " + std::to_string(line) + ": ignored opcode '" + opcode + "'");
  }
}

}  // namespace

std::vector<EpdRecord> load_epd(std::istream& in, std::vector<std::string>* warnings) {
  std::vector<EpdRecord> records;
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string line = trim(raw);
    if (line.empty() || line.front() == '#') continue;

    auto tokens = split_ws(line);
    if (tokens.size() < 4) fail(line_number, "expected 4 FEN fields before opcodes");

    EpdRecord record;
    try {
      record.position =
          chess::parse_fen_fields(tokens[0], tokens[1], tokens[2], tokens[3]);
    } catch (const chess::FenError& e) {
      fail(line_number, std::string("bad FEN: ") + e.what());
    }

    // Everything after the FEN fields is `opcode args... ;` groups.
    std::string rest;
    for (std::size_t i = 4; i < tokens.size(); ++i) {
      if (!rest.empty()) rest += ' ';
      rest += tokens[i];
    }
    std::size_t start = 0;
    while (start < rest.size()) {
      auto semi = rest.find(';', start);
      std::string group = trim(semi == std::string::npos ? rest.substr(start)
                                                         : rest.substr(start, semi - start));
      start = semi == std::string::npos ? rest.size() : semi + 1;
      if (group.empty()) continue;
      auto parts = split_ws(group);
      apply_opcode(record, parts[0], {parts.begin() + 1, parts.end()}, line_number, warnings);
    }

    records.push_back(std::move(record));
  }
  return records;
}

std::vector<EpdRecord> load_epd_file(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw EpdError("cannot open EPD file '" + path + "'");
  return load_epd(in, warnings);
}

ExperimentRow run_case(const EpdRecord& record, const search::SearchParams& params,
                       std::uint64_t node_budget, int experiment_number) {
  if (record.best_moves.empty() && !record.direct_mate) {
    throw std::invalid_argument("EPD record '" + record.id +
                                "' has neither bm nor dm; no success criterion");
  }

  search::SearchParams effective = params;
  effective.node_budget = node_budget;
  search::SearchResult result = search::search_root(record.position, effective);

  bool solved = false;
  if (!result.aborted) {
    if (record.direct_mate && result.solved_mate_in &&
        *result.solved_mate_in <= *record.direct_mate) {
      solved = true;
    }
    if (!record.best_moves.empty() && result.best_move &&
        std::find(record.best_moves.begin(), record.best_moves.end(), *result.best_move) !=
            record.best_moves.end()) {
      solved = true;
    }
  }

  ExperimentRow row;
  row.experiment_number = experiment_number;
  row.nodes_searched = result.nodes;
  row.divisor = effective.policy.divisor;
  row.max_depth_attained = result.max_depth_attained;
  row.max_uniform_depth = effective.max_uniform_depth();
  row.solved = solved;
  row.step_size = effective.step_scale;
  return row;
}

namespace {

void run_indexed(std::size_t count, int jobs, const std::function<void(std::size_t)>& work) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    while (!failed.load()) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      try {
        work(i);
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    }
  };
  std::vector<std::thread> pool;
  for (int j = 0; j < std::min<int>(jobs, static_cast<int>(count)); ++j) {
    pool.emplace_back(worker);
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

int derived_max_extension(int spec_value, int depth) {
  return spec_value > 0 ? spec_value : 2 * depth + 4;
}

double median(std::vector<double> values) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  std::size_t n = values.size();
  if (n % 2 == 1) return values[n / 2];
  return 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

std::vector<ExperimentRow> run_sweep(const SweepSpec& spec, int jobs) {
  if (spec.suite.empty() || spec.divisors.empty() || spec.uniform_depths.empty()) {
    throw std::invalid_argument("sweep needs a suite, divisors and depths");
  }
  if (spec.node_budget == 0) throw std::invalid_argument("sweep needs a node budget");

  struct Task {
    const EpdRecord* record;
    double divisor;
    int depth;
  };
  std::vector<Task> tasks;
  for (const auto& record : spec.suite) {
    for (double divisor : spec.divisors) {
      for (int depth : spec.uniform_depths) {
        tasks.push_back({&record, divisor, depth});
      }
    }
  }

  std::vector<ExperimentRow> rows(tasks.size());
  run_indexed(tasks.size(), jobs, [&](std::size_t i) {
    const Task& task = tasks[i];
    search::SearchParams params;
    params.policy = spec.family.with_divisor(task.divisor);
    params.step_scale = spec.step_size;
    params.max_virtual_depth = task.depth * spec.step_size;
    params.max_extension = derived_max_extension(spec.max_extension, task.depth);
    rows[i] = run_case(*task.record, params, spec.node_budget, static_cast<int>(i) + 1);
  });
  return rows;
}

std::vector<PolicySummary> compare_policies(const std::vector<EpdRecord>& suite,
                                            const std::vector<policy::DepthPolicy>& policies,
                                            const search::SearchParams& base, int jobs) {
  if (policies.size() < 2) {
    throw std::invalid_argument("policy comparison needs at least two policies");
  }
  if (suite.empty()) throw std::invalid_argument("policy comparison needs a non-empty suite");

  const bool auto_depth = base.max_virtual_depth <= 0.0;
  if (auto_depth) {
    for (const auto& record : suite) {
      if (!record.direct_mate) {
        throw std::invalid_argument("auto depth needs dm on every record (record '" +
                                    record.id + "' lacks it)");
      }
    }
  }

  const std::size_t cases = suite.size();
  std::vector<ExperimentRow> rows(policies.size() * cases);
  run_indexed(rows.size(), jobs, [&](std::size_t i) {
    const std::size_t p = i / cases;
    const std::size_t c = i % cases;
    const EpdRecord& record = suite[c];

    search::SearchParams params = base;
    params.policy = policies[p];
    if (auto_depth) {
      // Minimal solving budget per mechanism: a uniform step (and the
      // realization-probability gate, which prunes width but never
      // stretches depth) must afford the full 2*dm - 1 plies; the
      // depth-extending policies reach the mate along forcing lines with
      // a budget of dm + 1 uniform plies.
      const int dm = *record.direct_mate;
      const bool flat_depth =
          policies[p].kind == policy::PolicyKind::Uniform ||
          policies[p].kind == policy::PolicyKind::RealizationProbability;
      const int depth = flat_depth ? 2 * dm - 1 : dm + 1;
      params.max_virtual_depth = depth * params.step_scale;
      // The mate line is 2*dm - 1 plies; two plies of slack let the
      // horizon settle without letting extensions wander.
      params.max_extension = 2 * dm + 1;
    }
    rows[i] = run_case(record, params, base.node_budget, static_cast<int>(i) + 1);
  });

  std::size_t baseline = 0;
  for (std::size_t p = 0; p < policies.size(); ++p) {
    if (policies[p].kind == policy::PolicyKind::Uniform) {
      baseline = p;
      break;
    }
  }

  std::vector<PolicySummary> summaries(policies.size());
  for (std::size_t p = 0; p < policies.size(); ++p) {
    PolicySummary& s = summaries[p];
    s.policy = std::string(policies[p].name());
    s.cases = static_cast<int>(cases);
    std::vector<double> solved_nodes;
    for (std::size_t c = 0; c < cases; ++c) {
      const ExperimentRow& row = rows[p * cases + c];
      if (row.solved) {
        ++s.solved;
        solved_nodes.push_back(static_cast<double>(row.nodes_searched));
      }
    }
    s.solve_rate = static_cast<double>(s.solved) / static_cast<double>(cases);
    s.median_nodes_solved = median(std::move(solved_nodes));
  }
  double base_median = summaries[baseline].median_nodes_solved;
  for (auto& s : summaries) {
    s.node_ratio_vs_baseline = base_median > 0.0 ? s.median_nodes_solved / base_median : 0.0;
  }
  return summaries;
}

namespace {

std::string format_real(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.6g", value);
  return buffer;
}

}  // namespace

void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
  out << "experiment,nodes,divisor,max_depth,max_uniform_depth,solved,step\n";
  for (const auto& row : rows) {
    out << row.experiment_number << ',' << row.nodes_searched << ',' << format_real(row.divisor)
        << ',' << row.max_depth_attained << ',' << row.max_uniform_depth << ','
        << (row.solved ? 1 : 0) << ',' << format_real(row.step_size) << '\n';
  }
}

}  // namespace entroply::harness
