// ptslcp: benchmark and solve monotone LCPs from the command line.

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptslcp/ptslcp.hpp"

namespace {

using namespace ptslcp;

std::vector<DirectionKind> parse_directions(const std::string& s) {
  if (s == "ac") return {DirectionKind::AutoCorrector};
  if (s == "ut") return {DirectionKind::UniversalTangent};
  return {DirectionKind::AutoCorrector, DirectionKind::UniversalTangent};
}

void emit(const BenchReport& rep, const std::string& format, bool timing) {
  if (format == "csv")
    write_csv(std::cout, rep, timing);
  else if (format == "json")
    std::cout << to_json(rep, timing).dump(2) << '\n';
  else
    write_table(std::cout, rep, timing);
}

InstanceRow row_from(const SolveResult& r, std::size_t n, DirectionKind d) {
  InstanceRow row;
  row.n = n;
  row.direction = d;
  row.predictors = r.trace.predictor_count;
  row.correctors = r.trace.corrector_count;
  row.final_xts = r.final_iterate.xts();
  row.final_v0 = r.final_iterate.w().v0;
  row.status = r.trace.termination;
  row.message = r.trace.message;
  row.audit_failures = r.trace.audit_failures.size();
  return row;
}

void add_single(BenchReport& rep, const InstanceRow& row) {
  BatchSummary s{row.n, row.direction};
  if (row.status == Termination::Converged) {
    s.converged = 1;
    s.mean_predictors = static_cast<double>(row.predictors);
    s.mean_correctors = static_cast<double>(row.correctors);
  } else {
    s.failures = 1;
  }
  rep.summaries.push_back(s);
  rep.rows.push_back(row);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parabolic target-space predictor-corrector solver for monotone LCPs"};

  std::size_t n = 0;
  std::vector<std::size_t> sizes;
  std::size_t instances = 25;
  double eta = 10.0;
  std::uint64_t seed = 0;
  double beta = 0.25;
  std::string tau_arg = "1.5";
  double eps = 1e-7;
  std::string direction = "both";
  bool audit = false;
  std::string format = "table";
  bool trace = false;
  std::string problem_path;
  std::string write_path;
  bool no_timing = false;

  app.add_option("--n", n, "Single problem size (shorthand for --sizes N)");
  app.add_option("--sizes", sizes, "Problem sizes for a batch")->delimiter(',');
  app.add_option("--instances", instances, "Instances per size")->capture_default_str();
  app.add_option("--eta", eta, "Skew-symmetric weight of the generator")->capture_default_str();
  app.add_option("--seed", seed, "Base seed; instance k uses seed + k")->capture_default_str();
  app.add_option("--beta", beta, "Tight neighbourhood size, in (0, 1/3)")->capture_default_str();
  app.add_option("--tau", tau_arg, "Wide neighbourhood size, or 'theory'")->capture_default_str();
  app.add_option("--eps", eps, "Stop once v0 <= eps")->capture_default_str();
  app.add_option("--direction", direction, "Predictor direction")
      ->check(CLI::IsMember({"ut", "ac", "both"}))
      ->capture_default_str();
  app.add_flag("--audit", audit, "Abort a solve on the first violated guarantee");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  app.add_flag("--trace", trace, "Print the x^T s accuracy progression per run");
  app.add_option("--problem", problem_path, "Solve a problem file (needs x0, s0)");
  app.add_option("--write-problem", write_path,
                 "Write the generated instance (--n, --seed, --eta) to a file and exit");
  app.add_flag("--no-timing", no_timing, "Report wall_ms as 0 for reproducible output");

  CLI11_PARSE(app, argc, argv);

  SolverConfig cfg;
  cfg.beta = beta;
  cfg.eps = eps;
  cfg.audit = audit;
  if (tau_arg != "theory") {
    try {
      cfg.tau = std::stod(tau_arg);
    } catch (const std::exception&) {
      std::cerr << "error: --tau must be a number or 'theory'\n";
      return 2;
    }
  }
  if (n) sizes.insert(sizes.begin(), n);
  if (sizes.empty()) sizes.push_back(16);
  const auto dirs = parse_directions(direction);

  try {
    if (!write_path.empty()) {
      const auto inst = generate_random({sizes.front(), eta, seed});
      write_problem(inst.problem, write_path, &inst.start);
      return 0;
    }

    if (!problem_path.empty()) {
      const ProblemFile file = read_problem(problem_path);
      if (!file.start) {
        std::cerr << "error: " << problem_path
                  << " has no x0/s0; a strictly feasible start is required\n";
        return 2;
      }
      const auto mono = check_monotone(file.problem.M);
      if (!mono.monotone)
        std::cerr << "warning: M does not look positive semidefinite (min sampled"
                     " u^T M u / |u|^2 = "
                  << mono.min_sampled_ratio << ")\n";
      BenchReport rep;
      for (auto d : dirs) {
        SolverConfig c = cfg;
        c.direction = d;
        const SolveResult r = solve(file.problem, *file.start, c);
        add_single(rep, row_from(r, file.problem.n(), d));
        if (trace)
          write_trace(std::cout, accuracy_rows(r.trace),
                      std::string(to_string(d)) + " " + problem_path);
      }
      emit(rep, format, !no_timing);
      return rep.all_converged() ? 0 : 1;
    }

    if (trace) {
      bool ok = true;
      for (auto size : sizes)
        for (auto d : dirs) {
          SolverConfig c = cfg;
          c.direction = d;
          const AccuracyTrace t = run_trace(size, seed, eta, c);
          write_trace(std::cout, t.rows,
                      std::string(to_string(d)) + " n=" + std::to_string(size) +
                          " seed=" + std::to_string(seed) + " " +
                          std::string(to_string(t.result.trace.termination)));
          ok = ok && t.result.converged();
        }
      return ok ? 0 : 1;
    }

    BatchSpec spec;
    spec.sizes = sizes;
    spec.instances = instances;
    spec.eta = eta;
    spec.base_seed = seed;
    spec.solver = cfg;
    spec.directions = dirs;
    const BenchReport rep = run_batch(spec);
    emit(rep, format, !no_timing);
    return rep.all_converged() ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
