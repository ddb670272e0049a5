#pragma once

// Batch benchmarking over generated instances and per-run accuracy traces.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ptslcp/error.hpp"
#include "ptslcp/problem.hpp"
#include "ptslcp/solver.hpp"

namespace ptslcp {

struct BatchSpec {
  std::vector<std::size_t> sizes{16};
  std::size_t instances = 25;
  double eta = 10.0;
  std::uint64_t base_seed = 0;
  SolverConfig solver;  // direction field is overridden per entry of directions
  std::vector<DirectionKind> directions{DirectionKind::AutoCorrector};
};

struct InstanceRow {
  std::size_t n = 0;
  std::uint64_t seed = 0;
  DirectionKind direction = DirectionKind::AutoCorrector;
  std::size_t predictors = 0;
  std::size_t correctors = 0;
  double final_xts = 0.0;
  double final_v0 = 0.0;
  Termination status = Termination::NumericalFailure;
  std::string message;
  std::size_t audit_failures = 0;
  double wall_ms = 0.0;
};

struct BatchSummary {
  std::size_t n = 0;
  DirectionKind direction = DirectionKind::AutoCorrector;
  std::size_t converged = 0;
  std::size_t failures = 0;
  double mean_predictors = 0.0;  // over converged instances only
  double mean_correctors = 0.0;
  double wall_ms = 0.0;
};

struct BenchReport {
  std::vector<BatchSummary> summaries;
  std::vector<InstanceRow> rows;

  bool all_converged() const {
    for (const auto& s : summaries)
      if (s.failures) return false;
    return true;
  }
};

inline void validate(const BatchSpec& spec) {
  if (spec.sizes.empty()) throw DomainError("batch: sizes must be nonempty");
  if (spec.instances < 1) throw DomainError("batch: instances must be >= 1");
  if (spec.directions.empty())
    throw DomainError("batch: at least one direction is required");
  for (auto n : spec.sizes)
    if (n < 2) throw DomainError("batch: every size must be >= 2");
}

/// Instance k of size n uses seed base_seed + k; every direction solves the
/// same generated instance.
inline BenchReport run_batch(const BatchSpec& spec) {
  validate(spec);
  using clock = std::chrono::steady_clock;
  BenchReport rep;
  for (auto n : spec.sizes) {
    std::vector<BatchSummary> sums;
    for (auto d : spec.directions) sums.push_back({n, d});
    for (std::size_t k = 0; k < spec.instances; ++k) {
      const std::uint64_t seed = spec.base_seed + k;
      const GeneratedInstance inst = generate_random({n, spec.eta, seed});
      for (std::size_t j = 0; j < spec.directions.size(); ++j) {
        SolverConfig cfg = spec.solver;
        cfg.direction = spec.directions[j];
        InstanceRow row;
        row.n = n;
        row.seed = seed;
        row.direction = cfg.direction;
        const auto t0 = clock::now();
        try {
          const SolveResult r = solve(inst.problem, inst.start, cfg);
          row.predictors = r.trace.predictor_count;
          row.correctors = r.trace.corrector_count;
          row.final_xts = r.final_iterate.xts();
          row.final_v0 = r.final_iterate.w().v0;
          row.status = r.trace.termination;
          row.message = r.trace.message;
          row.audit_failures = r.trace.audit_failures.size();
        } catch (const Error& e) {
          row.status = Termination::NumericalFailure;
          row.message = e.what();
        }
        row.wall_ms =
            std::chrono::duration<double, std::milli>(clock::now() - t0).count();

        BatchSummary& s = sums[j];
        s.wall_ms += row.wall_ms;
        if (row.status == Termination::Converged) {
          ++s.converged;
          s.mean_predictors += static_cast<double>(row.predictors);
          s.mean_correctors += static_cast<double>(row.correctors);
        } else {
          ++s.failures;
        }
        rep.rows.push_back(std::move(row));
      }
    }
    for (auto& s : sums) {
      if (s.converged) {
        s.mean_predictors /= static_cast<double>(s.converged);
        s.mean_correctors /= static_cast<double>(s.converged);
      }
      rep.summaries.push_back(s);
    }
  }
  return rep;
}

struct AccuracyRow {
  int magnitude = 0;  // floor(log10 x^T s)
  std::size_t predictors = 0;
  std::size_t correctors = 0;
};

struct AccuracyTrace {
  std::vector<AccuracyRow> rows;
  SolveResult result;
};

/// One row per new decade of x^T s: the cumulative predictor and corrector
/// counts at the first outer iteration whose x^T s has that magnitude. A single
/// iteration that skips several decades produces one row.
inline std::vector<AccuracyRow> accuracy_rows(const SolveTrace& tr) {
  std::vector<AccuracyRow> rows;
  int last = static_cast<int>(std::floor(std::log10(tr.xts_initial)));
  rows.push_back({last, 0, 0});
  std::size_t preds = 0, corrs = 0;
  for (const auto& r : tr.records) {
    ++preds;
    corrs += r.corrector_steps;
    if (!(r.xts > 0.0)) continue;
    const int mag = static_cast<int>(std::floor(std::log10(r.xts)));
    if (mag < last) {
      rows.push_back({mag, preds, corrs});
      last = mag;
    }
  }
  return rows;
}

inline AccuracyTrace run_trace(std::size_t n, std::uint64_t seed, double eta,
                               const SolverConfig& cfg) {
  const GeneratedInstance inst = generate_random({n, eta, seed});
  SolveResult r = solve(inst.problem, inst.start, cfg);
  auto rows = accuracy_rows(r.trace);
  return {std::move(rows), std::move(r)};
}

// ---- output ---------------------------------------------------------------

inline std::string format_double(double v, int precision = 6) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

inline void write_table(std::ostream& os, const BenchReport& rep,
                        bool with_timing = true) {
  os << std::left << std::setw(6) << "n" << std::setw(11) << "direction"
     << std::right << std::setw(12) << "predictors" << std::setw(12)
     << "correctors" << std::setw(11) << "converged" << std::setw(10)
     << "failures" << std::setw(12) << "wall_ms" << '\n';
  for (const auto& s : rep.summaries) {
    os << std::left << std::setw(6) << s.n << std::setw(11)
       << to_string(s.direction) << std::right << std::fixed
       << std::setprecision(2) << std::setw(12) << s.mean_predictors
       << std::setw(12) << s.mean_correctors << std::setw(11) << s.converged
       << std::setw(10) << s.failures << std::setprecision(1) << std::setw(12)
       << (with_timing ? s.wall_ms : 0.0) << '\n';
    os.unsetf(std::ios::floatfield);
  }
}

inline void write_csv(std::ostream& os, const BenchReport& rep,
                      bool with_timing = true) {
  os << "n,seed,direction,predictors,correctors,final_xts,final_v0,status,wall_ms\n";
  for (const auto& r : rep.rows) {
    os << r.n << ',' << r.seed << ',' << to_string(r.direction) << ','
       << r.predictors << ',' << r.correctors << ',' << format_double(r.final_xts, 17)
       << ',' << format_double(r.final_v0, 17) << ',' << to_string(r.status) << ','
       << (with_timing ? format_double(r.wall_ms, 6) : std::string("0")) << '\n';
  }
}

inline nlohmann::ordered_json to_json(const BenchReport& rep,
                                      bool with_timing = true) {
  using nlohmann::ordered_json;
  ordered_json j;
  j["summaries"] = ordered_json::array();
  for (const auto& s : rep.summaries) {
    j["summaries"].push_back({{"n", s.n},
                              {"direction", to_string(s.direction)},
                              {"mean_predictors", s.mean_predictors},
                              {"mean_correctors", s.mean_correctors},
                              {"converged", s.converged},
                              {"failures", s.failures},
                              {"wall_ms", with_timing ? s.wall_ms : 0.0}});
  }
  j["rows"] = ordered_json::array();
  for (const auto& r : rep.rows) {
    j["rows"].push_back({{"n", r.n},
                         {"seed", r.seed},
                         {"direction", to_string(r.direction)},
                         {"predictors", r.predictors},
                         {"correctors", r.correctors},
                         {"final_xts", r.final_xts},
                         {"final_v0", r.final_v0},
                         {"status", to_string(r.status)},
                         {"message", r.message},
                         {"audit_failures", r.audit_failures},
                         {"wall_ms", with_timing ? r.wall_ms : 0.0}});
  }
  return j;
}

inline void write_trace(std::ostream& os, const std::vector<AccuracyRow>& rows,
                        const std::string& label) {
  os << "# " << label << '\n' << std::setw(10) << "log10 xts" << std::setw(12)
     << "predictors" << std::setw(12) << "correctors" << '\n';
  for (const auto& r : rows)
    os << std::setw(10) << r.magnitude << std::setw(12) << r.predictors
       << std::setw(12) << r.correctors << '\n';
}

}  // namespace ptslcp
