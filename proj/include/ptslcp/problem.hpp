#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ptslcp/error.hpp"
#include "ptslcp/linalg.hpp"

namespace ptslcp {

/// Monotone LCP: find x, s >= 0 with -M x + s = q and x s = 0.
struct LcpProblem {
  DenseMatrix M;
  Vector q;

  std::size_t n() const { return q.size(); }
};

/// A strictly feasible pair (x > 0, s > 0, -M x + s = q).
struct FeasiblePair {
  Vector x;
  Vector s;
};

struct GeneratorConfig {
  std::size_t n = 16;
  double eta = 10.0;
  std::uint64_t seed = 0;
};

struct GeneratedInstance {
  LcpProblem problem;
  FeasiblePair start;
};

namespace detail {

inline constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;

// Uniform on the open interval (0, 1).
inline double uniform_open(std::mt19937_64& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * kTwoPowMinus53;
}

// Uniform on [0, 1).
inline double uniform_closed_open(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * kTwoPowMinus53;
}

}  // namespace detail

/// Random monotone instance with a known strictly feasible pair:
/// M = A A^T + eta (L - L^T), q = s_hat - M x_hat.
inline GeneratedInstance generate_random(const GeneratorConfig& cfg) {
  if (cfg.n < 2) throw DomainError("generator needs n >= 2");
  if (!(cfg.eta >= 0.0) || !std::isfinite(cfg.eta))
    throw DomainError("generator needs eta >= 0");
  const std::size_t n = cfg.n;
  std::mt19937_64 rng(cfg.seed);

  Vector x_hat(n), s_hat(n);
  for (auto& v : x_hat) v = detail::uniform_open(rng);
  for (auto& v : s_hat) v = detail::uniform_open(rng);

  DenseMatrix a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = detail::uniform_closed_open(rng);
  DenseMatrix lower(n);
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j)
      lower(i, j) = detail::uniform_closed_open(rng);

  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a(i, k) * a(j, k);
      m(i, j) = acc + cfg.eta * (lower(i, j) - lower(j, i));
    }

  const Vector mx = m * x_hat;
  Vector q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = s_hat[i] - mx[i];

  return {LcpProblem{std::move(m), std::move(q)},
          FeasiblePair{std::move(x_hat), std::move(s_hat)}};
}

/// ||-M x + s - q||_inf
inline double feasibility_residual(const LcpProblem& p, const Vector& x,
                                   const Vector& s) {
  if (x.size() != p.n() || s.size() != p.n() || p.M.size() != p.n())
    throw DimensionMismatch("feasibility_residual: dimensions do not match");
  const Vector mx = p.M * x;
  double worst = 0.0;
  for (std::size_t i = 0; i < p.n(); ++i)
    worst = std::max(worst, std::abs((s[i] - mx[i]) - p.q[i]));
  return worst;
}

inline bool is_strictly_feasible(const LcpProblem& p, const FeasiblePair& z,
                                 double rel_tol = 1e-9) {
  if (z.x.size() != p.n() || z.s.size() != p.n()) return false;
  if (!(min_entry(z.x) > 0.0) || !(min_entry(z.s) > 0.0)) return false;
  return feasibility_residual(p, z.x, z.s) <= rel_tol * (1.0 + norm_inf(p.q));
}

struct MonotonicityReport {
  bool cholesky_ok = false;  // symmetric part (plus a tiny shift) factorised
  double min_sampled_ratio = 0.0;  // min over samples of u^T M u / ||u||^2
  bool monotone = false;
};

/// Advisory PSD check: Cholesky of (M + M^T)/2 + 1e-10 I and a Monte-Carlo
/// sample of u^T M u. Never throws on an indefinite matrix.
inline MonotonicityReport check_monotone(const DenseMatrix& m,
                                         std::size_t samples = 100,
                                         std::uint64_t seed = 12345) {
  const std::size_t n = m.size();
  MonotonicityReport rep;

  std::vector<double> c(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      c[i * n + j] = 0.5 * (m(i, j) + m(j, i));
  const double shift = 1e-10 * std::max(1.0, m.max_abs());
  for (std::size_t i = 0; i < n; ++i) c[i * n + i] += shift;
  rep.cholesky_ok = true;
  for (std::size_t j = 0; j < n && rep.cholesky_ok; ++j) {
    double d = c[j * n + j];
    for (std::size_t k = 0; k < j; ++k) d -= c[j * n + k] * c[j * n + k];
    if (!(d > 0.0)) {
      rep.cholesky_ok = false;
      break;
    }
    const double ljj = std::sqrt(d);
    c[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double acc = c[i * n + j];
      for (std::size_t k = 0; k < j; ++k) acc -= c[i * n + k] * c[j * n + k];
      c[i * n + j] = acc / ljj;
    }
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < samples; ++t) {
    Vector u(n);
    for (auto& v : u) v = gauss(rng);
    const double nn = norm2_squared(u);
    if (nn == 0.0) continue;
    worst = std::min(worst, dot(u, m * u) / nn);
  }
  rep.min_sampled_ratio = samples == 0 ? 0.0 : worst;
  rep.monotone = rep.cholesky_ok && rep.min_sampled_ratio >= -1e-10;
  return rep;
}

/// Problem file contents: the problem plus an optional user-supplied start.
struct ProblemFile {
  LcpProblem problem;
  std::optional<FeasiblePair> start;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_column(const std::string& text,
                                                       std::size_t offset) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

inline ParseError field_error(const std::string& text, const std::string& key,
                              const std::string& what) {
  const auto pos = text.find("\"" + key + "\"");
  const auto [line, col] =
      line_column(text, pos == std::string::npos ? 0 : pos);
  return ParseError(what, line, col);
}

inline std::vector<double> real_array(const nlohmann::json& doc,
                                      const std::string& text,
                                      const std::string& key,
                                      std::size_t expected) {
  const auto& node = doc.at(key);
  if (!node.is_array())
    throw field_error(text, key, "\"" + key + "\" must be an array");
  std::vector<double> out;
  out.reserve(node.size());
  for (const auto& v : node) {
    if (!v.is_number())
      throw field_error(text, key, "\"" + key + "\" holds a non-number");
    out.push_back(v.get<double>());
    if (!std::isfinite(out.back()))
      throw field_error(text, key, "\"" + key + "\" holds a non-finite value");
  }
  if (out.size() != expected)
    throw field_error(text, key,
                      "\"" + key + "\" has " + std::to_string(out.size()) +
                          " entries, expected " + std::to_string(expected));
  return out;
}

}  // namespace detail

/// Parses `{"n": int, "M": [n*n row-major], "q": [n], "x0"?: [n], "s0"?: [n]}`.
inline ProblemFile parse_problem(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte == 0 ? 0 : e.byte - 1;
    const auto [line, col] = detail::line_column(text, offset);
    throw ParseError(e.what(), line, col);
  }
  if (!doc.is_object()) throw ParseError("top level must be an object", 1, 1);
  for (const char* key : {"n", "M", "q"})
    if (!doc.contains(key))
      throw ParseError(std::string("missing field \"") + key + "\"", 1, 1);
  if (!doc["n"].is_number_integer() || doc["n"].get<long long>() < 1)
    throw detail::field_error(text, "n", "\"n\" must be a positive integer");
  const auto n = static_cast<std::size_t>(doc["n"].get<long long>());

  ProblemFile out{
      LcpProblem{DenseMatrix(n, detail::real_array(doc, text, "M", n * n)),
                 Vector(detail::real_array(doc, text, "q", n))},
      std::nullopt};
  const bool has_x = doc.contains("x0"), has_s = doc.contains("s0");
  if (has_x != has_s)
    throw detail::field_error(text, has_x ? "x0" : "s0",
                              "\"x0\" and \"s0\" must be given together");
  if (has_x)
    out.start = FeasiblePair{Vector(detail::real_array(doc, text, "x0", n)),
                             Vector(detail::real_array(doc, text, "s0", n))};
  return out;
}

inline std::string serialize_problem(const LcpProblem& p,
                                     const FeasiblePair* start = nullptr) {
  nlohmann::ordered_json doc;
  doc["n"] = p.n();
  doc["M"] = p.M.row_major();
  doc["q"] = p.q.values();
  if (start) {
    doc["x0"] = start->x.values();
    doc["s0"] = start->s.values();
  }
  return doc.dump(1) + "\n";
}

inline ProblemFile read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open problem file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_problem(buf.str());
}

inline void write_problem(const LcpProblem& p, const std::string& path,
                          const FeasiblePair* start = nullptr) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write problem file: " + path);
  out << serialize_problem(p, start);
}

}  // namespace ptslcp
