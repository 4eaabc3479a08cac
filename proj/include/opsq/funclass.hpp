// Copyright 2026 The opsq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Scalar function specifications and their classification as operator
// superquadratic / subquadratic / convex functions.
//
// Sign convention for every deficit in this library: deficit = right-hand
// side minus left-hand side of the inequality, so a positive semidefinite
// deficit means the inequality holds for that instance.

#ifndef OPSQ_FUNCLASS_HPP
#define OPSQ_FUNCLASS_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opsq/error.hpp"
#include "opsq/io.hpp"
#include "opsq/linalg.hpp"
#include "opsq/parallel.hpp"

namespace opsq {

enum class OperatorClass {
  OperatorSuperquadratic,
  OperatorSubquadratic,
  OperatorQuadratic,
  Neither,
  Unknown
};

/// Classification in the ordinary (scalar) sense of the support inequality
///   f(t) >= f(x) + C_x (t - x) + f(|t - x|).
enum class ScalarClass { Superquadratic, Subquadratic, Quadratic, Unknown };

inline std::string_view to_string(OperatorClass c) {
  switch (c) {
    case OperatorClass::OperatorSuperquadratic: return "OperatorSuperquadratic";
    case OperatorClass::OperatorSubquadratic: return "OperatorSubquadratic";
    case OperatorClass::OperatorQuadratic: return "OperatorQuadratic";
    case OperatorClass::Neither: return "Neither";
    case OperatorClass::Unknown: return "Unknown";
  }
  return "?";
}

inline std::string_view to_string(ScalarClass c) {
  switch (c) {
    case ScalarClass::Superquadratic: return "Superquadratic";
    case ScalarClass::Subquadratic: return "Subquadratic";
    case ScalarClass::Quadratic: return "Quadratic";
    case ScalarClass::Unknown: return "Unknown";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// ScalarFunctionSpec
// ---------------------------------------------------------------------------

struct ScalarFunctionSpec {
  std::string name;
  std::function<double(double)> eval;
  std::function<double(double)> derivative;     // optional
  std::function<double(double)> support_slope;  // optional explicit C_x
  Interval domain = Interval::nonnegative();
  /// Default spectrum range for randomized campaigns; must lie in `domain`.
  Interval sampling = Interval::closed(0.0, 4.0);
  double domain_margin = kDefaultDomainMargin;
  OperatorClass claimed_class = OperatorClass::Unknown;
  ScalarClass scalar_class = ScalarClass::Unknown;

  /// Domain-checked scalar evaluation.
  double operator()(double t) const {
    if (!domain.admits(t, domain_margin)) {
      throw DomainViolation(name + ": argument " + std::to_string(t) + " outside domain " +
                                domain.to_string(),
                            {t});
    }
    const double v = eval(domain.clamp(t));
    if (!std::isfinite(v)) {
      throw DomainViolation(name + ": non-finite value at " + std::to_string(t), {t});
    }
    return v;
  }

  bool has_support_slope() const { return static_cast<bool>(support_slope) || derivative; }

  /// C_x: the explicit rule when given, otherwise f'(x), which is the right
  /// constant whenever f(0) = f'(0) = 0.
  double slope_at(double x) const {
    const auto& rule = support_slope ? support_slope : derivative;
    if (!rule) throw MissingDerivative(name + ": no support slope C_x available");
    const double c = rule(x);
    if (!std::isfinite(c)) {
      throw DomainViolation(name + ": support slope undefined at " + std::to_string(x), {x});
    }
    return c;
  }
};

inline ScalarFunctionSpec square_function() {
  ScalarFunctionSpec f;
  f.name = "square";
  f.eval = [](double t) { return t * t; };
  f.derivative = [](double t) { return 2.0 * t; };
  f.claimed_class = OperatorClass::OperatorSuperquadratic;
  f.scalar_class = ScalarClass::Quadratic;
  return f;
}

inline ScalarFunctionSpec cube_function() {
  ScalarFunctionSpec f;
  f.name = "cube";
  f.eval = [](double t) { return t * t * t; };
  f.derivative = [](double t) { return 3.0 * t * t; };
  f.claimed_class = OperatorClass::Neither;
  f.scalar_class = ScalarClass::Superquadratic;
  return f;
}

inline ScalarFunctionSpec reciprocal_function() {
  ScalarFunctionSpec f;
  f.name = "recip";
  f.eval = [](double t) { return 1.0 / t; };
  f.derivative = [](double t) { return -1.0 / (t * t); };
  f.domain = Interval::positive();
  f.sampling = Interval::closed(0.25, 4.0);
  f.claimed_class = OperatorClass::Neither;
  return f;
}

/// t^r. Operator concave and nonnegative for r in [0, 1].
inline ScalarFunctionSpec power_function(double r) {
  ScalarFunctionSpec f;
  f.name = "power:" + format_double(r);
  f.eval = [r](double t) { return std::pow(t, r); };
  f.derivative = [r](double t) { return r == 0.0 ? 0.0 : r * std::pow(t, r - 1.0); };
  if (r < 0.0) {
    f.domain = Interval::positive();
    f.sampling = Interval::closed(0.25, 4.0);
  }
  if (r >= 0.0 && r <= 1.0) f.claimed_class = OperatorClass::OperatorSubquadratic;
  if (r == 2.0) f.claimed_class = OperatorClass::OperatorSuperquadratic;
  if (r >= 0.0 && r < 2.0) f.scalar_class = ScalarClass::Subquadratic;
  if (r == 2.0) f.scalar_class = ScalarClass::Quadratic;
  if (r > 2.0) f.scalar_class = ScalarClass::Superquadratic;
  return f;
}

/// t log t with the continuous extension 0 at t = 0. Operator convex on
/// [0, inf) and nonpositive on [0, 1], hence sampled on (0.01, 0.99).
inline ScalarFunctionSpec xlogx_function() {
  ScalarFunctionSpec f;
  f.name = "tlogt";
  f.eval = [](double t) { return t == 0.0 ? 0.0 : t * std::log(t); };
  f.derivative = [](double t) { return 1.0 + std::log(t); };
  f.sampling = Interval::closed(0.01, 0.99);
  f.claimed_class = OperatorClass::OperatorSuperquadratic;
  f.scalar_class = ScalarClass::Superquadratic;
  return f;
}

/// a t + b.
inline ScalarFunctionSpec affine_function(double a, double b) {
  ScalarFunctionSpec f;
  f.name = "affine:" + format_double(a) + ":" + format_double(b);
  f.eval = [a, b](double t) { return a * t + b; };
  f.derivative = [a](double) { return a; };
  if (a == 0.0 && b == 0.0) {
    f.claimed_class = OperatorClass::OperatorQuadratic;
    f.scalar_class = ScalarClass::Quadratic;
  } else if (a >= 0.0 && b >= 0.0) {
    f.claimed_class = OperatorClass::OperatorSubquadratic;
    f.scalar_class = ScalarClass::Subquadratic;
  } else if (a <= 0.0 && b <= 0.0) {
    f.claimed_class = OperatorClass::OperatorSuperquadratic;
    f.scalar_class = ScalarClass::Superquadratic;
  }
  return f;
}

namespace detail {

inline double parse_real(std::string_view s, std::string_view context) {
  // std::from_chars for double is unavailable in older libstdc++.
  const std::string text(s);
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size() || !std::isfinite(v)) {
    throw ParseError("bad number '" + text + "' in " + std::string(context));
  }
  return v;
}

}  // namespace detail

/// Resolves a built-in id: square | cube | recip | power:<r> | tlogt | affine:<a>:<b>.
inline ScalarFunctionSpec builtin_function(std::string_view id) {
  if (id == "square") return square_function();
  if (id == "cube") return cube_function();
  if (id == "recip") return reciprocal_function();
  if (id == "tlogt") return xlogx_function();
  if (id.starts_with("power:")) return power_function(detail::parse_real(id.substr(6), id));
  if (id.starts_with("affine:")) {
    const std::string_view rest = id.substr(7);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos) {
      throw ParseError("affine function id must be affine:<a>:<b>");
    }
    return affine_function(detail::parse_real(rest.substr(0, colon), id),
                           detail::parse_real(rest.substr(colon + 1), id));
  }
  throw ParseError("unknown function id '" + std::string(id) +
                   "' (expected square, cube, recip, power:<r>, tlogt, affine:<a>:<b>)");
}

/// Checks that `f` is finite on a 1000-point grid of [lo, hi] (clipped to the
/// domain) and that its derivative, when present, matches central finite
/// differences to 1e-6 relative.
inline void validate_function_spec(const ScalarFunctionSpec& f, double lo, double hi) {
  if (!f.eval) throw Error(f.name + ": missing evaluation rule");
  constexpr int kGrid = 1000;
  const double a = std::max(lo, f.domain.lower + (f.domain.lower_open ? f.domain_margin : 0.0));
  const double b = std::min(hi, f.domain.upper - (f.domain.upper_open ? f.domain_margin : 0.0));
  if (!(a <= b)) throw DomainViolation(f.name + ": empty validation range", {lo, hi});
  for (int i = 0; i < kGrid; ++i) {
    const double t = a + (b - a) * i / (kGrid - 1);
    if (!std::isfinite(f.eval(t))) {
      throw DomainViolation(f.name + ": non-finite value at " + std::to_string(t), {t});
    }
    if (!f.derivative) continue;
    const double h = 6e-6 * std::max(1.0, std::abs(t));
    if (t - h < a || t + h > b) continue;
    const double fd = (f.eval(t + h) - f.eval(t - h)) / (2.0 * h);
    const double d = f.derivative(t);
    if (std::abs(fd - d) > 1e-6 * std::max(1.0, std::abs(d))) {
      throw Error(f.name + ": derivative rule disagrees with finite differences at " +
                  std::to_string(t));
    }
  }
}

inline HermitianMatrix apply_function(const ScalarFunctionSpec& f, const HermitianMatrix& h) {
  return spectral_apply(h, f.eval, f.domain, f.domain_margin, f.name);
}

// ---------------------------------------------------------------------------
// Deficit reports
// ---------------------------------------------------------------------------

/// What it takes to regenerate an instance: a seed plus explicit parameters.
struct InstanceDigest {
  std::uint64_t seed = 0;
  Json params = Json::object();

  friend bool operator==(const InstanceDigest&, const InstanceDigest&) = default;
};

inline Json to_json(const InstanceDigest& d) { return Json{{"seed", d.seed}, {"params", d.params}}; }

inline InstanceDigest digest_from_json(const Json& j) {
  return {j.at("seed").get<std::uint64_t>(), j.at("params")};
}

struct DeficitReport {
  std::string inequality_id;
  HermitianMatrix deficit;  // RHS - LHS
  LoewnerVerdict verdict;
  InstanceDigest digest;
};

inline DeficitReport make_deficit_report(std::string id, HermitianMatrix deficit, double tol,
                                         InstanceDigest digest = {}) {
  LoewnerVerdict v = loewner_verdict(deficit, tol);
  return {std::move(id), std::move(deficit), v, std::move(digest)};
}

inline Json to_json(const DeficitReport& r) {
  return Json{{"inequality_id", r.inequality_id},
              {"deficit", matrix_to_json(r.deficit)},
              {"verdict", to_string(r.verdict.relation)},
              {"lambda_min", r.verdict.lambda_min},
              {"lambda_max", r.verdict.lambda_max},
              {"tolerance_used", r.verdict.tolerance_used},
              {"digest", to_json(r.digest)}};
}

// ---------------------------------------------------------------------------
// Scalar and operator deficits
// ---------------------------------------------------------------------------

/// f(t) - f(x) - C_x (t - x) - f(|t - x|); nonnegative for superquadratic f.
inline double scalar_superquadratic_deficit(const ScalarFunctionSpec& f, double x, double t) {
  const double fx = f(x);
  const double ft = f(t);
  const double c = f.slope_at(x);
  return ft - fx - c * (t - x) - f(std::abs(t - x));
}

inline void require_unit_interval(double alpha, std::string_view what) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw DomainViolation(std::string(what) + ": alpha must lie in [0, 1]", {alpha});
  }
}

/// alpha [f(A) - f((1-alpha)|A-B|)] + (1-alpha) [f(B) - f(alpha|A-B|)]
///   - f(alpha A + (1-alpha) B)
inline DeficitReport operator_superquadratic_deficit(const ScalarFunctionSpec& f,
                                                     const HermitianMatrix& a,
                                                     const HermitianMatrix& b, double alpha,
                                                     double tol = kDefaultTolerance,
                                                     InstanceDigest digest = {}) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator_superquadratic_deficit: A, B differ");
  require_unit_interval(alpha, "operator_superquadratic_deficit");
  const double beta = 1.0 - alpha;
  const HermitianMatrix gap = operator_abs(a - b);
  const ComplexMatrix d = alpha * (apply_function(f, a).matrix() -
                                   apply_function(f, beta * gap).matrix()) +
                          beta * (apply_function(f, b).matrix() -
                                  apply_function(f, alpha * gap).matrix()) -
                          apply_function(f, alpha * a + beta * b).matrix();
  return make_deficit_report("superquadratic", HermitianMatrix(d), tol, std::move(digest));
}

/// alpha f(A) + (1-alpha) f(B) - f(alpha A + (1-alpha) B)
inline DeficitReport operator_convex_deficit(const ScalarFunctionSpec& f, const HermitianMatrix& a,
                                             const HermitianMatrix& b, double alpha,
                                             double tol = kDefaultTolerance,
                                             InstanceDigest digest = {}) {
  if (a.dim() != b.dim()) throw DimensionMismatch("operator_convex_deficit: A, B differ");
  require_unit_interval(alpha, "operator_convex_deficit");
  const double beta = 1.0 - alpha;
  const ComplexMatrix d = alpha * apply_function(f, a).matrix() +
                          beta * apply_function(f, b).matrix() -
                          apply_function(f, alpha * a + beta * b).matrix();
  return make_deficit_report("convex:superquadratic", HermitianMatrix(d), tol, std::move(digest));
}

// ---------------------------------------------------------------------------
// Randomized classification
// ---------------------------------------------------------------------------

struct PairInstance {
  HermitianMatrix a;
  HermitianMatrix b;
  double alpha = 0.5;
  std::string label;
};

/// 0, 0.1, ..., 0.9, 1 (so the midpoint 1/2 is included).
inline std::vector<double> default_alpha_grid() {
  std::vector<double> g;
  for (int i = 0; i <= 10; ++i) g.push_back(i / 10.0);
  return g;
}

struct ClassifyConfig {
  Index min_dim = 1;
  Index max_dim = 6;
  int trials = 2000;
  std::vector<double> alpha_grid = default_alpha_grid();
  std::optional<Interval> spectrum;  // defaults to the function's sampling range
  std::uint64_t seed = 7;
  double tol = kDefaultTolerance;
  int threads = 1;
  int max_redraws = 64;
  /// Evaluated verbatim as trials 0..k-1.
  std::vector<PairInstance> injected;
};

struct TrialRecord {
  int index = 0;
  InstanceDigest digest;
  Relation verdict = Relation::Zero;
  double lambda_min = 0.0;
  double lambda_max = 0.0;
};

enum class ClassVerdict {
  SupportedSuperquadratic,
  SupportedSubquadratic,
  SupportedQuadratic,
  Refuted,
  Inconclusive
};

inline std::string_view to_string(ClassVerdict v) {
  switch (v) {
    case ClassVerdict::SupportedSuperquadratic: return "SupportedSuperquadratic";
    case ClassVerdict::SupportedSubquadratic: return "SupportedSubquadratic";
    case ClassVerdict::SupportedQuadratic: return "SupportedQuadratic";
    case ClassVerdict::Refuted: return "Refuted";
    case ClassVerdict::Inconclusive: return "Inconclusive";
  }
  return "?";
}

struct ClassificationResult {
  ClassVerdict verdict = ClassVerdict::Inconclusive;
  int trials_run = 0;
  int rejected_draws = 0;
  double worst_min_eigenvalue = 0.0;
  double worst_max_eigenvalue = 0.0;
  /// Set iff verdict == Refuted: the worst deficit against the claimed direction.
  std::optional<DeficitReport> witness;
  /// Lowest-index refuting trial (an injected fixture when one refutes).
  std::optional<DeficitReport> first_witness;
  /// Most negative lambda_min among deficits that are not >= 0.
  std::optional<DeficitReport> superquadratic_witness;
  /// Most positive lambda_max among deficits that are not <= 0.
  std::optional<DeficitReport> subquadratic_witness;
  std::vector<TrialRecord> records;

  bool supports_superquadratic() const {
    return verdict == ClassVerdict::SupportedSuperquadratic ||
           verdict == ClassVerdict::SupportedQuadratic;
  }
  bool supports_subquadratic() const {
    return verdict == ClassVerdict::SupportedSubquadratic ||
           verdict == ClassVerdict::SupportedQuadratic;
  }
};

/// Whether an observed verdict agrees with a claimed class. Equality in every
/// trial (SupportedQuadratic) is compatible with both one-sided claims.
inline bool consistent_with(ClassVerdict v, OperatorClass claim) {
  switch (claim) {
    case OperatorClass::OperatorSuperquadratic:
      return v == ClassVerdict::SupportedSuperquadratic || v == ClassVerdict::SupportedQuadratic;
    case OperatorClass::OperatorSubquadratic:
      return v == ClassVerdict::SupportedSubquadratic || v == ClassVerdict::SupportedQuadratic;
    case OperatorClass::OperatorQuadratic: return v == ClassVerdict::SupportedQuadratic;
    case OperatorClass::Neither: return v == ClassVerdict::Refuted;
    case OperatorClass::Unknown: return v != ClassVerdict::Inconclusive;
  }
  return false;
}

inline Json pair_fixture_params(const PairInstance& p) {
  return Json{{"fixture", p.label},
              {"a", matrix_to_json(p.a)},
              {"b", matrix_to_json(p.b)},
              {"alpha", p.alpha}};
}

/// Rebuilds the (A, B, alpha) triple named by a classification digest.
inline PairInstance regenerate_pair(const InstanceDigest& d) {
  const Json& p = d.params;
  if (p.contains("fixture")) {
    return {hermitian_from_json(p.at("a")), hermitian_from_json(p.at("b")),
            p.at("alpha").get<double>(), p.at("fixture").get<std::string>()};
  }
  const auto dim = p.at("dim").get<Index>();
  const double lo = p.at("lo").get<double>();
  const double hi = p.at("hi").get<double>();
  return {random_psd(dim, lo, hi, derive_seed(d.seed, 1)),
          random_psd(dim, lo, hi, derive_seed(d.seed, 2)), p.at("alpha").get<double>(), ""};
}

namespace detail {

struct TrialOutcome {
  bool ran = false;
  int rejected = 0;
  std::optional<DeficitReport> report;
};

inline InstanceDigest draw_pair_digest(const ClassifyConfig& cfg, const Interval& range,
                                       int trial, int attempt) {
  const std::uint64_t s = derive_seed(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)),
                                      static_cast<std::uint64_t>(attempt));
  Rng rng(s);
  std::uniform_int_distribution<Index> dim_dist(cfg.min_dim, cfg.max_dim);
  const Index dim = dim_dist(rng);
  double alpha = 0.5;
  if (attempt == 0 && trial % 2 == 0 && !cfg.alpha_grid.empty()) {
    alpha = cfg.alpha_grid[static_cast<std::size_t>(trial / 2) % cfg.alpha_grid.size()];
  } else {
    alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  }
  return {s, Json{{"trial", trial},
                  {"attempt", attempt},
                  {"dim", dim},
                  {"alpha", alpha},
                  {"lo", range.lower},
                  {"hi", range.upper}}};
}

}  // namespace detail

/// Randomized campaign over alpha-mixture instances of the operator
/// superquadratic inequality. Draws whose derived spectra leave the domain
/// are redrawn (up to cfg.max_redraws times) and counted as rejected.
inline ClassificationResult classify_operator(const ScalarFunctionSpec& f,
                                              const ClassifyConfig& cfg) {
  if (cfg.min_dim < 1 || cfg.max_dim < cfg.min_dim) {
    throw DimensionMismatch("classify_operator: invalid dimension range");
  }
  const Interval range = cfg.spectrum.value_or(f.sampling);
  const int injected = static_cast<int>(cfg.injected.size());
  const int total = injected + std::max(0, cfg.trials - injected);
  std::vector<detail::TrialOutcome> outcomes(static_cast<std::size_t>(total));

  detail::parallel_for(outcomes.size(), cfg.threads, [&](std::size_t slot) {
    const int i = static_cast<int>(slot);
    auto& out = outcomes[slot];
    if (i < injected) {
      const PairInstance& p = cfg.injected[slot];
      out.report = operator_superquadratic_deficit(f, p.a, p.b, p.alpha, cfg.tol,
                                                   {0, pair_fixture_params(p)});
      out.ran = true;
      return;
    }
    for (int attempt = 0; attempt <= cfg.max_redraws; ++attempt) {
      InstanceDigest digest = detail::draw_pair_digest(cfg, range, i, attempt);
      const PairInstance p = regenerate_pair(digest);
      try {
        out.report = operator_superquadratic_deficit(f, p.a, p.b, p.alpha, cfg.tol,
                                                     std::move(digest));
        out.ran = true;
        return;
      } catch (const DomainViolation&) {
        ++out.rejected;
      }
    }
  });

  ClassificationResult result;
  bool all_nonneg = true;
  bool all_nonpos = true;
  bool all_zero = true;
  result.worst_min_eigenvalue = kInf;
  result.worst_max_eigenvalue = -kInf;
  for (std::size_t slot = 0; slot < outcomes.size(); ++slot) {
    auto& out = outcomes[slot];
    result.rejected_draws += out.rejected;
    if (!out.ran) continue;
    const DeficitReport& r = *out.report;
    ++result.trials_run;
    result.records.push_back({static_cast<int>(slot), r.digest, r.verdict.relation,
                              r.verdict.lambda_min, r.verdict.lambda_max});
    result.worst_min_eigenvalue = std::min(result.worst_min_eigenvalue, r.verdict.lambda_min);
    result.worst_max_eigenvalue = std::max(result.worst_max_eigenvalue, r.verdict.lambda_max);
    all_zero = all_zero && r.verdict.relation == Relation::Zero;
    if (!r.verdict.nonnegative()) {
      all_nonneg = false;
      if (!result.superquadratic_witness ||
          r.verdict.lambda_min < result.superquadratic_witness->verdict.lambda_min) {
        result.superquadratic_witness = r;
      }
    }
    if (!r.verdict.nonpositive()) {
      all_nonpos = false;
      if (!result.subquadratic_witness ||
          r.verdict.lambda_max > result.subquadratic_witness->verdict.lambda_max) {
        result.subquadratic_witness = r;
      }
    }
  }

  if (result.trials_run == 0) {
    result.verdict = ClassVerdict::Inconclusive;
    result.worst_min_eigenvalue = result.worst_max_eigenvalue = 0.0;
    return result;
  }
  if (all_zero) {
    result.verdict = ClassVerdict::SupportedQuadratic;
  } else if (all_nonneg) {
    result.verdict = ClassVerdict::SupportedSuperquadratic;
  } else if (all_nonpos) {
    result.verdict = ClassVerdict::SupportedSubquadratic;
  } else {
    result.verdict = ClassVerdict::Refuted;
    result.witness = f.claimed_class == OperatorClass::OperatorSubquadratic
                         ? result.subquadratic_witness
                         : result.superquadratic_witness;
    const bool against_sub = f.claimed_class == OperatorClass::OperatorSubquadratic;
    for (const auto& out : outcomes) {
      if (!out.ran) continue;
      const auto& v = out.report->verdict;
      if (against_sub ? !v.nonpositive() : !v.nonnegative()) {
        result.first_witness = out.report;
        break;
      }
    }
  }
  return result;
}

// ---------------------------------------------------------------------------
// Implications between superquadratic, convex, concave and sign conditions
// ---------------------------------------------------------------------------

struct ImplicationCheck {
  std::string name;
  bool applicable = false;
  bool passed = true;
  std::string detail;
  std::optional<DeficitReport> witness;
};

struct PropositionReport {
  ClassificationResult classification;
  bool nonnegative_on_grid = false;
  bool nonpositive_on_grid = false;
  std::optional<double> value_at_zero;
  bool convex_supported = false;
  bool concave_supported = false;
  int convexity_trials = 0;
  std::optional<DeficitReport> convexity_witness;
  std::vector<ImplicationCheck> checks;

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ImplicationCheck& c) { return !c.applicable || c.passed; });
  }
};

/// Evaluates, on randomized evidence, the implications
///   superquadratic => f(0) <= 0; superquadratic and f >= 0 => operator
///     convex and f(0) = 0,
///   operator convex and f <= 0 => superquadratic,
///   operator concave and f >= 0 => subquadratic.
inline PropositionReport check_propositions(const ScalarFunctionSpec& f,
                                            const ClassifyConfig& cfg) {
  PropositionReport rep;
  rep.classification = classify_operator(f, cfg);
  const double tol = cfg.tol;

  const Interval range = cfg.spectrum.value_or(f.sampling);
  constexpr int kGrid = 1000;
  rep.nonnegative_on_grid = true;
  rep.nonpositive_on_grid = true;
  for (int i = 0; i < kGrid; ++i) {
    const double t = range.lower + (range.upper - range.lower) * i / (kGrid - 1);
    if (!f.domain.admits(t, f.domain_margin)) continue;
    const double v = f(t);
    rep.nonnegative_on_grid = rep.nonnegative_on_grid && v >= -tol;
    rep.nonpositive_on_grid = rep.nonpositive_on_grid && v <= tol;
  }
  if (f.domain.admits(0.0, f.domain_margin)) rep.value_at_zero = f(0.0);

  // Convexity is probed on the same accepted instances.
  bool convex = true;
  bool concave = true;
  for (const TrialRecord& rec : rep.classification.records) {
    const PairInstance p = regenerate_pair(rec.digest);
    const DeficitReport r = operator_convex_deficit(f, p.a, p.b, p.alpha, tol, rec.digest);
    ++rep.convexity_trials;
    if (!r.verdict.nonnegative()) {
      convex = false;
      if (!rep.convexity_witness || r.verdict.lambda_min < rep.convexity_witness->verdict.lambda_min) {
        rep.convexity_witness = r;
      }
    }
    concave = concave && r.verdict.nonpositive();
  }
  rep.convex_supported = rep.convexity_trials > 0 && convex;
  rep.concave_supported = rep.convexity_trials > 0 && concave;

  const auto& cls = rep.classification;
  const bool super = cls.supports_superquadratic();
  const bool sub = cls.supports_subquadratic();

  ImplicationCheck p1a;
  p1a.name = "superquadratic => f(0) <= 0";
  p1a.applicable = super && rep.value_at_zero.has_value();
  if (p1a.applicable) {
    p1a.passed = *rep.value_at_zero <= tol;
    p1a.detail = "f(0) = " + format_double(*rep.value_at_zero);
  }
  rep.checks.push_back(std::move(p1a));

  ImplicationCheck p1b;
  p1b.name = "superquadratic and f >= 0 => operator convex and f(0) = 0";
  p1b.applicable = super && rep.nonnegative_on_grid;
  if (p1b.applicable) {
    const bool zero_ok = !rep.value_at_zero || std::abs(*rep.value_at_zero) <= tol;
    p1b.passed = rep.convex_supported && zero_ok;
    p1b.detail = std::string("convex deficits ") + (rep.convex_supported ? "all >= 0" : "violated");
    p1b.witness = rep.convexity_witness;
  }
  rep.checks.push_back(std::move(p1b));

  ImplicationCheck p2;
  p2.name = "operator convex and f <= 0 => superquadratic";
  p2.applicable = rep.convex_supported && rep.nonpositive_on_grid;
  if (p2.applicable) {
    p2.passed = super;
    p2.detail = std::string("classification ") + std::string(to_string(cls.verdict));
    p2.witness = cls.superquadratic_witness;
  }
  rep.checks.push_back(std::move(p2));

  ImplicationCheck p3;
  p3.name = "operator concave and f >= 0 => subquadratic";
  p3.applicable = rep.concave_supported && rep.nonnegative_on_grid;
  if (p3.applicable) {
    p3.passed = sub;
    p3.detail = std::string("classification ") + std::string(to_string(cls.verdict));
    p3.witness = cls.subquadratic_witness;
  }
  rep.checks.push_back(std::move(p3));
  return rep;
}

}  // namespace opsq

#endif  // OPSQ_FUNCLASS_HPP
