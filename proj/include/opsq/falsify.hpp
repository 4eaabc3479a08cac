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

// Counterexample search: random restarts followed by derivative-free hill
// climbing on factors G_k of the operands, A_k = lo I + s G_k* G_k, which
// stays inside the PSD cone and the sampling range without projection.

#ifndef OPSQ_FALSIFY_HPP
#define OPSQ_FALSIFY_HPP

#include <optional>
#include <string>
#include <vector>

#include "opsq/funclass.hpp"
#include "opsq/instances.hpp"
#include "opsq/jensen.hpp"
#include "opsq/parallel.hpp"

namespace opsq {

/// Which claim the search tries to break: deficit >= 0 (superquadratic
/// direction, objective -lambda_min) or deficit <= 0 (subquadratic
/// direction, objective lambda_max).
enum class Direction { Superquadratic, Subquadratic };

enum class AlphaStrategy { Grid, Uniform };

inline std::string_view to_string(Direction d) {
  return d == Direction::Superquadratic ? "superquadratic" : "subquadratic";
}

inline Direction direction_from_string(std::string_view s) {
  if (s == "superquadratic") return Direction::Superquadratic;
  if (s == "subquadratic") return Direction::Subquadratic;
  throw ParseError("unknown direction '" + std::string(s) + "'");
}

struct SearchConfig {
  std::vector<Index> dims = {2, 3};
  int restarts = 200;
  int steps_per_restart = 20;
  double step_scale = 0.25;
  AlphaStrategy alpha_strategy = AlphaStrategy::Uniform;
  std::uint64_t seed = 7;
  double objective_tol = kDefaultTolerance;
  Direction direction = Direction::Superquadratic;
  int threads = 1;
  bool inject_fixtures = true;

  void validate() const {
    if (restarts < 1) throw Error("search: restarts must be >= 1");
    if (steps_per_restart < 0) throw Error("search: steps_per_restart must be >= 0");
    if (!(step_scale > 0.0)) throw Error("search: step_scale must be > 0");
    if (dims.empty()) throw Error("search: dims must not be empty");
    for (Index d : dims) {
      if (d < 1) throw Error("search: dims must be positive");
    }
  }
};

struct Witness {
  Instance instance;
  DeficitReport report;
  double objective = 0.0;
  int restart = 0;
  Direction direction = Direction::Superquadratic;
  bool from_fixture = false;
  double tol = kDefaultTolerance;  // base tolerance of the verdict
};

struct SearchResult {
  /// Best candidate that is a genuine counterexample at objective_tol.
  std::optional<Witness> witness;
  /// The injected reference fixture, when one applied.
  std::optional<Witness> fixture;
  double best_objective = -kInf;
  int restarts_run = 0;
  int rejected_steps = 0;
  /// Final state of each restart, indexed by restart.
  std::vector<TrialRecord> records;
};

// ---------------------------------------------------------------------------
// Reference fixtures
// ---------------------------------------------------------------------------

/// A = [[2,1],[1,1]], B = diag(1,0), alpha = 1/2 (t^3 is neither operator
/// superquadratic nor operator subquadratic).
inline PairInstance cube_fixture() {
  return {HermitianMatrix::real({{2, 1}, {1, 1}}), HermitianMatrix::diagonal({1, 0}), 0.5, "cube-pair"};
}

/// A = diag(3,1), B = diag(1,2), alpha = 1/2 (t^-1 is not operator
/// superquadratic although nonnegative and operator convex).
inline PairInstance recip_fixture() {
  return {HermitianMatrix::diagonal({3, 1}), HermitianMatrix::diagonal({1, 2}), 0.5, "recip-pair"};
}

inline std::vector<PairInstance> fixtures_for(const ScalarFunctionSpec& f) {
  if (f.name == "cube") return {cube_fixture()};
  if (f.name == "recip") return {recip_fixture()};
  return {};
}

// ---------------------------------------------------------------------------
// Search
// ---------------------------------------------------------------------------

namespace detail {

inline double objective_of(const DeficitReport& r, Direction dir) {
  return dir == Direction::Superquadratic ? -r.verdict.lambda_min : r.verdict.lambda_max;
}

/// True when the report breaks the claim in `dir` at its own tolerance.
inline bool refutes(const DeficitReport& r, Direction dir) {
  return dir == Direction::Superquadratic ? !r.verdict.nonnegative() : !r.verdict.nonpositive();
}

inline HermitianMatrix from_factor(const ComplexMatrix& g, const Interval& range) {
  const HermitianMatrix p(g.adjoint() * g);
  const Index n = p.dim();
  const double width = range.upper - range.lower;
  const double top = eigenvalues(p)(n - 1);
  const double s = (std::isfinite(width) && top > width) ? width / top : 1.0;
  return range.lower * HermitianMatrix::identity(n) + s * p;
}

inline ComplexMatrix to_factor(const HermitianMatrix& a, const Interval& range) {
  const HermitianMatrix shifted = a - range.lower * HermitianMatrix::identity(a.dim());
  return spectral_apply(shifted, [](double x) { return std::sqrt(std::max(x, 0.0)); },
                        Interval::real_line(), 0.0, "sqrt")
      .matrix();
}

inline Instance fixture_instance(const PairInstance& p, const InequalitySpec& ineq) {
  Instance inst;
  inst.ineq = ineq;
  inst.as = {p.a, p.b};
  if (ineq.id == InequalityId::Weighted) {
    inst.weights = {p.alpha, 1.0 - p.alpha};
  } else {
    inst.alpha = p.alpha;
  }
  return inst;
}

inline InstanceDigest witness_digest(const Instance& inst, std::uint64_t seed, int restart) {
  return {seed, Json{{"instance", to_json(inst)}, {"restart", restart}}};
}

struct RestartOutcome {
  std::optional<Witness> best;
  int rejected = 0;
};

inline RestartOutcome run_restart(const ScalarFunctionSpec& f, const InequalitySpec& ineq,
                                  const SearchConfig& cfg, int r,
                                  const std::optional<PairInstance>& fixture) {
  RestartOutcome out;
  const std::uint64_t seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(r));
  const Interval& range = f.sampling;
  Rng rng(derive_seed(seed, 0xF00D));

  Instance inst;
  std::optional<DeficitReport> current;
  const bool fixed = fixture.has_value();
  if (fixed) {
    inst = fixture_instance(*fixture, ineq);
    current = inst.evaluate(f, cfg.objective_tol);
  } else {
    const Index dim = cfg.dims[static_cast<std::size_t>(r) % cfg.dims.size()];
    for (int attempt = 0; attempt < 16 && !current; ++attempt) {
      inst = random_instance(ineq, dim, range, derive_seed(seed, static_cast<std::uint64_t>(attempt)));
      if (cfg.alpha_strategy == AlphaStrategy::Grid) {
        const auto grid = default_alpha_grid();
        inst.alpha = grid[static_cast<std::size_t>(r) % grid.size()];
      }
      try {
        current = inst.evaluate(f, cfg.objective_tol);
      } catch (const DomainViolation&) {
        ++out.rejected;
      }
    }
    if (!current) return out;
  }
  double best = objective_of(*current, cfg.direction);

  if (!fixed && cfg.steps_per_restart > 0) {
    std::vector<ComplexMatrix> factors;
    for (const auto& a : inst.as) factors.push_back(to_factor(a, range));
    std::normal_distribution<double> normal(0.0, cfg.step_scale * std::sqrt(0.5));
    for (int step = 0; step < cfg.steps_per_restart; ++step) {
      const std::size_t k = pick(rng, factors.size());
      const Index n = factors[k].rows();
      const Index i = static_cast<Index>(pick(rng, static_cast<std::size_t>(n)));
      const Index j = static_cast<Index>(pick(rng, static_cast<std::size_t>(n)));
      const double re = normal(rng);
      const double im = normal(rng);
      ComplexMatrix g = factors[k];
      g(i, j) += Complex(re, im);
      Instance trial = inst;
      trial.as[k] = from_factor(g, range);
      try {
        DeficitReport rep = trial.evaluate(f, cfg.objective_tol);
        const double obj = objective_of(rep, cfg.direction);
        if (obj > best) {
          best = obj;
          factors[k] = std::move(g);
          inst = std::move(trial);
          current = std::move(rep);
        }
      } catch (const DomainViolation&) {
        ++out.rejected;
      }
    }
  }
  current->digest = witness_digest(inst, seed, r);
  out.best = Witness{inst, *current, best, r, cfg.direction, fixed, cfg.objective_tol};
  return out;
}

}  // namespace detail

/// Runs every restart and keeps the largest objective (ties go to the lowest
/// restart index). Restart 0 is the reference fixture, left unperturbed, when
/// one exists for f and the inequality is the two-operator or weighted form.
inline SearchResult search(const ScalarFunctionSpec& f, const InequalitySpec& ineq,
                           const SearchConfig& cfg) {
  cfg.validate();
  require_supported(f, ineq);
  std::optional<PairInstance> fixture;
  if (cfg.inject_fixtures && ineq.mode == Mode::Superquadratic &&
      (ineq.id == InequalityId::Superquadratic || ineq.id == InequalityId::Weighted)) {
    const auto fx = fixtures_for(f);
    if (!fx.empty()) fixture = fx.front();
  }

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(cfg.restarts));
  detail::parallel_for(outcomes.size(), cfg.threads, [&](std::size_t r) {
    const int ri = static_cast<int>(r);
    outcomes[r] = detail::run_restart(f, ineq, cfg, ri, ri == 0 ? fixture : std::nullopt);
  });

  SearchResult result;
  for (auto& o : outcomes) {
    result.rejected_steps += o.rejected;
    if (!o.best) continue;
    ++result.restarts_run;
    Witness& w = *o.best;
    result.records.push_back({w.restart, w.report.digest, w.report.verdict.relation,
                              w.report.verdict.lambda_min, w.report.verdict.lambda_max});
    if (w.from_fixture) result.fixture = w;
    result.best_objective = std::max(result.best_objective, w.objective);
    if (w.objective > cfg.objective_tol && detail::refutes(w.report, cfg.direction) &&
        (!result.witness || w.objective > result.witness->objective)) {
      result.witness = w;
    }
  }
  return result;
}

inline std::optional<Witness> falsify(const ScalarFunctionSpec& f, const InequalitySpec& ineq,
                                      const SearchConfig& cfg) {
  return search(f, ineq, cfg).witness;
}

/// Re-evaluates a witness from its digest alone and checks the deficit
/// matches to `tol` (relative to max(1, ||D||)) with the same verdict.
inline bool verify_witness(const ScalarFunctionSpec& f, const Witness& w, double tol = 1e-12) {
  const Instance inst = regenerate_instance(w.report.digest);
  const DeficitReport again = inst.evaluate(f, w.tol);
  const double scale = std::max(1.0, spectral_norm(w.report.deficit));
  if (again.deficit.dim() != w.report.deficit.dim()) return false;
  const double err = (again.deficit.matrix() - w.report.deficit.matrix()).cwiseAbs().maxCoeff();
  return err <= tol * scale && again.verdict.relation == w.report.verdict.relation;
}

inline Json to_json(const Witness& w) {
  return Json{{"objective", w.objective},
              {"restart", w.restart},
              {"direction", to_string(w.direction)},
              {"from_fixture", w.from_fixture},
              {"tol", w.tol},
              {"instance", to_json(w.instance)},
              {"report", to_json(w.report)}};
}

// ---------------------------------------------------------------------------
// Reference examples
// ---------------------------------------------------------------------------

struct FixtureResult {
  std::string name;
  bool passed = false;
  std::string detail;
  std::optional<DeficitReport> report;
  double max_error = 0.0;
};

struct ReproductionReport {
  std::vector<FixtureResult> fixtures;
  bool all_passed() const {
    return std::all_of(fixtures.begin(), fixtures.end(), [](const FixtureResult& r) { return r.passed; });
  }
};

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

/// (i) t^3 on the cube pair: deficit (right minus left) = (1/4)[[9,7],[7,5]],
///     Indefinite;
/// (ii) t^-1 on the recip pair: deficit = (1/12) diag(-10, -23), Negative
///     semidefinite. The remainder term is f(|A-B|/2) = diag(1, 2);
/// (iii) t^2 satisfies the inequality on both pairs.
inline ReproductionReport reproduce_reference_examples() {
  ReproductionReport rep;
  const double tol = kDefaultTolerance;
  {
    FixtureResult r;
    r.name = "cube-pair";
    const PairInstance p = cube_fixture();
    const DeficitReport d = operator_superquadratic_deficit(cube_function(), p.a, p.b, p.alpha, tol,
                                                            {0, pair_fixture_params(p)});
    const ComplexMatrix expected = 0.25 * HermitianMatrix::real({{9, 7}, {7, 5}}).matrix();
    r.max_error = max_abs_diff(d.deficit.matrix(), expected);
    r.passed = r.max_error <= 1e-12 && d.verdict.relation == Relation::Indefinite;
    r.detail = "deficit vs (1/4)[[9,7],[7,5]]: max error " + format_double(r.max_error) + ", verdict " +
               std::string(to_string(d.verdict.relation));
    r.report = d;
    rep.fixtures.push_back(std::move(r));
  }
  {
    FixtureResult r;
    r.name = "recip-pair";
    const PairInstance p = recip_fixture();
    const DeficitReport d = operator_superquadratic_deficit(reciprocal_function(), p.a, p.b, p.alpha, tol,
                                                            {0, pair_fixture_params(p)});
    const ComplexMatrix expected = HermitianMatrix::diagonal({-10.0 / 12.0, -23.0 / 12.0}).matrix();
    r.max_error = max_abs_diff(d.deficit.matrix(), expected);
    r.passed = r.max_error <= 1e-12 && d.verdict.relation == Relation::NegativeSemidefinite;
    r.detail = "deficit vs (1/12)diag(-10,-23): max error " + format_double(r.max_error) + ", verdict " +
               std::string(to_string(d.verdict.relation));
    r.report = d;
    rep.fixtures.push_back(std::move(r));
  }
  {
    FixtureResult r;
    r.name = "square-on-reference-pairs";
    r.passed = true;
    for (const PairInstance& p : {cube_fixture(), recip_fixture()}) {
      const DeficitReport d = operator_superquadratic_deficit(square_function(), p.a, p.b, p.alpha, tol,
                                                              {0, pair_fixture_params(p)});
      r.passed = r.passed && d.verdict.nonnegative();
      r.detail += p.label + ": " + std::string(to_string(d.verdict.relation)) + "; ";
      r.max_error = std::max(r.max_error, std::max(0.0, -d.verdict.lambda_min));
      r.report = d;
    }
    rep.fixtures.push_back(std::move(r));
  }
  return rep;
}

/// Throws RegressionFailure naming the first failing fixture.
inline ReproductionReport reproduce_reference_examples_or_throw() {
  ReproductionReport rep = reproduce_reference_examples();
  for (const auto& r : rep.fixtures) {
    if (!r.passed) throw RegressionFailure("reference fixture '" + r.name + "' failed: " + r.detail);
  }
  return rep;
}

}  // namespace opsq

#endif  // OPSQ_FALSIFY_HPP
