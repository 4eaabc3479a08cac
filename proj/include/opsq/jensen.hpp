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

// Jensen-type operator inequalities with a superquadratic remainder, each
// computed as a deficit (right side minus left side). In convex mode the
// remainder term is dropped.

#ifndef OPSQ_JENSEN_HPP
#define OPSQ_JENSEN_HPP

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "opsq/error.hpp"
#include "opsq/funclass.hpp"
#include "opsq/io.hpp"
#include "opsq/linalg.hpp"
#include "opsq/maps.hpp"

namespace opsq {

enum class InequalityId {
  Superquadratic,  // the two-operator defining inequality
  Weighted,
  Contraction,
  Projection,
  Isometry,
  Map,
  MultiMap,
  VectorState,
  Kadison,
};

enum class Mode { Superquadratic, Convex };

inline std::string_view to_string(InequalityId id) {
  switch (id) {
    case InequalityId::Superquadratic: return "superquadratic";
    case InequalityId::Weighted: return "weighted";
    case InequalityId::Contraction: return "contraction";
    case InequalityId::Projection: return "projection";
    case InequalityId::Isometry: return "isometry";
    case InequalityId::Map: return "map";
    case InequalityId::MultiMap: return "multimap";
    case InequalityId::VectorState: return "vector-state";
    case InequalityId::Kadison: return "kadison";
  }
  return "?";
}

inline const std::vector<InequalityId>& all_inequality_ids() {
  static const std::vector<InequalityId> ids = {
      InequalityId::Superquadratic, InequalityId::Weighted,    InequalityId::Contraction,
      InequalityId::Projection,     InequalityId::Isometry,    InequalityId::Map,
      InequalityId::MultiMap,       InequalityId::VectorState, InequalityId::Kadison};
  return ids;
}

struct InequalitySpec {
  InequalityId id = InequalityId::Superquadratic;
  Mode mode = Mode::Superquadratic;

  std::string to_string() const {
    return (mode == Mode::Convex ? "convex:" : "") + std::string(opsq::to_string(id));
  }
  friend bool operator==(const InequalitySpec&, const InequalitySpec&) = default;
};

/// Parses "<id>" or "convex:<id>".
inline InequalitySpec parse_inequality(std::string_view text) {
  InequalitySpec spec;
  if (text.starts_with("convex:")) {
    spec.mode = Mode::Convex;
    text.remove_prefix(7);
  }
  for (InequalityId id : all_inequality_ids()) {
    if (text == to_string(id)) {
      spec.id = id;
      if (spec.mode == Mode::Convex && id == InequalityId::Kadison) {
        throw ParseError("kadison has no convex form; use convex:map");
      }
      return spec;
    }
  }
  throw ParseError("unknown inequality id '" + std::string(text) +
                   "' (expected superquadratic, weighted, contraction, projection, isometry, "
                   "map, multimap, vector-state, kadison, or convex:<id>)");
}

/// Whether the remainder term is evaluated at a generically singular
/// argument, which a function undefined at 0 cannot accept.
inline bool has_singular_remainder(const InequalitySpec& s) {
  if (s.mode == Mode::Convex) return false;
  return s.id != InequalityId::Superquadratic && s.id != InequalityId::Weighted;
}

inline void require_supported(const ScalarFunctionSpec& f, const InequalitySpec& s) {
  if (has_singular_remainder(s) && !f.domain.admits(0.0, f.domain_margin)) {
    throw UnsupportedCombination(f.name + " is undefined at 0, so '" + s.to_string() +
                                 "' (remainder at a singular argument) is not supported");
  }
  if (s.id == InequalityId::Kadison && f.name != "square") {
    throw UnsupportedCombination("'kadison' is specific to f(t) = t^2; use 'map' for " + f.name);
  }
}

namespace detail {

inline std::string ineq_name(InequalityId id, Mode mode) { return InequalitySpec{id, mode}.to_string(); }

inline void require_dims(const std::vector<HermitianMatrix>& as, std::string_view what) {
  if (as.empty()) throw DimensionMismatch(std::string(what) + ": no operators");
  for (const auto& a : as) {
    if (a.dim() != as[0].dim()) throw DimensionMismatch(std::string(what) + ": operators differ in size");
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Deficits
// ---------------------------------------------------------------------------

/// sum w_k f(A_k) - sum w_k f(|A_k - Abar|) - f(Abar), weights normalized.
inline DeficitReport weighted_jensen_deficit(const ScalarFunctionSpec& f,
                                             const std::vector<HermitianMatrix>& as,
                                             const std::vector<double>& weights,
                                             Mode mode = Mode::Superquadratic,
                                             double tol = kDefaultTolerance,
                                             InstanceDigest digest = {}) {
  detail::require_dims(as, "weighted_jensen_deficit");
  if (weights.size() != as.size()) throw DimensionMismatch("weighted_jensen_deficit: one weight per operator");
  double total = 0.0;
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) throw DomainViolation("weighted_jensen_deficit: weights must be positive", {w});
    total += w;
  }
  const Index n = as[0].dim();
  ComplexMatrix mean = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < as.size(); ++k) mean += (weights[k] / total) * as[k].matrix();
  const HermitianMatrix abar(mean);
  ComplexMatrix d = -apply_function(f, abar).matrix();
  for (std::size_t k = 0; k < as.size(); ++k) {
    const double w = weights[k] / total;
    d += w * apply_function(f, as[k]).matrix();
    if (mode == Mode::Superquadratic) d -= w * apply_function(f, operator_abs(as[k] - abar)).matrix();
  }
  return make_deficit_report(detail::ineq_name(InequalityId::Weighted, mode), HermitianMatrix(d), tol,
                             std::move(digest));
}

/// sum C_k* f(A_k) C_k - sum C_k* f(|A_k - S|) C_k - f(S), S = sum C_k* A_k C_k.
inline DeficitReport contraction_jensen_deficit(const ScalarFunctionSpec& f,
                                                const std::vector<HermitianMatrix>& as,
                                                const std::vector<ComplexMatrix>& cs,
                                                Mode mode = Mode::Superquadratic,
                                                double tol = kDefaultTolerance,
                                                InstanceDigest digest = {}) {
  detail::require_dims(as, "contraction_jensen_deficit");
  if (cs.size() != as.size()) throw DimensionMismatch("contraction_jensen_deficit: one C_k per A_k");
  const Index n = as[0].dim();
  for (const auto& c : cs) {
    if (c.rows() != n || c.cols() != n) {
      throw DimensionMismatch("contraction_jensen_deficit: C_k must be square of the operator size");
    }
  }
  if (operator_norm(column_gram(cs) - ComplexMatrix::Identity(n, n)) > kStructureTolerance) {
    throw NotUnital("contraction_jensen_deficit: sum C_k* C_k differs from I");
  }
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < as.size(); ++k) s += cs[k].adjoint() * as[k].matrix() * cs[k];
  const HermitianMatrix sh(s);
  ComplexMatrix d = -apply_function(f, sh).matrix();
  for (std::size_t k = 0; k < as.size(); ++k) {
    d += congruence(cs[k], apply_function(f, as[k])).matrix();
    if (mode == Mode::Superquadratic) {
      d -= congruence(cs[k], apply_function(f, operator_abs(as[k] - sh))).matrix();
    }
  }
  return make_deficit_report(detail::ineq_name(InequalityId::Contraction, mode), HermitianMatrix(d), tol,
                             std::move(digest));
}

/// sum P_k f(A_k) P_k - sum P_k f(|A_k - S|) P_k - f(S), S = sum P_k A_k P_k.
inline DeficitReport projection_jensen_deficit(const ScalarFunctionSpec& f,
                                               const std::vector<HermitianMatrix>& as,
                                               const ProjectionFamily& family,
                                               Mode mode = Mode::Superquadratic,
                                               double tol = kDefaultTolerance,
                                               InstanceDigest digest = {}) {
  detail::require_dims(as, "projection_jensen_deficit");
  family.validate();
  if (family.projections.size() != as.size() || family.dim != as[0].dim()) {
    throw DimensionMismatch("projection_jensen_deficit: one projection per operator, same size");
  }
  const Index n = family.dim;
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < as.size(); ++k) {
    const ComplexMatrix& p = family.projections[k].matrix();
    s += p * as[k].matrix() * p;
  }
  const HermitianMatrix sh(s);
  ComplexMatrix d = -apply_function(f, sh).matrix();
  for (std::size_t k = 0; k < as.size(); ++k) {
    const ComplexMatrix& p = family.projections[k].matrix();
    d += p * apply_function(f, as[k]).matrix() * p;
    if (mode == Mode::Superquadratic) d -= p * apply_function(f, operator_abs(as[k] - sh)).matrix() * p;
  }
  return make_deficit_report(detail::ineq_name(InequalityId::Projection, mode), HermitianMatrix(d), tol,
                             std::move(digest));
}

/// C* f(A) C - C* f(|A - C*AC|) C - f(C*AC) for C*C = I. A - C*AC needs C
/// square, so C is a unitary in finite dimensions.
inline DeficitReport isometry_jensen_deficit(const ScalarFunctionSpec& f, const HermitianMatrix& a,
                                             const ComplexMatrix& c,
                                             Mode mode = Mode::Superquadratic,
                                             double tol = kDefaultTolerance,
                                             InstanceDigest digest = {}) {
  if (c.rows() < c.cols()) throw NotIsometry("isometry_jensen_deficit: C must be tall");
  if (!is_isometry(c)) throw NotIsometry("isometry_jensen_deficit: C*C differs from I");
  if (c.rows() != a.dim()) throw DimensionMismatch("isometry_jensen_deficit: C rows differ from dim A");
  const HermitianMatrix cac = congruence(c, a);
  ComplexMatrix d = congruence(c, apply_function(f, a)).matrix() - apply_function(f, cac).matrix();
  if (mode == Mode::Superquadratic) {
    if (c.rows() != c.cols()) {
      throw DimensionMismatch("isometry_jensen_deficit: |A - C*AC| needs a square C");
    }
    d -= congruence(c, apply_function(f, operator_abs(a - cac))).matrix();
  }
  return make_deficit_report(detail::ineq_name(InequalityId::Isometry, mode), HermitianMatrix(d), tol,
                             std::move(digest));
}

inline void require_endomorphism(const PositiveUnitalMap& phi, std::string_view what) {
  if (phi.input_dim() != phi.output_dim()) {
    throw DimensionMismatch(std::string(what) + ": map must act on a single space (input dim = output dim)");
  }
}

/// Phi(f(A)) - Phi(f(|A - Phi(A)|)) - f(Phi(A)).
inline DeficitReport map_jensen_deficit(const ScalarFunctionSpec& f, const HermitianMatrix& a,
                                        const PositiveUnitalMap& phi,
                                        Mode mode = Mode::Superquadratic,
                                        double tol = kDefaultTolerance,
                                        InstanceDigest digest = {}) {
  require_endomorphism(phi, "map_jensen_deficit");
  const HermitianMatrix pa = phi(a);
  ComplexMatrix d = phi(apply_function(f, a)).matrix() - apply_function(f, pa).matrix();
  if (mode == Mode::Superquadratic) d -= phi(apply_function(f, operator_abs(a - pa))).matrix();
  return make_deficit_report(detail::ineq_name(InequalityId::Map, mode), HermitianMatrix(d), tol,
                             std::move(digest));
}

/// Phi(A^2) - Phi((A - Phi(A))^2) - Phi(A)^2 from plain matrix products, the
/// t^2 case of the map inequality without any spectral calculus.
inline DeficitReport kadison_refinement_deficit(const HermitianMatrix& a, const PositiveUnitalMap& phi,
                                                double tol = kDefaultTolerance,
                                                InstanceDigest digest = {}) {
  require_endomorphism(phi, "kadison_refinement_deficit");
  const ComplexMatrix& am = a.matrix();
  const ComplexMatrix pa = phi(a).matrix();
  const ComplexMatrix gap = am - pa;
  const ComplexMatrix d = phi(HermitianMatrix(am * am)).matrix() -
                          phi(HermitianMatrix(gap * gap)).matrix() - pa * pa;
  return make_deficit_report("kadison", HermitianMatrix(d), tol, std::move(digest));
}

/// Phi_k = w_k * (a unital map); the w_k sum to 1, so sum Phi_k(I) = I.
struct WeightedMap {
  double weight = 1.0;
  PositiveUnitalMap map;
};

inline void require_normalized(const std::vector<WeightedMap>& maps) {
  if (maps.empty()) throw NotNormalized("multimap: no maps");
  double total = 0.0;
  for (const auto& m : maps) {
    if (!(m.weight >= 0.0)) throw NotNormalized("multimap: negative weight");
    total += m.weight;
  }
  if (std::abs(total - 1.0) > kStructureTolerance) {
    throw NotNormalized("multimap: sum Phi_k(I) differs from I (weights sum to " + format_double(total) + ")");
  }
}

/// sum Phi_k(f(A_k)) - sum Phi_k(f(|A_k - S|)) - f(S), S = sum Phi_k(A_k).
inline DeficitReport multi_map_jensen_deficit(const ScalarFunctionSpec& f,
                                              const std::vector<HermitianMatrix>& as,
                                              const std::vector<WeightedMap>& maps,
                                              Mode mode = Mode::Superquadratic,
                                              double tol = kDefaultTolerance,
                                              InstanceDigest digest = {}) {
  detail::require_dims(as, "multi_map_jensen_deficit");
  if (maps.size() != as.size()) throw DimensionMismatch("multi_map_jensen_deficit: one map per operator");
  require_normalized(maps);
  const Index n = as[0].dim();
  for (const auto& m : maps) {
    require_endomorphism(m.map, "multi_map_jensen_deficit");
    if (m.map.input_dim() != n) throw DimensionMismatch("multi_map_jensen_deficit: map size differs");
  }
  ComplexMatrix s = ComplexMatrix::Zero(n, n);
  for (std::size_t k = 0; k < as.size(); ++k) s += maps[k].weight * maps[k].map(as[k]).matrix();
  const HermitianMatrix sh(s);
  ComplexMatrix d = -apply_function(f, sh).matrix();
  for (std::size_t k = 0; k < as.size(); ++k) {
    d += maps[k].weight * maps[k].map(apply_function(f, as[k])).matrix();
    if (mode == Mode::Superquadratic) {
      d -= maps[k].weight * maps[k].map(apply_function(f, operator_abs(as[k] - sh))).matrix();
    }
  }
  return make_deficit_report(detail::ineq_name(InequalityId::MultiMap, mode), HermitianMatrix(d), tol,
                             std::move(digest));
}

/// <Phi(f(A))x,x> - f(m) - <Phi(f(|A - m I|))x,x> with m = <Phi(A)x,x>.
/// Needs only scalar superquadraticity of f.
inline double vector_state_jensen_deficit(const ScalarFunctionSpec& f, const HermitianMatrix& a,
                                          const PositiveUnitalMap& phi, const ComplexVector& x,
                                          Mode mode = Mode::Superquadratic) {
  if (x.size() != phi.output_dim()) throw DimensionMismatch("vector_state_jensen_deficit: x size differs");
  if (std::abs(x.norm() - 1.0) > kStructureTolerance) {
    throw NotUnitVector("vector_state_jensen_deficit: ||x|| differs from 1");
  }
  const auto state = [&](const HermitianMatrix& h) { return x.dot(phi(h).matrix() * x).real(); };
  const double m = state(a);
  double d = state(apply_function(f, a)) - f(m);
  if (mode == Mode::Superquadratic) {
    const HermitianMatrix shifted = a - m * HermitianMatrix::identity(a.dim());
    d -= state(apply_function(f, operator_abs(shifted)));
  }
  return d;
}

// ---------------------------------------------------------------------------
// Block readout: the projection inequality on H (+) H at (C*XC, D*XD) with
// projections (P, Q), compressed to the (1,1) block, is the two-operator
// inequality for (A, B, lambda).
// ---------------------------------------------------------------------------

inline HermitianMatrix dilation_readout(const ScalarFunctionSpec& f, const DilationBlocks& blk,
                                        Mode mode = Mode::Superquadratic) {
  const HermitianMatrix ax(blk.c.adjoint() * blk.x * blk.c);
  const HermitianMatrix bx(blk.d.adjoint() * blk.x * blk.d);
  ProjectionFamily fam{{HermitianMatrix(blk.p), HermitianMatrix(blk.q)}, 2 * blk.block_dim};
  const DeficitReport r = projection_jensen_deficit(f, {ax, bx}, fam, mode);
  return HermitianMatrix(r.deficit.matrix().topLeftCorner(blk.block_dim, blk.block_dim));
}

// ---------------------------------------------------------------------------
// Instances: every operand needed to re-evaluate one inequality
// ---------------------------------------------------------------------------

struct Instance {
  InequalitySpec ineq;
  std::vector<HermitianMatrix> as;
  std::vector<double> weights;            // weighted; multimap map weights
  std::vector<ComplexMatrix> cs;          // contraction blocks; isometry C
  std::optional<ProjectionFamily> family; // projection
  std::vector<PositiveUnitalMap> maps;    // map, kadison, vector-state, multimap
  std::optional<ComplexVector> x;         // vector-state
  double alpha = 0.5;                     // superquadratic

  /// Evaluates the named inequality. Vector-state deficits come back as a
  /// 1 x 1 matrix.
  DeficitReport evaluate(const ScalarFunctionSpec& f, double tol = kDefaultTolerance,
                         InstanceDigest digest = {}) const {
    require_supported(f, ineq);
    const Mode mode = ineq.mode;
    switch (ineq.id) {
      case InequalityId::Superquadratic: {
        if (as.size() != 2) throw DimensionMismatch("superquadratic instance needs A and B");
        DeficitReport r = mode == Mode::Convex
                              ? operator_convex_deficit(f, as[0], as[1], alpha, tol, std::move(digest))
                              : operator_superquadratic_deficit(f, as[0], as[1], alpha, tol, std::move(digest));
        r.inequality_id = ineq.to_string();
        return r;
      }
      case InequalityId::Weighted:
        return weighted_jensen_deficit(f, as, weights, mode, tol, std::move(digest));
      case InequalityId::Contraction:
        return contraction_jensen_deficit(f, as, cs, mode, tol, std::move(digest));
      case InequalityId::Projection:
        if (!family) throw DimensionMismatch("projection instance needs a projection family");
        return projection_jensen_deficit(f, as, *family, mode, tol, std::move(digest));
      case InequalityId::Isometry:
        if (as.size() != 1 || cs.size() != 1) throw DimensionMismatch("isometry instance needs A and C");
        return isometry_jensen_deficit(f, as[0], cs[0], mode, tol, std::move(digest));
      case InequalityId::Map:
        if (as.size() != 1 || maps.size() != 1) throw DimensionMismatch("map instance needs A and Phi");
        return map_jensen_deficit(f, as[0], maps[0], mode, tol, std::move(digest));
      case InequalityId::Kadison:
        if (as.size() != 1 || maps.size() != 1) throw DimensionMismatch("kadison instance needs A and Phi");
        return kadison_refinement_deficit(as[0], maps[0], tol, std::move(digest));
      case InequalityId::MultiMap: {
        if (maps.size() != weights.size()) throw DimensionMismatch("multimap instance: one weight per map");
        std::vector<WeightedMap> wm;
        for (std::size_t k = 0; k < maps.size(); ++k) wm.push_back({weights[k], maps[k]});
        return multi_map_jensen_deficit(f, as, wm, mode, tol, std::move(digest));
      }
      case InequalityId::VectorState: {
        if (as.size() != 1 || maps.size() != 1 || !x) {
          throw DimensionMismatch("vector-state instance needs A, Phi and x");
        }
        const double v = vector_state_jensen_deficit(f, as[0], maps[0], *x, mode);
        return make_deficit_report(ineq.to_string(), HermitianMatrix::diagonal({v}), tol, std::move(digest));
      }
    }
    throw Error("unreachable inequality id");
  }
};

inline Json to_json(const Instance& inst) {
  Json j;
  j["inequality"] = inst.ineq.to_string();
  Json as = Json::array();
  for (const auto& a : inst.as) as.push_back(matrix_to_json(a));
  j["operators"] = as;
  if (!inst.weights.empty()) j["weights"] = inst.weights;
  if (!inst.cs.empty()) {
    Json cs = Json::array();
    for (const auto& c : inst.cs) cs.push_back(matrix_to_json(c));
    j["contractions"] = cs;
  }
  if (inst.family) {
    Json ps = Json::array();
    for (const auto& p : inst.family->projections) ps.push_back(matrix_to_json(p));
    j["projections"] = ps;
  }
  if (!inst.maps.empty()) {
    Json ms = Json::array();
    for (const auto& m : inst.maps) ms.push_back(to_json(m));
    j["maps"] = ms;
  }
  if (inst.x) j["x"] = vector_to_json(*inst.x);
  if (inst.ineq.id == InequalityId::Superquadratic) j["alpha"] = inst.alpha;
  return j;
}

inline Instance instance_from_json(const Json& j) {
  try {
    Instance inst;
    inst.ineq = parse_inequality(j.at("inequality").get<std::string>());
    for (const auto& a : j.at("operators")) inst.as.push_back(hermitian_from_json(a));
    if (j.contains("weights")) inst.weights = j.at("weights").get<std::vector<double>>();
    if (j.contains("contractions")) {
      for (const auto& c : j.at("contractions")) inst.cs.push_back(matrix_from_json(c));
    }
    if (j.contains("projections")) {
      ProjectionFamily fam;
      for (const auto& p : j.at("projections")) fam.projections.push_back(hermitian_from_json(p));
      fam.dim = fam.projections.empty() ? 0 : fam.projections[0].dim();
      inst.family = std::move(fam);
    }
    if (j.contains("maps")) {
      for (const auto& m : j.at("maps")) inst.maps.push_back(map_from_json(m));
    }
    if (j.contains("x")) inst.x = vector_from_json(j.at("x"));
    if (j.contains("alpha")) inst.alpha = j.at("alpha").get<double>();
    return inst;
  } catch (const Json::exception& e) {
    throw ParseError(std::string("instance document: ") + e.what());
  }
}

}  // namespace opsq

#endif  // OPSQ_JENSEN_HPP
