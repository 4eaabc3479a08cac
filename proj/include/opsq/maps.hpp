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

// Positive unital linear maps and the unitary / projection constructions
// built from roots of unity.

#ifndef OPSQ_MAPS_HPP
#define OPSQ_MAPS_HPP

#include <cmath>
#include <numbers>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "opsq/error.hpp"
#include "opsq/io.hpp"
#include "opsq/linalg.hpp"

namespace opsq {

// ---------------------------------------------------------------------------
// Roots-of-unity unitary and pinching
// ---------------------------------------------------------------------------

/// E_n = diag(xi, xi^2, ..., xi^(n-1), 1) with xi = exp(2 pi i / n),
/// optionally tensored with I_block so it acts on n x n block matrices.
inline ComplexMatrix build_En(Index n, Index block_dim = 1) {
  if (n < 1 || block_dim < 1) throw DimensionMismatch("build_En: n and block_dim must be >= 1");
  ComplexVector d(n * block_dim);
  for (Index j = 1; j <= n; ++j) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(j % n) / static_cast<double>(n);
    const Complex z = std::polar(1.0, angle);
    d.segment((j - 1) * block_dim, block_dim).setConstant(z);
  }
  return d.asDiagonal();
}

namespace detail {

/// (1/n) sum_{k=1..n} E^{-k} A E^k with E = E_n (x) I_block.
inline ComplexMatrix roots_of_unity_average(const ComplexMatrix& a, Index n, Index block_dim) {
  const ComplexVector e = build_En(n, block_dim).diagonal();
  ComplexMatrix acc = ComplexMatrix::Zero(a.rows(), a.cols());
  ComplexVector ek = ComplexVector::Ones(e.size());
  for (Index k = 1; k <= n; ++k) {
    ek = ek.cwiseProduct(e);  // E^k
    acc += ek.conjugate().asDiagonal() * a * ek.asDiagonal();
  }
  return acc / static_cast<double>(n);
}

inline ComplexMatrix block_diagonal_part(const ComplexMatrix& a, Index n, Index block_dim) {
  ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
  for (Index k = 0; k < n; ++k) {
    out.block(k * block_dim, k * block_dim, block_dim, block_dim) =
        a.block(k * block_dim, k * block_dim, block_dim, block_dim);
  }
  return out;
}

}  // namespace detail

/// Pinching of an n x n block matrix (blocks of size block_dim) onto its
/// block diagonal, computed as the roots-of-unity average and cross-checked
/// against direct extraction to 1e-12 (relative to the largest entry).
inline ComplexMatrix pinch_blocks(const ComplexMatrix& a, Index block_dim) {
  if (a.rows() != a.cols()) throw DimensionMismatch("pinch: matrix is not square");
  if (block_dim < 1 || a.rows() % block_dim != 0) {
    throw DimensionMismatch("pinch: block size does not divide the dimension");
  }
  const Index n = a.rows() / block_dim;
  const ComplexMatrix averaged = detail::roots_of_unity_average(a, n, block_dim);
  ComplexMatrix direct = detail::block_diagonal_part(a, n, block_dim);
  const double scale = std::max(1.0, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
  if ((averaged - direct).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw RegressionFailure("pinch: roots-of-unity average disagrees with block-diagonal part");
  }
  return direct;
}

inline ComplexMatrix pinch(const ComplexMatrix& a) { return pinch_blocks(a, 1); }

inline HermitianMatrix pinch(const HermitianMatrix& a) { return HermitianMatrix(pinch(a.matrix())); }

// ---------------------------------------------------------------------------
// Projection families
// ---------------------------------------------------------------------------

struct ProjectionFamily {
  std::vector<HermitianMatrix> projections;
  Index dim = 0;

  /// Idempotent, pairwise orthogonal, summing to I; throws NotAResolution.
  void validate(double tol = kStructureTolerance) const {
    if (projections.empty()) throw NotAResolution("projection family is empty");
    ComplexMatrix sum = ComplexMatrix::Zero(dim, dim);
    for (std::size_t j = 0; j < projections.size(); ++j) {
      const ComplexMatrix& p = projections[j].matrix();
      if (p.rows() != dim) throw NotAResolution("projection family: dimension mismatch");
      if (!is_projection(p, tol)) {
        throw NotAResolution("projection family: member " + std::to_string(j) + " is not a projection");
      }
      for (std::size_t k = j + 1; k < projections.size(); ++k) {
        if (operator_norm(p * projections[k].matrix()) > tol) {
          throw NotAResolution("projection family: members " + std::to_string(j) + " and " +
                               std::to_string(k) + " are not orthogonal");
        }
      }
      sum += p;
    }
    if (operator_norm(sum - ComplexMatrix::Identity(dim, dim)) > tol) {
      throw NotAResolution("projection family: members do not sum to the identity");
    }
  }
};

/// P_k = E^{-k} P E^k (k = 1..n) where P has every entry 1/n: n rank-one
/// projections resolving the identity of C^n.
inline ProjectionFamily build_projection_family(Index n) {
  if (n < 1) throw DimensionMismatch("build_projection_family: n must be >= 1");
  const ComplexMatrix p = ComplexMatrix::Constant(n, n, Complex(1.0 / static_cast<double>(n), 0.0));
  const ComplexVector e = build_En(n).diagonal();
  ProjectionFamily fam;
  fam.dim = n;
  ComplexVector ek = ComplexVector::Ones(n);
  for (Index k = 1; k <= n; ++k) {
    ek = ek.cwiseProduct(e);
    fam.projections.emplace_back(ek.conjugate().asDiagonal() * p * ek.asDiagonal());
  }
  fam.validate();
  return fam;
}

/// Coordinate projections onto the groups of a partition of {0, ..., dim-1}.
inline ProjectionFamily basis_partition_family(Index dim, const std::vector<std::vector<Index>>& groups) {
  ProjectionFamily fam;
  fam.dim = dim;
  for (const auto& g : groups) {
    RealVector d = RealVector::Zero(dim);
    for (Index i : g) {
      if (i < 0 || i >= dim) throw NotAResolution("basis_partition_family: index out of range");
      d(i) = 1.0;
    }
    fam.projections.push_back(HermitianMatrix::diagonal(d));
  }
  fam.validate();
  return fam;
}

// ---------------------------------------------------------------------------
// Unitary columns
// ---------------------------------------------------------------------------

namespace detail {

inline ComplexMatrix stack_blocks(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw DimensionMismatch("unitary column: no blocks");
  const Index d = blocks[0].rows();
  ComplexMatrix v(d * static_cast<Index>(blocks.size()), d);
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (blocks[k].rows() != d || blocks[k].cols() != d) {
      throw DimensionMismatch("unitary column: blocks must all be square of the same size");
    }
    v.middleRows(static_cast<Index>(k) * d, d) = blocks[k];
  }
  return v;
}

}  // namespace detail

inline ComplexMatrix column_gram(std::span<const ComplexMatrix> blocks) {
  const ComplexMatrix v = detail::stack_blocks(blocks);
  return v.adjoint() * v;
}

/// Completes a unitary column (C_1, ..., C_n), sum C_k* C_k = I, to an
/// nd x nd unitary whose last block column is exactly the stacked C_k.
/// The complement is an orthonormalized Gaussian draw, redrawn on rank loss.
inline ComplexMatrix complete_column_to_unitary(std::span<const ComplexMatrix> blocks,
                                                std::uint64_t seed = 0x5eedULL) {
  const ComplexMatrix v = detail::stack_blocks(blocks);
  const Index d = v.cols();
  const Index total = v.rows();
  if (operator_norm(v.adjoint() * v - ComplexMatrix::Identity(d, d)) > kStructureTolerance) {
    throw NotUnital("complete_column_to_unitary: sum C_k* C_k differs from I");
  }
  if (total == d) return v;

  Rng rng(seed);
  for (int attempt = 0; attempt < 16; ++attempt) {
    ComplexMatrix w = gaussian_matrix(total, total - d, rng);
    w -= v * (v.adjoint() * w);
    w -= v * (v.adjoint() * w);  // second pass restores orthogonality lost to rounding
    Eigen::HouseholderQR<ComplexMatrix> qr(w);
    const ComplexMatrix& r = qr.matrixQR();
    double smallest = kInf;
    for (Index k = 0; k < total - d; ++k) smallest = std::min(smallest, std::abs(r(k, k)));
    if (smallest <= 1e-8 * std::max(1.0, w.norm())) continue;
    ComplexMatrix u(total, total);
    u.leftCols(total - d) = qr.householderQ() * ComplexMatrix::Identity(total, total - d);
    u.rightCols(d) = v;
    if (is_unitary(u)) return u;
  }
  throw ConvergenceFailure("complete_column_to_unitary: could not complete the column");
}

/// Appends the defect block (I - sum C_k* C_k)^{1/2} so that a contractive
/// column becomes a unitary column with one more block.
inline std::vector<ComplexMatrix> extend_subunital_column(std::span<const ComplexMatrix> blocks) {
  const ComplexMatrix gram = column_gram(blocks);
  const Index d = gram.rows();
  const HermitianMatrix defect(ComplexMatrix::Identity(d, d) - gram);
  if (eigenvalues(defect)(0) < -kStructureTolerance) {
    throw NotUnital("extend_subunital_column: sum C_k* C_k exceeds I");
  }
  std::vector<ComplexMatrix> out(blocks.begin(), blocks.end());
  out.push_back(spectral_apply(defect, [](double x) { return std::sqrt(std::max(x, 0.0)); },
                               Interval::real_line(), 0.0, "sqrt")
                    .matrix());
  return out;
}

/// Slices the last block column of a unitary into n blocks of size d.
inline std::vector<ComplexMatrix> unitary_column_blocks(const ComplexMatrix& u, Index n) {
  if (u.rows() != u.cols() || n < 1 || u.rows() % n != 0) {
    throw DimensionMismatch("unitary_column_blocks: bad shape");
  }
  const Index d = u.rows() / n;
  std::vector<ComplexMatrix> blocks;
  for (Index k = 0; k < n; ++k) blocks.push_back(u.block(k * d, u.cols() - d, d, d));
  return blocks;
}

// ---------------------------------------------------------------------------
// 2 x 2 block construction turning the projection inequality back into the
// two-operator one
// ---------------------------------------------------------------------------

struct DilationBlocks {
  ComplexMatrix x;  // A (+) B
  ComplexMatrix p;  // I (+) 0
  ComplexMatrix q;  // 0 (+) I
  ComplexMatrix c;  // [[s, -c], [c, s]] (x) I with s = sqrt(l), c = sqrt(1-l)
  ComplexMatrix d;  // [[c, -s], [s, c]] (x) I
  Index block_dim = 0;
  double lambda = 0.0;
};

/// Builds X, P, Q, C, D for operators A, B and weight lambda and checks:
/// C, D unitary; the diagonal blocks of C*XC are (lA+(1-l)B, (1-l)A+lB);
/// the diagonal blocks of D*XD are ((1-l)A+lB, lA+(1-l)B);
/// P C*XC P = (lA+(1-l)B) (+) 0 and Q D*XD Q = 0 (+) (lA+(1-l)B).
/// The off-diagonal blocks of C*XC equal sqrt(l(1-l)) (B - A), so C*XC is
/// block diagonal only when A = B or l is 0 or 1.
inline DilationBlocks build_dilation_blocks(const HermitianMatrix& a, const HermitianMatrix& b, double lambda) {
  if (a.dim() != b.dim()) throw DimensionMismatch("build_dilation_blocks: A and B differ in size");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw DomainViolation("build_dilation_blocks: lambda must lie in [0, 1]", {lambda});
  }
  const Index n = a.dim();
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  const ComplexMatrix zero = ComplexMatrix::Zero(n, n);
  const double s = std::sqrt(lambda);
  const double t = std::sqrt(1.0 - lambda);

  DilationBlocks out;
  out.block_dim = n;
  out.lambda = lambda;
  out.x.resize(2 * n, 2 * n);
  out.x << a.matrix(), zero, zero, b.matrix();
  out.p.resize(2 * n, 2 * n);
  out.p << id, zero, zero, zero;
  out.q = ComplexMatrix::Identity(2 * n, 2 * n) - out.p;
  out.c.resize(2 * n, 2 * n);
  out.c << s * id, -t * id, t * id, s * id;
  out.d.resize(2 * n, 2 * n);
  out.d << t * id, -s * id, s * id, t * id;

  const ComplexMatrix cxc = out.c.adjoint() * out.x * out.c;
  const ComplexMatrix dxd = out.d.adjoint() * out.x * out.d;
  const ComplexMatrix mix = lambda * a.matrix() + (1.0 - lambda) * b.matrix();
  const ComplexMatrix swapped = (1.0 - lambda) * a.matrix() + lambda * b.matrix();
  const double scale = std::max({1.0, a.matrix().cwiseAbs().maxCoeff(), b.matrix().cwiseAbs().maxCoeff()});
  const auto close = [&](const ComplexMatrix& u, const ComplexMatrix& v) {
    return (u - v).cwiseAbs().maxCoeff() <= kStructureTolerance * scale;
  };
  ComplexMatrix pcxcp_expected = ComplexMatrix::Zero(2 * n, 2 * n);
  pcxcp_expected.topLeftCorner(n, n) = mix;
  ComplexMatrix qdxdq_expected = ComplexMatrix::Zero(2 * n, 2 * n);
  qdxdq_expected.bottomRightCorner(n, n) = mix;

  if (!is_unitary(out.c) || !is_unitary(out.d)) {
    throw RegressionFailure("build_dilation_blocks: C or D is not unitary");
  }
  if (!close(cxc.topLeftCorner(n, n), mix) || !close(cxc.bottomRightCorner(n, n), swapped) ||
      !close(cxc.topRightCorner(n, n), s * t * (b.matrix() - a.matrix()))) {
    throw RegressionFailure("build_dilation_blocks: C*XC block identities fail");
  }
  if (!close(dxd.topLeftCorner(n, n), swapped) || !close(dxd.bottomRightCorner(n, n), mix)) {
    throw RegressionFailure("build_dilation_blocks: D*XD block identities fail");
  }
  if (!close(out.p * cxc * out.p, pcxcp_expected) || !close(out.q * dxd * out.q, qdxdq_expected)) {
    throw RegressionFailure("build_dilation_blocks: compressed block identities fail");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Positive unital maps
// ---------------------------------------------------------------------------

struct Pinching {
  Index dim = 1;
};
/// A -> V* A V for an isometry V (input_dim x output_dim).
struct IsometryConjugation {
  ComplexMatrix v;
};
/// A -> sum K_i* A K_i with sum K_i* K_i = I.
struct Kraus {
  std::vector<ComplexMatrix> operators;
};
/// A -> sum w_i U_i* A U_i.
struct MixedUnitary {
  std::vector<double> weights;
  std::vector<ComplexMatrix> unitaries;
};
/// A -> [<A x, x>], a 1 x 1 output.
struct VectorState {
  ComplexVector x;
};

class PositiveUnitalMap {
 public:
  using Variant = std::variant<Pinching, IsometryConjugation, Kraus, MixedUnitary, VectorState>;

  static PositiveUnitalMap pinching(Index n) { return PositiveUnitalMap(Pinching{n}); }
  static PositiveUnitalMap isometry(ComplexMatrix v) {
    return PositiveUnitalMap(IsometryConjugation{std::move(v)});
  }
  static PositiveUnitalMap kraus(std::vector<ComplexMatrix> ops) {
    return PositiveUnitalMap(Kraus{std::move(ops)});
  }
  static PositiveUnitalMap mixed_unitary(std::vector<double> w, std::vector<ComplexMatrix> us) {
    return PositiveUnitalMap(MixedUnitary{std::move(w), std::move(us)});
  }
  static PositiveUnitalMap vector_state(ComplexVector x) {
    return PositiveUnitalMap(VectorState{std::move(x)});
  }
  static PositiveUnitalMap identity(Index n) {
    return isometry(ComplexMatrix::Identity(n, n));
  }

  const Variant& variant() const noexcept { return v_; }
  Index input_dim() const noexcept { return in_; }
  Index output_dim() const noexcept { return out_; }

  std::string_view variant_name() const {
    switch (v_.index()) {
      case 0: return "pinching";
      case 1: return "isometry";
      case 2: return "kraus";
      case 3: return "mixed-unitary";
      default: return "vector-state";
    }
  }

  HermitianMatrix operator()(const HermitianMatrix& a) const {
    if (a.dim() != in_) {
      throw DimensionMismatch("apply_map: map expects dimension " + std::to_string(in_) +
                              ", got " + std::to_string(a.dim()));
    }
    return HermitianMatrix(apply_raw(a.matrix()));
  }

 private:
  explicit PositiveUnitalMap(Variant v) : v_(std::move(v)) {
    shape();
    validate();
  }

  ComplexMatrix apply_raw(const ComplexMatrix& a) const {
    return std::visit(
        [&](const auto& m) -> ComplexMatrix {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Pinching>) {
            // Kraus form with the rank-one coordinate projections.
            ComplexMatrix out = ComplexMatrix::Zero(m.dim, m.dim);
            for (Index i = 0; i < m.dim; ++i) {
              ComplexMatrix e = ComplexMatrix::Zero(m.dim, m.dim);
              e(i, i) = 1.0;
              out += e * a * e;
            }
            return out;
          } else if constexpr (std::is_same_v<T, IsometryConjugation>) {
            return m.v.adjoint() * a * m.v;
          } else if constexpr (std::is_same_v<T, Kraus>) {
            ComplexMatrix out = ComplexMatrix::Zero(m.operators[0].cols(), m.operators[0].cols());
            for (const auto& k : m.operators) out += k.adjoint() * a * k;
            return out;
          } else if constexpr (std::is_same_v<T, MixedUnitary>) {
            ComplexMatrix out = ComplexMatrix::Zero(a.rows(), a.cols());
            for (std::size_t i = 0; i < m.weights.size(); ++i) {
              out += m.weights[i] * (m.unitaries[i].adjoint() * a * m.unitaries[i]);
            }
            return out;
          } else {
            ComplexMatrix out(1, 1);
            out(0, 0) = m.x.dot(a * m.x);  // conj(x) . (A x)
            return out;
          }
        },
        v_);
  }

  void shape() {
    std::visit(
        [&](const auto& m) {
          using T = std::decay_t<decltype(m)>;
          if constexpr (std::is_same_v<T, Pinching>) {
            if (m.dim < 1) throw DimensionMismatch("pinching: dim must be >= 1");
            in_ = out_ = m.dim;
          } else if constexpr (std::is_same_v<T, IsometryConjugation>) {
            if (m.v.rows() < m.v.cols() || m.v.cols() < 1) {
              throw NotIsometry("isometry map: V must be tall");
            }
            in_ = m.v.rows();
            out_ = m.v.cols();
          } else if constexpr (std::is_same_v<T, Kraus>) {
            if (m.operators.empty()) throw NotUnital("kraus map: no operators");
            in_ = m.operators[0].rows();
            out_ = m.operators[0].cols();
            for (const auto& k : m.operators) {
              if (k.rows() != in_ || k.cols() != out_) {
                throw DimensionMismatch("kraus map: operators differ in shape");
              }
            }
          } else if constexpr (std::is_same_v<T, MixedUnitary>) {
            if (m.unitaries.empty() || m.unitaries.size() != m.weights.size()) {
              throw NotUnital("mixed-unitary map: weights and unitaries must pair up");
            }
            in_ = out_ = m.unitaries[0].rows();
            for (const auto& u : m.unitaries) {
              if (u.rows() != in_ || u.cols() != in_) {
                throw DimensionMismatch("mixed-unitary map: unitaries differ in shape");
              }
            }
          } else {
            if (m.x.size() < 1) throw NotUnitVector("vector state: empty vector");
            in_ = m.x.size();
            out_ = 1;
          }
        },
        v_);
  }

  void validate() const {
    if (const auto* k = std::get_if<Kraus>(&v_)) {
      ComplexMatrix s = ComplexMatrix::Zero(out_, out_);
      for (const auto& op : k->operators) s += op.adjoint() * op;
      if (operator_norm(s - ComplexMatrix::Identity(out_, out_)) > kStructureTolerance) {
        throw NotUnital("kraus map: sum K_i* K_i differs from I");
      }
    }
    if (const auto* m = std::get_if<MixedUnitary>(&v_)) {
      double total = 0.0;
      for (double w : m->weights) {
        if (!(w >= 0.0)) throw NotUnital("mixed-unitary map: negative weight");
        total += w;
      }
      if (std::abs(total - 1.0) > kStructureTolerance) {
        throw NotUnital("mixed-unitary map: weights do not sum to 1");
      }
      for (const auto& u : m->unitaries) {
        if (!is_unitary(u)) throw NotUnital("mixed-unitary map: member is not unitary");
      }
    }
    if (const auto* iso = std::get_if<IsometryConjugation>(&v_)) {
      if (!is_isometry(iso->v)) throw NotIsometry("isometry map: V*V differs from I");
    }
    if (const auto* vs = std::get_if<VectorState>(&v_)) {
      if (std::abs(vs->x.norm() - 1.0) > kStructureTolerance) {
        throw NotUnitVector("vector state: ||x|| differs from 1");
      }
    }
    const ComplexMatrix unit = apply_raw(ComplexMatrix::Identity(in_, in_));
    if (operator_norm(unit - ComplexMatrix::Identity(out_, out_)) > kStructureTolerance) {
      throw NotUnital(std::string(variant_name()) + " map: Phi(I) differs from I");
    }
    // Positivity spot-check on G*G for a fixed family of Gaussian G.
    Rng rng(derive_seed(0x9051ULL, static_cast<std::uint64_t>(in_ * 131 + out_)));
    for (int i = 0; i < 100; ++i) {
      const ComplexMatrix g = gaussian_matrix(in_, in_, rng);
      const HermitianMatrix image(apply_raw(g.adjoint() * g));
      if (eigenvalues(image)(0) < -kStructureTolerance) {
        throw NotPositive(std::string(variant_name()) + " map failed the positivity spot-check");
      }
    }
  }

  Variant v_;
  Index in_ = 0;
  Index out_ = 0;
};

inline HermitianMatrix apply_map(const PositiveUnitalMap& phi, const HermitianMatrix& a) {
  return phi(a);
}

inline Json to_json(const PositiveUnitalMap& phi) {
  return std::visit(
      [](const auto& m) -> Json {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, Pinching>) {
          return Json{{"variant", "pinching"}, {"dim", m.dim}};
        } else if constexpr (std::is_same_v<T, IsometryConjugation>) {
          return Json{{"variant", "isometry"}, {"v", matrix_to_json(m.v)}};
        } else if constexpr (std::is_same_v<T, Kraus>) {
          Json ops = Json::array();
          for (const auto& k : m.operators) ops.push_back(matrix_to_json(k));
          return Json{{"variant", "kraus"}, {"operators", ops}};
        } else if constexpr (std::is_same_v<T, MixedUnitary>) {
          Json us = Json::array();
          for (const auto& u : m.unitaries) us.push_back(matrix_to_json(u));
          return Json{{"variant", "mixed-unitary"}, {"weights", m.weights}, {"unitaries", us}};
        } else {
          return Json{{"variant", "vector-state"}, {"x", vector_to_json(m.x)}};
        }
      },
      phi.variant());
}

inline PositiveUnitalMap map_from_json(const Json& j) {
  try {
    const std::string variant = j.at("variant").get<std::string>();
    if (variant == "pinching") return PositiveUnitalMap::pinching(j.at("dim").get<Index>());
    if (variant == "isometry") return PositiveUnitalMap::isometry(matrix_from_json(j.at("v")));
    if (variant == "kraus") {
      std::vector<ComplexMatrix> ops;
      for (const auto& k : j.at("operators")) ops.push_back(matrix_from_json(k));
      return PositiveUnitalMap::kraus(std::move(ops));
    }
    if (variant == "mixed-unitary") {
      std::vector<ComplexMatrix> us;
      for (const auto& u : j.at("unitaries")) us.push_back(matrix_from_json(u));
      return PositiveUnitalMap::mixed_unitary(j.at("weights").get<std::vector<double>>(), std::move(us));
    }
    if (variant == "vector-state") return PositiveUnitalMap::vector_state(vector_from_json(j.at("x")));
    throw ParseError("unknown map variant '" + variant + "'");
  } catch (const Json::exception& e) {
    throw ParseError(std::string("map descriptor: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Random maps
// ---------------------------------------------------------------------------

/// Kraus operators sliced from a random isometry of C^n into C^(m n).
inline PositiveUnitalMap random_kraus_map(Index n, Index count, Rng& rng) {
  const ComplexMatrix v = random_isometry(n * count, n, rng);
  std::vector<ComplexMatrix> ops;
  for (Index k = 0; k < count; ++k) ops.push_back(v.middleRows(k * n, n));
  return PositiveUnitalMap::kraus(std::move(ops));
}

/// Dirichlet(1, ..., 1) weights over Haar unitaries.
inline PositiveUnitalMap random_mixed_unitary_map(Index n, Index count, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(static_cast<std::size_t>(count));
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  std::vector<ComplexMatrix> us;
  for (Index k = 0; k < count; ++k) us.push_back(random_unitary(n, rng));
  return PositiveUnitalMap::mixed_unitary(std::move(w), std::move(us));
}

}  // namespace opsq

#endif  // OPSQ_MAPS_HPP
