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

#include <gtest/gtest.h>

#include <cmath>

#include "opsq/funclass.hpp"
#include "opsq/io.hpp"
#include "opsq/linalg.hpp"
#include "support.hpp"

namespace opsq {
namespace {

using testing::Gen;
using testing::max_abs_diff;

TEST(HermitianMatrix, SymmetrizesOnConstruction) {
  ComplexMatrix m(2, 2);
  m << Complex(1, 0.5), Complex(2, 1), Complex(0, 0), Complex(3, -2);
  const HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
  EXPECT_EQ(h(0, 0).imag(), 0.0);
  EXPECT_EQ(h(1, 1).imag(), 0.0);
  EXPECT_EQ(h(0, 1), Complex(1.0, 0.5));
}

TEST(HermitianMatrix, RejectsNonSquareAndNonFinite) {
  EXPECT_THROW(HermitianMatrix(ComplexMatrix::Zero(2, 3)), DimensionMismatch);
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = std::nan("");
  EXPECT_THROW(HermitianMatrix{m}, NonFinite);
}

TEST(HermitianEig, DiagonalInput) {
  const SpectralDecomposition s = hermitian_eig(HermitianMatrix::diagonal({3, 1}));
  EXPECT_NEAR(s.eigenvalues(0), 1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 3.0, 1e-15);
  // Columns are coordinate vectors up to phase.
  EXPECT_NEAR(std::abs(s.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(HermitianEig, GoldenRatioPair) {
  const SpectralDecomposition s = hermitian_eig(HermitianMatrix::real({{2, 1}, {1, 1}}));
  EXPECT_NEAR(s.eigenvalues(0), (3.0 - std::sqrt(5.0)) / 2.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues(1), (3.0 + std::sqrt(5.0)) / 2.0, 1e-14);
}

TEST(HermitianEig, ZeroMatrix) {
  const SpectralDecomposition s = hermitian_eig(HermitianMatrix::zero(4));
  EXPECT_EQ(s.eigenvalues.cwiseAbs().maxCoeff(), 0.0);
  EXPECT_LE(operator_norm(s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(4, 4)), 1e-14);
}

TEST(HermitianEig, ResidualContractOnRandomMatrices) {
  Gen g(101);
  for (int trial = 0; trial < 1000; ++trial) {
    const Index n = g.dim(1, 12);
    const HermitianMatrix h = g.hermitian(n, g.uniform(0.01, 100.0));
    const SpectralDecomposition s = hermitian_eig(h);
    const double scale = std::max(1.0, spectral_norm(h));
    ASSERT_LE(operator_norm(s.reconstruct(s.eigenvalues) - h.matrix()), 1e-10 * scale) << trial;
    ASSERT_LE(operator_norm(s.eigenvectors.adjoint() * s.eigenvectors - ComplexMatrix::Identity(n, n)), 1e-10);
    for (Index i = 1; i < n; ++i) ASSERT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
  }
}

TEST(HermitianEig, Deterministic) {
  Gen g(7);
  const HermitianMatrix h = g.hermitian(6);
  const SpectralDecomposition a = hermitian_eig(h);
  const SpectralDecomposition b = hermitian_eig(h);
  EXPECT_EQ(a.eigenvalues, b.eigenvalues);
  EXPECT_EQ(a.eigenvectors, b.eigenvectors);
}

TEST(ApplyFunction, Examples) {
  EXPECT_LE(max_abs_diff(apply_function(square_function(), HermitianMatrix::diagonal({1, 2})).matrix(),
                         HermitianMatrix::diagonal({1, 4}).matrix()),
            1e-14);
  // A*A*A by direct multiplication.
  const HermitianMatrix a = HermitianMatrix::real({{2, 1}, {1, 1}});
  const ComplexMatrix cube = a.matrix() * a.matrix() * a.matrix();
  EXPECT_LE(max_abs_diff(apply_function(cube_function(), a).matrix(), cube), 1e-13);
  EXPECT_LE(max_abs_diff(cube, HermitianMatrix::real({{13, 8}, {8, 5}}).matrix()), 0.0);
  EXPECT_LE(max_abs_diff(apply_function(reciprocal_function(), HermitianMatrix::diagonal({3, 1})).matrix(),
                         HermitianMatrix::diagonal({1.0 / 3.0, 1.0}).matrix()),
            1e-15);
}

TEST(ApplyFunction, DomainViolationListsEigenvalues) {
  try {
    apply_function(reciprocal_function(), HermitianMatrix::diagonal({2, 0, -1}));
    FAIL() << "expected DomainViolation";
  } catch (const DomainViolation& e) {
    EXPECT_EQ(e.offending().size(), 2u);
  }
  // Closed endpoint: -1e-13 is within slack and is clamped to 0.
  const HermitianMatrix tiny = HermitianMatrix::diagonal({-1e-13, 1});
  EXPECT_EQ(apply_function(power_function(0.5), tiny)(0, 0).real(), 0.0);
  EXPECT_THROW(apply_function(power_function(0.5), HermitianMatrix::diagonal({-1e-9, 1})), DomainViolation);
  // Open endpoint: needs the 1e-6 margin.
  EXPECT_THROW(apply_function(reciprocal_function(), HermitianMatrix::diagonal({5e-7})), DomainViolation);
  EXPECT_NO_THROW(apply_function(reciprocal_function(), HermitianMatrix::diagonal({2e-6})));
}

TEST(ApplyFunction, IdentityMapIsIdentity) {
  Gen g(202);
  const ScalarFunctionSpec id = affine_function(1.0, 0.0);
  ScalarFunctionSpec ident = id;
  ident.domain = Interval::real_line();
  for (int trial = 0; trial < 200; ++trial) {
    const HermitianMatrix h = g.hermitian(g.dim(1, 10));
    ASSERT_LE(max_abs_diff(apply_function(ident, h).matrix(), h.matrix()), 1e-12 * std::max(1.0, spectral_norm(h)));
  }
}

TEST(ApplyFunction, UnitaryCovariance) {
  Gen g(303);
  for (const auto& f : {square_function(), cube_function(), power_function(0.5), xlogx_function()}) {
    for (int trial = 0; trial < 100; ++trial) {
      const Index n = g.dim(1, 8);
      const HermitianMatrix a = g.psd(n, 0.0, 2.0);
      const ComplexMatrix u = random_unitary(n, g.rng());
      const ComplexMatrix lhs = apply_function(f, congruence(u, a)).matrix();
      const ComplexMatrix rhs = u.adjoint() * apply_function(f, a).matrix() * u;
      ASSERT_LE(max_abs_diff(lhs, rhs), 1e-9) << f.name;
    }
  }
}

TEST(OperatorAbs, Examples) {
  EXPECT_LE(max_abs_diff(operator_abs(HermitianMatrix::diagonal({2, -1})).matrix(),
                         HermitianMatrix::diagonal({2, 1}).matrix()),
            1e-15);
  EXPECT_LE(max_abs_diff(operator_abs(HermitianMatrix::real({{0, 1}, {1, 0}})).matrix(),
                         ComplexMatrix::Identity(2, 2)),
            1e-14);
  Gen g(404);
  const HermitianMatrix p = g.psd(5);
  EXPECT_LE(max_abs_diff(operator_abs(p).matrix(), p.matrix()), 1e-13);
}

TEST(OperatorAbs, SquareMatchesSquare) {
  Gen g(405);
  for (int trial = 0; trial < 300; ++trial) {
    const HermitianMatrix a = g.hermitian(g.dim(1, 10));
    const ComplexMatrix abs = operator_abs(a).matrix();
    ASSERT_LE(max_abs_diff(abs * abs, a.matrix() * a.matrix()), 1e-9);
    ASSERT_GE(eigenvalues(operator_abs(a))(0), -1e-12);
  }
}

TEST(Loewner, Examples) {
  const LoewnerVerdict v = loewner_compare(HermitianMatrix::identity(3), 2.0 * HermitianMatrix::identity(3));
  EXPECT_EQ(v.relation, Relation::PositiveSemidefinite);
  EXPECT_NEAR(v.lambda_min, 1.0, 1e-15);

  const HermitianMatrix d = 0.25 * HermitianMatrix::real({{9, 7}, {7, 5}});
  EXPECT_EQ(loewner_compare(HermitianMatrix::zero(2), d).relation, Relation::Indefinite);

  const HermitianMatrix e = (1.0 / 12.0) * HermitianMatrix::diagonal({-4, -11});
  EXPECT_EQ(loewner_compare(HermitianMatrix::zero(2), e).relation, Relation::NegativeSemidefinite);

  EXPECT_EQ(loewner_verdict(HermitianMatrix::zero(3)).relation, Relation::Zero);
  EXPECT_THROW(loewner_compare(HermitianMatrix::zero(2), HermitianMatrix::zero(3)), DimensionMismatch);
}

TEST(Loewner, ToleranceIsRelativeAndInclusive) {
  // ||D|| = 100, so tol_eff = 1e-6 and -1e-6 classifies as PSD.
  const HermitianMatrix d = HermitianMatrix::diagonal({-1e-6, 100});
  const LoewnerVerdict v = loewner_verdict(d, 1e-8);
  EXPECT_DOUBLE_EQ(v.tolerance_used, 1e-6);
  EXPECT_EQ(v.relation, Relation::PositiveSemidefinite);
  EXPECT_EQ(loewner_verdict(HermitianMatrix::diagonal({-2e-6, 100}), 1e-8).relation, Relation::Indefinite);
  // Small norm: tol_eff = tol.
  EXPECT_DOUBLE_EQ(loewner_verdict(HermitianMatrix::diagonal({0.5}), 1e-8).tolerance_used, 1e-8);
}

TEST(Loewner, Antisymmetry) {
  Gen g(505);
  for (int trial = 0; trial < 500; ++trial) {
    const Index n = g.dim(1, 6);
    HermitianMatrix a = g.hermitian(n);
    HermitianMatrix b = g.hermitian(n);
    if (trial % 4 == 0) b = a + g.psd(n);
    if (trial % 4 == 1) b = a;
    const Relation ab = loewner_compare(a, b).relation;
    const Relation ba = loewner_compare(b, a).relation;
    switch (ab) {
      case Relation::PositiveSemidefinite: ASSERT_EQ(ba, Relation::NegativeSemidefinite); break;
      case Relation::NegativeSemidefinite: ASSERT_EQ(ba, Relation::PositiveSemidefinite); break;
      default: ASSERT_EQ(ba, ab);
    }
  }
}

TEST(Loewner, HeinzMonotonicityOfPowers) {
  Gen g(606);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = g.dim(1, 6);
    const HermitianMatrix b = g.psd(n, 0.0, 3.0);
    const HermitianMatrix a = b + g.psd(n, 0.0, 1.0);  // A >= B >= 0
    for (int k = 0; k <= 10; ++k) {
      const ScalarFunctionSpec f = power_function(k / 10.0);
      const LoewnerVerdict v = loewner_compare(apply_function(f, b), apply_function(f, a));
      ASSERT_TRUE(v.nonnegative()) << "r=" << k / 10.0 << " lambda_min=" << v.lambda_min;
    }
  }
}

TEST(RandomPsd, Examples) {
  const HermitianMatrix one = random_psd(1, 2.0, 2.0, 99);
  EXPECT_EQ(one.dim(), 1);
  EXPECT_EQ(one(0, 0), Complex(2.0, 0.0));
  Gen g(707);
  for (int trial = 0; trial < 200; ++trial) {
    const double lo = g.uniform(0.0, 1.0);
    const HermitianMatrix p = random_psd(g.dim(1, 8), lo, lo + 2.0, g.rng());
    ASSERT_GE(eigenvalues(p)(0), lo - 1e-12);
  }
  EXPECT_EQ(random_psd(3, 0.0, 1.0, 42).matrix(), random_psd(3, 0.0, 1.0, 42).matrix());
  EXPECT_THROW(random_psd(2, 1.0, 0.5, 1), DomainViolation);
}

TEST(RandomUnitary, IsUnitary) {
  Gen g(808);
  for (int trial = 0; trial < 100; ++trial) {
    const ComplexMatrix u = random_unitary(g.dim(1, 12), g.rng());
    ASSERT_TRUE(is_unitary(u));
  }
}

TEST(Predicates, Examples) {
  const ComplexMatrix id = ComplexMatrix::Identity(3, 3);
  EXPECT_TRUE(is_contraction(id));
  EXPECT_TRUE(is_isometry(id));
  EXPECT_TRUE(is_projection(id));

  const ComplexMatrix half = ComplexMatrix::Identity(2, 2) / std::sqrt(2.0);
  EXPECT_TRUE(is_contraction(half));
  EXPECT_FALSE(is_isometry(half));

  ComplexMatrix col(2, 1);
  col << std::sqrt(0.3), std::sqrt(0.7);
  EXPECT_TRUE(is_isometry(col));
  EXPECT_THROW(is_isometry(col.adjoint()), DimensionMismatch);
  EXPECT_THROW(is_unitary(col), DimensionMismatch);
  EXPECT_THROW(is_projection(col), DimensionMismatch);
  EXPECT_FALSE(is_contraction(2.0 * id));
}

TEST(Interval, Policy) {
  const Interval closed = Interval::closed(0.0, 1.0);
  EXPECT_TRUE(closed.admits(-1e-12));
  EXPECT_FALSE(closed.admits(-1e-11));
  EXPECT_TRUE(closed.admits(1.0 + 1e-12));
  const Interval pos = Interval::positive();
  EXPECT_FALSE(pos.admits(0.0));
  EXPECT_FALSE(pos.admits(9e-7));
  EXPECT_TRUE(pos.admits(1e-6));
  EXPECT_TRUE(Interval::closed(0.25, 4.0).is_subset_of(pos));
  EXPECT_FALSE(Interval::nonnegative().is_subset_of(pos));
}

TEST(MatrixDocument, RoundTripIsBitFaithful) {
  Gen g(909);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianMatrix h = g.hermitian(g.dim(1, 6), g.uniform(1e-3, 1e3));
    const HermitianMatrix back = hermitian_from_json(parse_json(dump_json(matrix_to_json(h))));
    ASSERT_EQ(back, h);
  }
  const ComplexMatrix rect = g.complex(3, 2);
  EXPECT_EQ(matrix_from_json(parse_json(dump_json(matrix_to_json(rect)))), rect);
}

TEST(MatrixDocument, ParsesDecimalLiteralsExactly) {
  const HermitianMatrix h = hermitian_from_json(
      parse_json(R"({"dim": 2, "entries": [[0.1, 0], [0.2, -0.3], [0.2, 0.3], [1e-300, 0]]})"));
  EXPECT_EQ(h(0, 0).real(), 0.1);
  EXPECT_EQ(h(0, 1), Complex(0.2, -0.3));
  EXPECT_EQ(h(1, 1).real(), 1e-300);
}

TEST(MatrixDocument, RejectsMalformed) {
  EXPECT_THROW(hermitian_from_json(parse_json(R"({"dim": 2, "entries": [[1, 0]]})")), ParseError);
  EXPECT_THROW(hermitian_from_json(parse_json(R"({"dim": 1, "entries": [[1]]})")), ParseError);
  EXPECT_THROW(hermitian_from_json(parse_json(R"({"dim": 2, "entries": [[1,0],[2,0],[3,0],[1,0]]})")),
               ParseError);
  EXPECT_THROW(parse_json("{not json"), ParseError);
}

}  // namespace
}  // namespace opsq
