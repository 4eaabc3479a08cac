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

#ifndef OPSQ_TESTS_SUPPORT_HPP
#define OPSQ_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>

#include "opsq/linalg.hpp"

namespace opsq::testing {

/// Seeded source for property tests; every test names its own seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  Rng& rng() { return rng_; }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }
  Index dim(Index lo, Index hi) { return std::uniform_int_distribution<Index>(lo, hi)(rng_); }
  std::uint64_t seed() { return rng_(); }

  HermitianMatrix hermitian(Index n, double scale = 2.0) {
    const ComplexMatrix g = gaussian_matrix(n, n, rng_);
    return HermitianMatrix(scale * (g + g.adjoint()) / 2.0);
  }
  HermitianMatrix psd(Index n, double lo = 0.0, double hi = 4.0) { return random_psd(n, lo, hi, rng_); }
  ComplexMatrix complex(Index r, Index c) { return gaussian_matrix(r, c, rng_); }

 private:
  Rng rng_;
};

inline double max_abs(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) { return max_abs(a - b); }

}  // namespace opsq::testing

#endif  // OPSQ_TESTS_SUPPORT_HPP
