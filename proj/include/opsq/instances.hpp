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

// Seeded random instances for every inequality id. An instance is a pure
// function of (inequality, dim, spectrum range, seed), so its digest is
// enough to rebuild it.

#ifndef OPSQ_INSTANCES_HPP
#define OPSQ_INSTANCES_HPP

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "opsq/jensen.hpp"
#include "opsq/maps.hpp"

namespace opsq {

namespace detail {

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline PositiveUnitalMap random_square_map(Index dim, Rng& rng) {
  switch (pick(rng, 3)) {
    case 0: return PositiveUnitalMap::pinching(dim);
    case 1: return random_kraus_map(dim, 1 + static_cast<Index>(pick(rng, 3)), rng);
    default: return random_mixed_unitary_map(dim, 1 + static_cast<Index>(pick(rng, 3)), rng);
  }
}

inline std::vector<double> dirichlet(std::size_t n, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(n);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  for (auto& x : w) x /= total;
  return w;
}

inline ProjectionFamily random_partition_family(Index dim, Rng& rng) {
  std::vector<Index> idx(static_cast<std::size_t>(dim));
  std::iota(idx.begin(), idx.end(), 0);
  std::shuffle(idx.begin(), idx.end(), rng);
  const std::size_t groups = 1 + pick(rng, static_cast<std::size_t>(dim));
  // Cut points split the shuffled indices into `groups` non-empty runs.
  std::vector<std::size_t> cuts(idx.size() - 1);
  std::iota(cuts.begin(), cuts.end(), 1);
  std::shuffle(cuts.begin(), cuts.end(), rng);
  cuts.resize(groups - 1);
  cuts.push_back(0);
  cuts.push_back(idx.size());
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::vector<Index>> parts;
  for (std::size_t g = 0; g + 1 < cuts.size(); ++g) {
    parts.emplace_back(idx.begin() + static_cast<std::ptrdiff_t>(cuts[g]),
                       idx.begin() + static_cast<std::ptrdiff_t>(cuts[g + 1]));
  }
  return basis_partition_family(dim, parts);
}

}  // namespace detail

/// Draws one instance of `ineq` with operators of size `dim` whose spectra
/// lie in `range`.
inline Instance random_instance(const InequalitySpec& ineq, Index dim, const Interval& range,
                                std::uint64_t seed) {
  if (dim < 1) throw DimensionMismatch("random_instance: dim must be positive");
  Rng rng(seed);
  Instance inst;
  inst.ineq = ineq;
  const auto psd = [&] { return random_psd(dim, range.lower, range.upper, rng); };
  switch (ineq.id) {
    case InequalityId::Superquadratic:
      inst.as = {psd(), psd()};
      inst.alpha = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
      break;
    case InequalityId::Weighted: {
      const std::size_t n = 2 + detail::pick(rng, 3);
      std::uniform_real_distribution<double> w(0.05, 1.0);
      for (std::size_t k = 0; k < n; ++k) {
        inst.as.push_back(psd());
        inst.weights.push_back(w(rng));
      }
      break;
    }
    case InequalityId::Contraction: {
      const Index n = 1 + static_cast<Index>(detail::pick(rng, 3));
      const ComplexMatrix v = random_isometry(n * dim, dim, rng);
      std::vector<ComplexMatrix> blocks;
      for (Index k = 0; k < n; ++k) blocks.push_back(v.middleRows(k * dim, dim));
      const ComplexMatrix u = complete_column_to_unitary(blocks, derive_seed(seed, 0xC0));
      inst.cs = unitary_column_blocks(u, n);
      for (Index k = 0; k < n; ++k) inst.as.push_back(psd());
      break;
    }
    case InequalityId::Projection: {
      ProjectionFamily fam = detail::pick(rng, 2) == 0 ? build_projection_family(dim)
                                                       : detail::random_partition_family(dim, rng);
      for (std::size_t k = 0; k < fam.projections.size(); ++k) inst.as.push_back(psd());
      inst.family = std::move(fam);
      break;
    }
    case InequalityId::Isometry:
      inst.as = {psd()};
      inst.cs = {random_unitary(dim, rng)};
      break;
    case InequalityId::Map:
    case InequalityId::Kadison:
      inst.as = {psd()};
      inst.maps = {detail::random_square_map(dim, rng)};
      break;
    case InequalityId::MultiMap: {
      const std::size_t n = 2 + detail::pick(rng, 2);
      inst.weights = detail::dirichlet(n, rng);
      for (std::size_t k = 0; k < n; ++k) {
        inst.as.push_back(psd());
        inst.maps.push_back(detail::random_square_map(dim, rng));
      }
      break;
    }
    case InequalityId::VectorState: {
      inst.as = {psd()};
      if (detail::pick(rng, 4) == 0) {
        const Index out = 1 + static_cast<Index>(detail::pick(rng, static_cast<std::size_t>(dim)));
        inst.maps = {PositiveUnitalMap::isometry(random_isometry(dim, out, rng))};
      } else {
        inst.maps = {detail::random_square_map(dim, rng)};
      }
      inst.x = random_unit_vector(inst.maps[0].output_dim(), rng);
      break;
    }
  }
  return inst;
}

inline InstanceDigest instance_digest(const InequalitySpec& ineq, Index dim, const Interval& range,
                                      std::uint64_t seed) {
  return {seed, Json{{"inequality", ineq.to_string()},
                     {"dim", dim},
                     {"lo", range.lower},
                     {"hi", range.upper}}};
}

/// Rebuilds an instance from a digest: either a serialized instance under
/// "instance" or the (inequality, dim, lo, hi) draw parameters.
inline Instance regenerate_instance(const InstanceDigest& d) {
  const Json& p = d.params;
  if (p.contains("instance")) return instance_from_json(p.at("instance"));
  if (!p.contains("inequality")) {
    // Classification digests describe an (A, B, alpha) pair.
    const PairInstance pair = regenerate_pair(d);
    Instance inst;
    inst.as = {pair.a, pair.b};
    inst.alpha = pair.alpha;
    return inst;
  }
  return random_instance(parse_inequality(p.at("inequality").get<std::string>()),
                         p.at("dim").get<Index>(),
                         Interval::closed(p.at("lo").get<double>(), p.at("hi").get<double>()), d.seed);
}

}  // namespace opsq

#endif  // OPSQ_INSTANCES_HPP
