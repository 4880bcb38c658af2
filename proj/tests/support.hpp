// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_TESTS_SUPPORT_HPP
#define GMSFEM_TESTS_SUPPORT_HPP

#include <cmath>
#include <random>

#include <Eigen/Core>

#include "gmsfem/discretization.hpp"

namespace testing
{

inline Eigen::VectorXd RandomVector(Eigen::Index n, std::mt19937_64 &rng)
{
  std::normal_distribution<double> nd;
  Eigen::VectorXd v(n);
  for (Eigen::Index k = 0; k < n; k++)
  {
    v(k) = nd(rng);
  }
  return v;
}

inline gmsfem::KineticField RandomField(const gmsfem::Discretization &disc,
                                        const std::vector<int> &blocks, std::mt19937_64 &rng)
{
  gmsfem::KineticField u = disc.zero_field(blocks);
  u.coeffs() = RandomVector(u.coeffs().size(), rng);
  return u;
}

inline double RelDiff(double a, double b)
{
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

}  // namespace testing

#endif  // GMSFEM_TESTS_SUPPORT_HPP
