// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_ORDINATES_HPP
#define GMSFEM_ORDINATES_HPP

#include <vector>

#include <Eigen/Core>

namespace gmsfem
{

// Discrete velocity directions on the unit circle with positive weights summing to one.
struct OrdinateSet
{
  std::vector<Eigen::Vector2d> directions;
  std::vector<double> weights;

  int size() const { return static_cast<int>(directions.size()); }
};

// Equispaced trigonometric rule: theta_i = 2*pi*(i - offset)/m for i = 1..m, equal
// weights 1/m. With offset 1/2 and m = 6 two directions are axis-aligned; a quarter step
// keeps every direction off the grid axes for any even m (the experiment default).
OrdinateSet BuildOrdinates(int m, double offset = 0.5);

// m x m matrix with a_ii = alpha_i - alpha_i^2 and a_ij = -alpha_i alpha_j. Symmetric,
// positive semi-definite, with the isotropic vector as its kernel.
Eigen::MatrixXd ScatteringMatrix(const OrdinateSet &ords);

// sum_i alpha_i u_i.
double AngularAverage(const OrdinateSet &ords, const Eigen::Ref<const Eigen::VectorXd> &u);

}  // namespace gmsfem

#endif  // GMSFEM_ORDINATES_HPP
