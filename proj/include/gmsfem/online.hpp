// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_ONLINE_HPP
#define GMSFEM_ONLINE_HPP

#include <Eigen/Core>

#include "gmsfem/discretization.hpp"
#include "gmsfem/galerkin.hpp"
#include "gmsfem/offline.hpp"

namespace gmsfem
{

// Fine transport and collision operators split by block pairs, shared by every online
// solve on the same discretization.
struct FineOperators
{
  BlockSplitMatrix transport;
  BlockSplitMatrix collision;

  explicit FineOperators(const Discretization &disc);
};

// Coarse system over V_H: transport A, collision L, load b. Entries follow the fine
// matrices: row p tests with phi_p, column q is the trial phi_q.
struct CoarseSystem
{
  Eigen::MatrixXd a;
  Eigen::MatrixXd l;
  Eigen::VectorXd b;
  BlockBasis basis;
};

BlockBasis MultiscaleBasis(const Discretization &disc, const MultiscaleSpace &space);

CoarseSystem AssembleCoarse(const Discretization &disc, const FineOperators &ops,
                            const MultiscaleSpace &space, const Eigen::VectorXd &fine_load);
CoarseSystem AssembleCoarse(const Discretization &disc, const MultiscaleSpace &space,
                            const InflowData &g);

struct OnlineSolution
{
  Eigen::VectorXd coefficients;
  KineticField field;
  double relative_residual = 0.0;
  double condition_estimate = 0.0;  // reciprocal of the LU rcond estimate
};

// Solves (A + L) U = b and reconstructs u_H on the fine grid.
OnlineSolution SolveOnline(const CoarseSystem &sys);

}  // namespace gmsfem

#endif  // GMSFEM_ONLINE_HPP
