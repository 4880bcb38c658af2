// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/online.hpp"

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "gmsfem/errors.hpp"

namespace gmsfem
{

FineOperators::FineOperators(const Discretization &disc)
  : transport(disc.TransportMatrix(disc.all_blocks()), disc.mesh().num_blocks(), disc.m(),
              disc.nodes_per_block()),
    collision(disc.CollisionMatrix(disc.all_blocks()), disc.mesh().num_blocks(), disc.m(),
              disc.nodes_per_block())
{
}

BlockBasis MultiscaleBasis(const Discretization &disc, const MultiscaleSpace &space)
{
  if (static_cast<int>(space.modes.size()) != disc.mesh().num_blocks())
  {
    throw InvalidArgument("MultiscaleBasis: offline space does not match the mesh");
  }
  BlockBasis basis;
  basis.blocks = disc.all_blocks();
  basis.m = disc.m();
  basis.nodes_per_block = disc.nodes_per_block();
  basis.columns = space.modes;
  for (const auto &c : basis.columns)
  {
    if (c.rows() != disc.block_dofs())
    {
      throw InvalidArgument("MultiscaleBasis: mode length does not match the discretization");
    }
  }
  return basis;
}

CoarseSystem AssembleCoarse(const Discretization &disc, const FineOperators &ops,
                            const MultiscaleSpace &space, const Eigen::VectorXd &fine_load)
{
  CoarseSystem sys;
  sys.basis = MultiscaleBasis(disc, space);
  sys.a = ops.transport.GalerkinDense(sys.basis);
  sys.l = ops.collision.GalerkinDense(sys.basis);
  sys.b = sys.basis.Project(fine_load);
  return sys;
}

CoarseSystem AssembleCoarse(const Discretization &disc, const MultiscaleSpace &space,
                            const InflowData &g)
{
  const FineOperators ops(disc);
  return AssembleCoarse(disc, ops, space, disc.InflowLoad(disc.all_blocks(), g));
}

OnlineSolution SolveOnline(const CoarseSystem &sys)
{
  const Eigen::MatrixXd k = sys.a + sys.l;
  if (k.rows() != sys.b.size())
  {
    throw InvalidArgument("SolveOnline: inconsistent coarse system");
  }
  OnlineSolution out;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(k);
  out.coefficients = lu.solve(sys.b);
  const double rcond = lu.rcond();
  out.condition_estimate = rcond > 0.0 ? 1.0 / rcond : std::numeric_limits<double>::infinity();
  const double bn = sys.b.norm();
  const double res = (k * out.coefficients - sys.b).norm();
  out.relative_residual = bn > 0.0 ? res / bn : res;
  if (!out.coefficients.allFinite() || !(rcond > 0.0))
  {
    throw NumericalFailure("online system is singular (size " + std::to_string(k.rows()) + ")");
  }
  out.field = sys.basis.Reconstruct(out.coefficients);
  return out;
}

}  // namespace gmsfem
