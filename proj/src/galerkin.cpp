// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/galerkin.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>

#include <Eigen/LU>

#include "gmsfem/errors.hpp"
#include "gmsfem/sparse_solver.hpp"

namespace gmsfem
{

Eigen::Index BlockBasis::size() const
{
  Eigen::Index n = 0;
  for (const auto &c : columns)
  {
    n += c.cols();
  }
  return n;
}

Eigen::Index BlockBasis::offset(int block_pos) const
{
  Eigen::Index n = 0;
  for (int r = 0; r < block_pos; r++)
  {
    n += columns[r].cols();
  }
  return n;
}

KineticField BlockBasis::Reconstruct(const Eigen::VectorXd &coeffs) const
{
  if (coeffs.size() != size())
  {
    throw InvalidArgument("BlockBasis::Reconstruct: coefficient size mismatch");
  }
  KineticField u(blocks, m, nodes_per_block);
  Eigen::Index off = 0;
  for (std::size_t r = 0; r < columns.size(); r++)
  {
    const Eigen::Index n = columns[r].cols();
    u.set_block_values(static_cast<int>(r), columns[r] * coeffs.segment(off, n));
    off += n;
  }
  return u;
}

Eigen::VectorXd BlockBasis::Project(const Eigen::VectorXd &fine) const
{
  KineticField layout(blocks, m, nodes_per_block);
  if (fine.size() != layout.coeffs().size())
  {
    throw InvalidArgument("BlockBasis::Project: vector size mismatch");
  }
  layout.coeffs() = fine;
  Eigen::VectorXd out(size());
  Eigen::Index off = 0;
  for (std::size_t r = 0; r < columns.size(); r++)
  {
    const Eigen::Index n = columns[r].cols();
    out.segment(off, n) = columns[r].transpose() * layout.block_values(static_cast<int>(r));
    off += n;
  }
  return out;
}

BlockSplitMatrix::BlockSplitMatrix(const Eigen::SparseMatrix<double> &fine, int num_blocks,
                                   int m, int nodes_per_block)
  : nb_(num_blocks), m_(m), npb_(nodes_per_block)
{
  const Eigen::Index n = static_cast<Eigen::Index>(m) * num_blocks * nodes_per_block;
  if (fine.rows() != n || fine.cols() != n)
  {
    throw InvalidArgument("BlockSplitMatrix: matrix size does not match the layout");
  }
  const Eigen::Index stride = static_cast<Eigen::Index>(num_blocks) * nodes_per_block;
  auto split = [&](Eigen::Index g, int &block, int &local) {
    const auto i = static_cast<int>(g / stride);
    const Eigen::Index rem = g % stride;
    block = static_cast<int>(rem / nodes_per_block);
    local = i * nodes_per_block + static_cast<int>(rem % nodes_per_block);
  };
  std::map<std::pair<int, int>, std::vector<Eigen::Triplet<double>>> buckets;
  for (int k = 0; k < fine.outerSize(); k++)
  {
    for (Eigen::SparseMatrix<double>::InnerIterator it(fine, k); it; ++it)
    {
      int rb, rl, cb, cl;
      split(it.row(), rb, rl);
      split(it.col(), cb, cl);
      buckets[{rb, cb}].emplace_back(rl, cl, it.value());
    }
  }
  const int bd = m * nodes_per_block;
  pairs_.reserve(buckets.size());
  for (auto &[key, trip] : buckets)
  {
    Pair p;
    p.test = key.first;
    p.trial = key.second;
    p.block.resize(bd, bd);
    p.block.setFromTriplets(trip.begin(), trip.end());
    p.block.makeCompressed();
    pairs_.push_back(std::move(p));
  }
}

Eigen::MatrixXd BlockSplitMatrix::GalerkinDense(const BlockBasis &basis) const
{
  if (static_cast<int>(basis.columns.size()) != nb_)
  {
    throw InvalidArgument("GalerkinDense: basis has the wrong number of blocks");
  }
  std::vector<Eigen::Index> offs(nb_ + 1, 0);
  for (int r = 0; r < nb_; r++)
  {
    offs[r + 1] = offs[r] + basis.columns[r].cols();
  }
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(offs[nb_], offs[nb_]);
  for (const auto &p : pairs_)
  {
    const auto &bt = basis.columns[p.test];
    const auto &bs = basis.columns[p.trial];
    if (bt.cols() == 0 || bs.cols() == 0)
    {
      continue;
    }
    const Eigen::MatrixXd kb = p.block * bs;
    g.block(offs[p.test], offs[p.trial], bt.cols(), bs.cols()).noalias() += bt.transpose() * kb;
  }
  return g;
}

Eigen::SparseMatrix<double> BlockSplitMatrix::GalerkinSparse(const BlockBasis &basis) const
{
  if (static_cast<int>(basis.columns.size()) != nb_)
  {
    throw InvalidArgument("GalerkinSparse: basis has the wrong number of blocks");
  }
  std::vector<Eigen::Index> offs(nb_ + 1, 0);
  for (int r = 0; r < nb_; r++)
  {
    offs[r + 1] = offs[r] + basis.columns[r].cols();
  }
  std::vector<Eigen::Triplet<double>> trip;
  for (const auto &p : pairs_)
  {
    const auto &bt = basis.columns[p.test];
    const auto &bs = basis.columns[p.trial];
    if (bt.cols() == 0 || bs.cols() == 0)
    {
      continue;
    }
    const Eigen::MatrixXd gb = bt.transpose() * (p.block * bs);
    for (Eigen::Index c = 0; c < gb.cols(); c++)
    {
      for (Eigen::Index r = 0; r < gb.rows(); r++)
      {
        trip.emplace_back(offs[p.test] + r, offs[p.trial] + c, gb(r, c));
      }
    }
  }
  Eigen::SparseMatrix<double> g(offs[nb_], offs[nb_]);
  g.setFromTriplets(trip.begin(), trip.end());
  g.makeCompressed();
  return g;
}

Eigen::VectorXd SolveGalerkin(const BlockSplitMatrix &k, const BlockBasis &basis,
                              const Eigen::VectorXd &fine_rhs, double *relative_residual,
                              Eigen::Index dense_limit)
{
  const Eigen::VectorXd b = basis.Project(fine_rhs);
  Eigen::VectorXd c;
  double res = 0.0;
  if (basis.size() <= dense_limit)
  {
    const Eigen::MatrixXd g = k.GalerkinDense(basis);
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(g);
    c = lu.solve(b);
    res = (g * c - b).norm();
  }
  else
  {
    const Eigen::SparseMatrix<double> g = k.GalerkinSparse(basis);
    SparseDirectSolver lu(g, "Galerkin system");
    c = lu.Solve(b);
    res = (g * c - b).norm();
  }
  const double bn = b.norm();
  const double rel = bn > 0.0 ? res / bn : res;
  if (!c.allFinite() || !std::isfinite(rel))
  {
    throw NumericalFailure("Galerkin solve produced non-finite values (size " +
                           std::to_string(basis.size()) + ")");
  }
  if (relative_residual != nullptr)
  {
    *relative_residual = rel;
  }
  return c;
}

}  // namespace gmsfem
