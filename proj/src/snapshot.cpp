// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/snapshot.hpp"

#include <algorithm>
#include <random>
#include <string>
#include <unordered_map>

#include <Eigen/SVD>

#include "gmsfem/errors.hpp"
#include "gmsfem/parallel.hpp"

namespace gmsfem
{

LocalBoltzmannSolver::LocalBoltzmannSolver(const Discretization &disc, std::vector<int> blocks)
  : disc_(&disc), blocks_(std::move(blocks))
{
  const NestedMesh &mesh = disc.mesh();
  const int nb = static_cast<int>(blocks_.size());
  const int npb = disc.nodes_per_block();
  SparseMatrix k = disc.SystemMatrix(blocks_);

  inflow_.resize(disc.m());
  std::vector<char> fixed(k.rows(), 0);
  for (int i = 0; i < disc.m(); i++)
  {
    inflow_[i] = UpwindNodes(mesh, blocks_, disc.ordinates().directions[i]);
    for (int r = 0; r < nb; r++)
    {
      for (int node = 0; node < npb; node++)
      {
        const int gnode = mesh.global_node(blocks_[r], node);
        if (std::binary_search(inflow_[i].begin(), inflow_[i].end(), gnode))
        {
          const Eigen::Index dof = (static_cast<Eigen::Index>(i) * nb + r) * npb + node;
          dirichlet_.push_back({dof, i, gnode});
          fixed[dof] = 1;
        }
      }
    }
  }

  k.prune([&](Eigen::Index row, Eigen::Index, double) { return fixed[row] == 0; });
  std::vector<Eigen::Triplet<double>> diag;
  for (const auto &d : dirichlet_)
  {
    diag.emplace_back(d.dof, d.dof, 1.0);
  }
  SparseMatrix ident(k.rows(), k.cols());
  ident.setFromTriplets(diag.begin(), diag.end());
  k += ident;
  solver_.Factorize(k, "local snapshot system");
}

KineticField LocalBoltzmannSolver::Solve(const std::function<double(int, int)> &data) const
{
  Eigen::MatrixXd values(static_cast<Eigen::Index>(dirichlet_.size()), 1);
  for (std::size_t d = 0; d < dirichlet_.size(); d++)
  {
    values(static_cast<Eigen::Index>(d), 0) = data(dirichlet_[d].ordinate, dirichlet_[d].node);
  }
  KineticField u = disc_->zero_field(blocks_);
  u.coeffs() = SolveMany(values).col(0);
  return u;
}

Eigen::MatrixXd LocalBoltzmannSolver::SolveMany(const Eigen::MatrixXd &dirichlet_values) const
{
  if (dirichlet_values.rows() != static_cast<Eigen::Index>(dirichlet_.size()))
  {
    throw InvalidArgument("LocalBoltzmannSolver: expected one row per Dirichlet dof");
  }
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(solver_.rows(), dirichlet_values.cols());
  for (std::size_t d = 0; d < dirichlet_.size(); d++)
  {
    rhs.row(dirichlet_[d].dof) = dirichlet_values.row(static_cast<Eigen::Index>(d));
  }
  return solver_.Solve(rhs);
}

namespace
{

// Extracts block position r of fine-layout columns as block-local columns.
Eigen::MatrixXd Restrict(const Discretization &disc, const std::vector<int> &blocks, int r,
                         const Eigen::MatrixXd &fine)
{
  const int nb = static_cast<int>(blocks.size());
  const int npb = disc.nodes_per_block();
  Eigen::MatrixXd out(disc.block_dofs(), fine.cols());
  for (int i = 0; i < disc.m(); i++)
  {
    out.middleRows(static_cast<Eigen::Index>(i) * npb, npb) =
        fine.middleRows((static_cast<Eigen::Index>(i) * nb + r) * npb, npb);
  }
  return out;
}

}  // namespace

void FilterRank(SnapshotSpace &space, double rank_tol)
{
  if (space.snapshots.cols() == 0)
  {
    space.basis.resize(space.snapshots.rows(), 0);
    space.singular_values.resize(0);
    return;
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(space.snapshots, Eigen::ComputeThinU);
  space.singular_values = svd.singularValues();
  const double smax = space.singular_values.size() > 0 ? space.singular_values(0) : 0.0;
  Eigen::Index rank = 0;
  while (rank < space.singular_values.size() && smax > 0.0 &&
         space.singular_values(rank) > rank_tol * smax)
  {
    rank++;
  }
  space.basis = svd.matrixU().leftCols(rank);
}

SnapshotSpace DetLocal(const Discretization &disc, int j, double rank_tol)
{
  if (!disc.mesh().valid_block(j))
  {
    throw InvalidArgument("DetLocal: invalid block id " + std::to_string(j));
  }
  const LocalBoltzmannSolver solver(disc, {j});
  const auto &dofs = solver.dirichlet_dofs();
  // One column per Dirichlet slot: component n, node x_l in J^n(K_j).
  Eigen::MatrixXd values = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dofs.size()),
                                                     static_cast<Eigen::Index>(dofs.size()));
  SnapshotSpace space;
  space.block = j;
  space.method = SnapshotMethod::Det;
  space.snapshots = solver.SolveMany(values);
  FilterRank(space, rank_tol);
  return space;
}

std::vector<double> RandomInflowValues(std::uint64_t seed, int j, int n, int l, int count)
{
  std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                    static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(j),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(l)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(count);
  for (auto &x : out)
  {
    x = normal(rng);
  }
  return out;
}

SnapshotSpace RanLocal(const Discretization &disc, int j, int k, std::uint64_t seed, int layers,
                       double rank_tol)
{
  if (k < 1)
  {
    throw InvalidArgument("RanLocal: sample count must be >= 1");
  }
  const OversampleRegion region = Oversample(disc.mesh(), j, layers);
  const LocalBoltzmannSolver solver(disc, region.blocks);
  const auto &dofs = solver.dirichlet_dofs();
  const int m = disc.m();

  // Position of each geometric node inside J^n(K_j^+).
  std::vector<std::unordered_map<int, int>> slot(m);
  for (int n = 0; n < m; n++)
  {
    const auto &nodes = solver.inflow_nodes(n);
    for (std::size_t p = 0; p < nodes.size(); p++)
    {
      slot[n][nodes[p]] = static_cast<int>(p);
    }
  }

  Eigen::MatrixXd values =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dofs.size()), static_cast<Eigen::Index>(m) * k);
  for (int n = 0; n < m; n++)
  {
    const int count = static_cast<int>(solver.inflow_nodes(n).size());
    for (int l = 0; l < k; l++)
    {
      const std::vector<double> r = RandomInflowValues(seed, j, n, l, count);
      const Eigen::Index col = static_cast<Eigen::Index>(n) * k + l;
      for (std::size_t d = 0; d < dofs.size(); d++)
      {
        if (dofs[d].ordinate == n)
        {
          values(static_cast<Eigen::Index>(d), col) = r[slot[n].at(dofs[d].node)];
        }
      }
    }
  }
  const Eigen::MatrixXd fine = solver.SolveMany(values);
  const auto it = std::lower_bound(region.blocks.begin(), region.blocks.end(), j);
  const int r = static_cast<int>(it - region.blocks.begin());

  SnapshotSpace space;
  space.block = j;
  space.method = SnapshotMethod::Ran;
  space.seed = seed;
  space.samples = k;
  space.snapshots = Restrict(disc, region.blocks, r, fine);
  FilterRank(space, rank_tol);
  return space;
}

std::vector<SnapshotSpace> BuildSnapshotSpaces(const Discretization &disc,
                                               const SnapshotOptions &options)
{
  const int nb = disc.mesh().num_blocks();
  std::vector<SnapshotSpace> spaces(nb);
  ParallelFor(nb, options.threads, [&](int j) {
    spaces[j] = options.method == SnapshotMethod::Det
                    ? DetLocal(disc, j, options.rank_tol)
                    : RanLocal(disc, j, options.samples, options.seed, options.layers,
                               options.rank_tol);
    if (spaces[j].dim() == 0)
    {
      throw NumericalFailure("snapshot space of block " + std::to_string(j) + " is empty");
    }
  });
  return spaces;
}

BlockBasis SnapshotBasis(const Discretization &disc, const std::vector<SnapshotSpace> &spaces)
{
  if (static_cast<int>(spaces.size()) != disc.mesh().num_blocks())
  {
    throw InvalidArgument("SnapshotBasis: need one snapshot space per block");
  }
  BlockBasis basis;
  basis.blocks = disc.all_blocks();
  basis.m = disc.m();
  basis.nodes_per_block = disc.nodes_per_block();
  for (const auto &s : spaces)
  {
    basis.columns.push_back(s.basis);
  }
  return basis;
}

KineticField SolveSnapshot(const Discretization &disc, const BlockSplitMatrix &system,
                           const Eigen::VectorXd &load, const std::vector<SnapshotSpace> &spaces,
                           SnapshotSolveReport *report)
{
  const BlockBasis basis = SnapshotBasis(disc, spaces);
  double rel = 0.0;
  const Eigen::VectorXd c = SolveGalerkin(system, basis, load, &rel);
  if (rel > 1e-10)
  {
    throw NumericalFailure("snapshot solve: relative residual " + std::to_string(rel) +
                           " exceeds 1e-10");
  }
  if (report != nullptr)
  {
    report->relative_residual = rel;
    report->dim = basis.size();
  }
  return basis.Reconstruct(c);
}

KineticField SolveSnapshot(const Discretization &disc, const std::vector<SnapshotSpace> &spaces,
                           const InflowData &g, SnapshotSolveReport *report)
{
  const auto blocks = disc.all_blocks();
  const BlockSplitMatrix system(disc.SystemMatrix(blocks), disc.mesh().num_blocks(), disc.m(),
                                disc.nodes_per_block());
  return SolveSnapshot(disc, system, disc.InflowLoad(blocks, g), spaces, report);
}

}  // namespace gmsfem
