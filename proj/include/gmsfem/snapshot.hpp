// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_SNAPSHOT_HPP
#define GMSFEM_SNAPSHOT_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "gmsfem/discretization.hpp"
#include "gmsfem/galerkin.hpp"
#include "gmsfem/sparse_solver.hpp"

namespace gmsfem
{

// Local Boltzmann solver on a union of coarse blocks. The weak form is the fine one with
// the region boundary as domain boundary; for each ordinate i the rows of the nodes in
// J^i(region) are replaced by nodal Dirichlet conditions, outflow is left free.
class LocalBoltzmannSolver
{
public:
  struct DirichletDof
  {
    Eigen::Index dof;
    int ordinate;
    int node;  // geometric node id
  };

  LocalBoltzmannSolver(const Discretization &disc, std::vector<int> blocks);

  const std::vector<int> &blocks() const { return blocks_; }
  const std::vector<DirichletDof> &dirichlet_dofs() const { return dirichlet_; }
  // Geometric inflow nodes J^i(region), ascending.
  const std::vector<int> &inflow_nodes(int ordinate) const { return inflow_[ordinate]; }

  // Solves with boundary values data(ordinate, geometric node) on every Dirichlet dof.
  KineticField Solve(const std::function<double(int, int)> &data) const;
  // Solves for several right-hand sides given as columns of Dirichlet values, one row per
  // entry of dirichlet_dofs(). Returns fine-layout solutions as columns.
  Eigen::MatrixXd SolveMany(const Eigen::MatrixXd &dirichlet_values) const;

private:
  const Discretization *disc_;
  std::vector<int> blocks_;
  std::vector<std::vector<int>> inflow_;
  std::vector<DirichletDof> dirichlet_;
  SparseDirectSolver solver_;
};

enum class SnapshotMethod
{
  Det,
  Ran
};

// Snapshot functions of one coarse block, restricted to it (block-local, ordinate-major).
struct SnapshotSpace
{
  int block = -1;
  SnapshotMethod method = SnapshotMethod::Ran;
  std::uint64_t seed = 0;
  int samples = 0;                   // k_j for Ran, 0 for Det
  Eigen::MatrixXd snapshots;         // raw restricted snapshots, one per column
  Eigen::MatrixXd basis;             // orthonormal basis of their span after rank filtering
  Eigen::VectorXd singular_values;   // of `snapshots`, descending

  int raw_count() const { return static_cast<int>(snapshots.cols()); }
  int dim() const { return static_cast<int>(basis.cols()); }
};

struct SnapshotOptions
{
  SnapshotMethod method = SnapshotMethod::Ran;
  int samples = 21;
  std::uint64_t seed = 1;
  int layers = 1;
  double rank_tol = 1e-10;
  int threads = 1;
};

// Delta-inflow snapshots: one per (ordinate n, node in J^n(K_j)).
SnapshotSpace DetLocal(const Discretization &disc, int j, double rank_tol = 1e-10);

// Randomized oversampled snapshots: m * k solves on K_j^+ with Gaussian inflow values.
SnapshotSpace RanLocal(const Discretization &disc, int j, int k, std::uint64_t seed,
                       int layers = 1, double rank_tol = 1e-10);

// The Gaussian inflow value of sample (n, l) at the position-th node of J^n(K_j^+).
std::vector<double> RandomInflowValues(std::uint64_t seed, int j, int n, int l, int count);

// Orthonormal basis of the column span, dropping singular values below tol * max.
void FilterRank(SnapshotSpace &space, double rank_tol);

std::vector<SnapshotSpace> BuildSnapshotSpaces(const Discretization &disc,
                                               const SnapshotOptions &options);

// Block basis formed by the filtered snapshot bases of all blocks.
BlockBasis SnapshotBasis(const Discretization &disc, const std::vector<SnapshotSpace> &spaces);

struct SnapshotSolveReport
{
  double relative_residual = 0.0;
  Eigen::Index dim = 0;
};

// Galerkin solution of the fine weak form in V_snap.
KineticField SolveSnapshot(const Discretization &disc, const std::vector<SnapshotSpace> &spaces,
                           const InflowData &g, SnapshotSolveReport *report = nullptr);
KineticField SolveSnapshot(const Discretization &disc, const BlockSplitMatrix &system,
                           const Eigen::VectorXd &load, const std::vector<SnapshotSpace> &spaces,
                           SnapshotSolveReport *report = nullptr);

}  // namespace gmsfem

#endif  // GMSFEM_SNAPSHOT_HPP
