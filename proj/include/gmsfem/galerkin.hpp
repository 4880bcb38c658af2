// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_GALERKIN_HPP
#define GMSFEM_GALERKIN_HPP

#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "gmsfem/kinetic_field.hpp"

namespace gmsfem
{

// A basis whose functions are each supported on one coarse block. Column c of
// `columns[r]` is a block-local (ordinate-major) vector on block position r.
struct BlockBasis
{
  std::vector<int> blocks;
  int m = 0;
  int nodes_per_block = 0;
  std::vector<Eigen::MatrixXd> columns;

  int block_dofs() const { return m * nodes_per_block; }
  Eigen::Index size() const;
  // First global coefficient index of block position r.
  Eigen::Index offset(int block_pos) const;

  // u = sum_p c_p phi_p.
  KineticField Reconstruct(const Eigen::VectorXd &coeffs) const;
  // (phi_p . v)_p for a fine-layout vector v.
  Eigen::VectorXd Project(const Eigen::VectorXd &fine) const;
};

// A fine-layout sparse matrix split into (test block, trial block) pairs with block-local
// (ordinate-major) indexing inside each pair.
class BlockSplitMatrix
{
public:
  struct Pair
  {
    int test = 0;
    int trial = 0;
    Eigen::SparseMatrix<double> block;
  };

  BlockSplitMatrix(const Eigen::SparseMatrix<double> &fine, int num_blocks, int m,
                   int nodes_per_block);

  const std::vector<Pair> &pairs() const { return pairs_; }
  int num_blocks() const { return nb_; }

  // G_pq = phi_p^T K phi_q.
  Eigen::MatrixXd GalerkinDense(const BlockBasis &basis) const;
  Eigen::SparseMatrix<double> GalerkinSparse(const BlockBasis &basis) const;

private:
  int nb_, m_, npb_;
  std::vector<Pair> pairs_;
};

// Solves phi^T K phi c = phi^T f. Dense LU below `dense_limit` unknowns, sparse LU above.
Eigen::VectorXd SolveGalerkin(const BlockSplitMatrix &k, const BlockBasis &basis,
                              const Eigen::VectorXd &fine_rhs, double *relative_residual = nullptr,
                              Eigen::Index dense_limit = 4000);

}  // namespace gmsfem

#endif  // GMSFEM_GALERKIN_HPP
