// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_SPARSE_SOLVER_HPP
#define GMSFEM_SPARSE_SOLVER_HPP

#include <memory>
#include <string>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace gmsfem
{

// Sparse direct LU for general (non-symmetric) square systems. Backed by UMFPACK when
// the library was found at configure time, otherwise by Eigen::SparseLU.
class SparseDirectSolver
{
public:
  SparseDirectSolver();
  explicit SparseDirectSolver(const Eigen::SparseMatrix<double> &a, std::string what = "");
  ~SparseDirectSolver();
  SparseDirectSolver(SparseDirectSolver &&) noexcept;
  SparseDirectSolver &operator=(SparseDirectSolver &&) noexcept;

  // Throws NumericalFailure when the matrix is numerically singular.
  void Factorize(const Eigen::SparseMatrix<double> &a, std::string what = "");
  Eigen::VectorXd Solve(const Eigen::VectorXd &b) const;
  Eigen::MatrixXd Solve(const Eigen::MatrixXd &b) const;
  Eigen::Index rows() const;

  static const char *Backend();

private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace gmsfem

#endif  // GMSFEM_SPARSE_SOLVER_HPP
