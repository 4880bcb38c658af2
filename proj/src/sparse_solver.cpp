// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/sparse_solver.hpp"

#include <Eigen/SparseLU>
#if defined(GMSFEM_HAVE_UMFPACK)
#include <Eigen/UmfPackSupport>
#endif

#include "gmsfem/errors.hpp"

namespace gmsfem
{

struct SparseDirectSolver::Impl
{
#if defined(GMSFEM_HAVE_UMFPACK)
  Eigen::UmfPackLU<Eigen::SparseMatrix<double>> lu;
#else
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
#endif
  Eigen::Index n = 0;
  std::string what;
};

SparseDirectSolver::SparseDirectSolver() : impl_(std::make_unique<Impl>()) {}

SparseDirectSolver::SparseDirectSolver(const Eigen::SparseMatrix<double> &a, std::string what)
  : impl_(std::make_unique<Impl>())
{
  Factorize(a, std::move(what));
}

SparseDirectSolver::~SparseDirectSolver() = default;
SparseDirectSolver::SparseDirectSolver(SparseDirectSolver &&) noexcept = default;
SparseDirectSolver &SparseDirectSolver::operator=(SparseDirectSolver &&) noexcept = default;

void SparseDirectSolver::Factorize(const Eigen::SparseMatrix<double> &a, std::string what)
{
  if (a.rows() != a.cols())
  {
    throw InvalidArgument("SparseDirectSolver: matrix is not square");
  }
  impl_->what = std::move(what);
  impl_->n = a.rows();
  if (a.rows() == 0)
  {
    return;
  }
  Eigen::SparseMatrix<double> compressed = a;
  compressed.makeCompressed();
  impl_->lu.compute(compressed);
  if (impl_->lu.info() != Eigen::Success)
  {
    throw NumericalFailure("sparse LU factorization failed" +
                           (impl_->what.empty() ? std::string() : " (" + impl_->what + ")") +
                           ": matrix of size " + std::to_string(a.rows()) +
                           " is numerically singular");
  }
}

Eigen::VectorXd SparseDirectSolver::Solve(const Eigen::VectorXd &b) const
{
  if (impl_->n == 0)
  {
    return Eigen::VectorXd();
  }
  Eigen::VectorXd x = impl_->lu.solve(b);
  if (impl_->lu.info() != Eigen::Success)
  {
    throw NumericalFailure("sparse LU solve failed" +
                           (impl_->what.empty() ? std::string() : " (" + impl_->what + ")"));
  }
  return x;
}

Eigen::MatrixXd SparseDirectSolver::Solve(const Eigen::MatrixXd &b) const
{
  Eigen::MatrixXd x(b.rows(), b.cols());
  for (Eigen::Index c = 0; c < b.cols(); c++)
  {
    x.col(c) = Solve(Eigen::VectorXd(b.col(c)));
  }
  return x;
}

Eigen::Index SparseDirectSolver::rows() const { return impl_->n; }

const char *SparseDirectSolver::Backend()
{
#if defined(GMSFEM_HAVE_UMFPACK)
  return "umfpack";
#else
  return "eigen-sparselu";
#endif
}

}  // namespace gmsfem
