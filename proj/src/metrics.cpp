// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/metrics.hpp"

#include <cmath>
#include <string>

#include "gmsfem/errors.hpp"

namespace gmsfem
{

namespace
{

void CheckLayout(const Discretization &disc, const KineticField &u, const char *what)
{
  if (u.m() != disc.m() || u.nodes_per_block() != disc.nodes_per_block() ||
      u.coeffs().size() != disc.num_dofs(u.blocks()))
  {
    throw InvalidArgument(std::string(what) + ": field layout does not match the discretization");
  }
}

void CheckSame(const KineticField &u, const KineticField &w, const char *what)
{
  if (!u.same_layout(w))
  {
    throw InvalidArgument(std::string(what) + ": fields have different layouts");
  }
}

}  // namespace

double BilinearA(const Discretization &disc, const KineticField &u, const KineticField &w)
{
  CheckLayout(disc, u, "BilinearA");
  CheckSame(u, w, "BilinearA");
  return w.coeffs().dot(disc.TransportMatrix(u.blocks()) * u.coeffs());
}

double BilinearL(const Discretization &disc, const KineticField &u, const KineticField &w)
{
  CheckLayout(disc, u, "BilinearL");
  CheckSame(u, w, "BilinearL");
  return w.coeffs().dot(disc.CollisionMatrix(u.blocks()) * u.coeffs());
}

double FunctionalF(const Discretization &disc, const KineticField &w, const InflowData &g)
{
  CheckLayout(disc, w, "FunctionalF");
  return w.coeffs().dot(disc.InflowLoad(w.blocks(), g));
}

Norms::Norms(const Discretization &disc) : Norms(disc, disc.all_blocks()) {}

Norms::Norms(const Discretization &disc, std::vector<int> blocks)
  : blocks_(std::move(blocks)),
    jump_(disc.JumpMatrix(blocks_)),
    trace_(disc.TraceMatrix(blocks_)),
    collision_(disc.CollisionMatrix(blocks_)),
    energy_(disc.EnergyMatrix(blocks_))
{
}

double Norms::Quadratic(const SparseMatrix &m, const KineticField &u) const
{
  if (u.blocks() != blocks_ || u.coeffs().size() != m.rows())
  {
    throw InvalidArgument("Norms: field layout does not match the evaluator");
  }
  return u.coeffs().dot(m * u.coeffs());
}

double Norms::Collision(const KineticField &u) const { return Quadratic(collision_, u); }

double Norms::V(const KineticField &u) const
{
  return std::sqrt(std::max(0.0, Quadratic(jump_, u)));
}

double Norms::W(const KineticField &u) const
{
  return std::sqrt(std::max(0.0, Quadratic(trace_, u)));
}

double Norms::TildeV(const KineticField &u) const
{
  return std::sqrt(std::max(0.0, Quadratic(jump_, u) + Collision(u)));
}

double Norms::TildeW(const KineticField &u) const
{
  return std::sqrt(std::max(0.0, Quadratic(trace_, u) + Collision(u)));
}

double Norms::Energy(const KineticField &u) const
{
  return std::sqrt(std::max(0.0, Quadratic(energy_, u)));
}

NormReport Norms::Report(const KineticField &u) const
{
  return {V(u), W(u), TildeV(u), TildeW(u), Energy(u)};
}

Eigen::VectorXd AngularAverageField(const Discretization &disc, const KineticField &u)
{
  CheckLayout(disc, u, "AngularAverageField");
  const Eigen::Index n = static_cast<Eigen::Index>(u.num_blocks()) * u.nodes_per_block();
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < u.m(); i++)
  {
    avg += disc.ordinates().weights[i] * u.coeffs().segment(i * n, n);
  }
  return avg;
}

RelativeErrors ErrorsE1E2(const Discretization &disc, const KineticField &reference,
                          const KineticField &approx)
{
  CheckLayout(disc, reference, "ErrorsE1E2");
  CheckSame(reference, approx, "ErrorsE1E2");
  const SparseMatrix &mass = disc.reference().mass;
  const int npb = disc.nodes_per_block();
  const auto &w = disc.ordinates().weights;
  double num1 = 0.0, den1 = 0.0;
  for (int i = 0; i < disc.m(); i++)
  {
    for (int r = 0; r < reference.num_blocks(); r++)
    {
      const Eigen::Index off = reference.index(i, r, 0);
      const Eigen::VectorXd ur = reference.coeffs().segment(off, npb);
      const Eigen::VectorXd d = ur - approx.coeffs().segment(off, npb);
      num1 += w[i] * d.dot(mass * d);
      den1 += w[i] * ur.dot(mass * ur);
    }
  }
  const Eigen::VectorXd ar = AngularAverageField(disc, reference);
  const Eigen::VectorXd aa = AngularAverageField(disc, approx);
  double num2 = 0.0, den2 = 0.0;
  for (int r = 0; r < reference.num_blocks(); r++)
  {
    const Eigen::VectorXd br = ar.segment(static_cast<Eigen::Index>(r) * npb, npb);
    const Eigen::VectorXd d = br - aa.segment(static_cast<Eigen::Index>(r) * npb, npb);
    num2 += d.dot(mass * d);
    den2 += br.dot(mass * br);
  }
  if (!(den1 > 0.0) || !(den2 > 0.0))
  {
    throw InvalidArgument("ErrorsE1E2: reference solution has zero norm");
  }
  return {std::sqrt(num1 / den1), std::sqrt(num2 / den2)};
}

double SnapshotRatio(const MultiscaleSpace &space, const std::vector<SnapshotSpace> &spaces)
{
  long total = 0;
  for (const auto &s : spaces)
  {
    total += s.dim();
  }
  if (total == 0)
  {
    throw InvalidArgument("SnapshotRatio: empty snapshot space");
  }
  return static_cast<double>(space.dim()) / static_cast<double>(total);
}

StabilityBound Stability(const Norms &norms, const KineticField &u, double inflow_energy)
{
  const double v = norms.V(u);
  return {0.5 * v * v + norms.Collision(u), inflow_energy};
}

StabilityBound Stability(const Discretization &disc, const KineticField &u, const InflowData &g)
{
  CheckLayout(disc, u, "Stability");
  const Norms norms(disc, u.blocks());
  return Stability(norms, u, disc.InflowEnergy(u.blocks(), g));
}

}  // namespace gmsfem
