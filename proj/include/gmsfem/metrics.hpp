// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_METRICS_HPP
#define GMSFEM_METRICS_HPP

#include <vector>

#include "gmsfem/discretization.hpp"
#include "gmsfem/offline.hpp"
#include "gmsfem/snapshot.hpp"

namespace gmsfem
{

// Bilinear forms on fields sharing one layout.
double BilinearA(const Discretization &disc, const KineticField &u, const KineticField &w);
double BilinearL(const Discretization &disc, const KineticField &u, const KineticField &w);
double FunctionalF(const Discretization &disc, const KineticField &w, const InflowData &g);

struct NormReport
{
  double v = 0.0;
  double w = 0.0;
  double tilde_v = 0.0;
  double tilde_w = 0.0;
  double energy = 0.0;
};

// Norm evaluator for fields over a fixed block list (all blocks by default). Matrices are
// assembled once.
class Norms
{
public:
  explicit Norms(const Discretization &disc);
  Norms(const Discretization &disc, std::vector<int> blocks);

  double V(const KineticField &u) const;
  double W(const KineticField &u) const;
  double TildeV(const KineticField &u) const;
  double TildeW(const KineticField &u) const;
  double Energy(const KineticField &u) const;
  NormReport Report(const KineticField &u) const;

  // l(u, u).
  double Collision(const KineticField &u) const;

private:
  double Quadratic(const SparseMatrix &m, const KineticField &u) const;

  std::vector<int> blocks_;
  SparseMatrix jump_, trace_, collision_, energy_;
};

struct RelativeErrors
{
  double e1 = 0.0;
  double e2 = 0.0;
};
// e1: weighted relative L2 error over all ordinates; e2: relative L2 error of the angular
// averages. Throws InvalidArgument when the reference is zero.
RelativeErrors ErrorsE1E2(const Discretization &disc, const KineticField &reference,
                          const KineticField &approx);

// dim(V_H) / dim(V_snap).
double SnapshotRatio(const MultiscaleSpace &space, const std::vector<SnapshotSpace> &spaces);

// Both sides of the stability bound
//   1/2 ||u||_V^2 + l(u, u) <= sum alpha_i int_{inflow} |v_i.n| g_i^2.
struct StabilityBound
{
  double lhs = 0.0;
  double rhs = 0.0;
  bool Holds(double relative_slack) const { return lhs <= rhs * (1.0 + relative_slack); }
};
StabilityBound Stability(const Discretization &disc, const KineticField &u, const InflowData &g);
StabilityBound Stability(const Norms &norms, const KineticField &u, double inflow_energy);

// Angular average ubar = sum_i alpha_i u_i in fine-layout block/node order.
Eigen::VectorXd AngularAverageField(const Discretization &disc, const KineticField &u);

}  // namespace gmsfem

#endif  // GMSFEM_METRICS_HPP
