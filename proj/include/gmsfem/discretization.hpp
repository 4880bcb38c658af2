// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_DISCRETIZATION_HPP
#define GMSFEM_DISCRETIZATION_HPP

#include <array>
#include <functional>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

#include "gmsfem/kinetic_field.hpp"
#include "gmsfem/media.hpp"
#include "gmsfem/mesh.hpp"
#include "gmsfem/ordinates.hpp"

namespace gmsfem
{

using SparseMatrix = Eigen::SparseMatrix<double>;

// Inflow data g(i, x) for ordinate i at boundary point x.
using InflowData = std::function<double(int ordinate, const Eigen::Vector2d &x)>;

// g(x, v) = cos(2 pi (x1 + x2)) + 1, independent of v.
InflowData CosineInflow();
InflowData ConstantInflow(double value);

// Scalar Q1 matrices of one coarse block, identical for every block of the mesh.
// Matrices are nodes_per_block square; transport_x(test, trial) = int phi_trial d/dx phi_test.
struct ReferenceBlock
{
  SparseMatrix mass;
  SparseMatrix stiffness;
  SparseMatrix transport_x;
  SparseMatrix transport_y;
  std::array<SparseMatrix, 4> side_mass;  // 1D trace mass on each side
  Eigen::MatrixXd edge_mass_x;            // (nf+1)^2 trace mass along a horizontal side
  Eigen::MatrixXd edge_mass_y;            // same along a vertical side
  Eigen::Matrix4d cell_mass;              // one fine cell, nodes (0,0),(1,0),(0,1),(1,1)
  std::vector<std::array<int, 4>> cell_nodes;

  ReferenceBlock() = default;
  explicit ReferenceBlock(const NestedMesh &mesh);
};

// Upwind DG discrete-ordinates discretization on a nested mesh.
//
// All bilinear forms are returned as sparse matrices with rows indexed by the test field
// and columns by the trial field, both laid out as a KineticField over the given ordered
// block list. The region boundary plays the role of the domain boundary: faces with
// v.n > 0 carry the outflow term, faces with v.n < 0 receive inflow data.
class Discretization
{
public:
  Discretization(const NestedMesh &mesh, const OrdinateSet &ords, const MediaSpec &media,
                 double eps);
  Discretization(const NestedMesh &mesh, const OrdinateSet &ords,
                 std::vector<double> cell_media, double eps);

  const NestedMesh &mesh() const { return mesh_; }
  const OrdinateSet &ordinates() const { return ords_; }
  const Eigen::MatrixXd &scattering() const { return scattering_; }
  const ReferenceBlock &reference() const { return ref_; }
  const std::vector<double> &cell_media() const { return cell_media_; }
  double eps() const { return eps_; }
  int m() const { return ords_.size(); }
  int nodes_per_block() const { return mesh_.nodes_per_block(); }
  int block_dofs() const { return m() * nodes_per_block(); }
  std::vector<int> all_blocks() const;
  Eigen::Index num_dofs(const std::vector<int> &blocks) const
  {
    return static_cast<Eigen::Index>(block_dofs()) * blocks.size();
  }
  KineticField zero_field(const std::vector<int> &blocks) const
  {
    return KineticField(blocks, m(), nodes_per_block());
  }

  // a(u, w): -int u grad(w).v + upwind interior-edge flux + outflow boundary term.
  SparseMatrix TransportMatrix(const std::vector<int> &blocks) const;
  // l(u, w): int 1/(eps a) sum a_ij u_j w_i + sum alpha_i int eps u_i w_i.
  SparseMatrix CollisionMatrix(const std::vector<int> &blocks) const;
  // a + l.
  SparseMatrix SystemMatrix(const std::vector<int> &blocks) const;
  // Collision part of l only: int 1/(eps a) sum a_ij u_j w_i.
  SparseMatrix ScatteringMatrixForm(const std::vector<int> &blocks) const;
  // sum alpha_i int u_i w_i.
  SparseMatrix MassMatrix(const std::vector<int> &blocks) const;

  // F(w) = -sum alpha_i int_{inflow} g_i w_i v_i.n, two-point Gauss per fine sub-edge.
  Eigen::VectorXd InflowLoad(const std::vector<int> &blocks, const InflowData &g) const;
  // sum alpha_i int_{inflow} |v_i.n| g_i^2 with the same quadrature.
  double InflowEnergy(const std::vector<int> &blocks, const InflowData &g) const;

  // 1/2 sum alpha_i sum_{e in E_H(region)} int |v_i.n| [u_i]^2; one-sided trace on the
  // region boundary.
  SparseMatrix JumpMatrix(const std::vector<int> &blocks) const;
  // 1/2 sum alpha_i sum_K int_{dK} |v_i.n| u_i^2 with each block's own trace.
  SparseMatrix TraceMatrix(const std::vector<int> &blocks) const;
  // sum alpha_i (int |grad u_i|^2 + 1/H sum_{interior edges} int [u_i]^2) + collision.
  SparseMatrix EnergyMatrix(const std::vector<int> &blocks) const;

  // Block-local (ordinate-major, block_dofs square) versions used by the offline stage.
  // Energy without jumps: sum alpha_i int_K |grad u_i|^2 + collision on K.
  SparseMatrix BlockEnergyMatrix(int block) const;
  // 1/2 sum alpha_i int_{dK} |v_i.n| u_i^2 + eps sum alpha_i int_K u_i^2 + collision on K.
  SparseMatrix BlockSpectralMassMatrix(int block) const;
  // Ordinate-weighted trace mass along `side` of a block: rows/cols are block-local
  // dofs restricted to that side, (i, t) -> i * (nf+1) + t, weight alpha_i.
  Eigen::MatrixXd WeightedEdgeMass(Side side) const;

private:
  void Init();

  NestedMesh mesh_;
  OrdinateSet ords_;
  std::vector<double> cell_media_;
  double eps_;
  Eigen::MatrixXd scattering_;
  ReferenceBlock ref_;
  std::vector<SparseMatrix> inverse_media_mass_;  // per block: sum_cells (1/a) M_cell
};

// Global fine-scale solve of a(u, w) + l(u, w) = F(w) for all w in (V_h)^m.
struct FineSolveReport
{
  double relative_residual = 0.0;
  double seconds = 0.0;
};
KineticField SolveFine(const Discretization &disc, const InflowData &g,
                       FineSolveReport *report = nullptr);

}  // namespace gmsfem

#endif  // GMSFEM_DISCRETIZATION_HPP
