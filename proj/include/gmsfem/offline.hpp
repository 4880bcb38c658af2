// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_OFFLINE_HPP
#define GMSFEM_OFFLINE_HPP

#include <limits>
#include <vector>

#include <Eigen/Core>

#include "gmsfem/discretization.hpp"
#include "gmsfem/media.hpp"
#include "gmsfem/snapshot.hpp"

namespace gmsfem
{

// Local forms of one block expressed in its snapshot basis B:
//   energy        = B^T (sum alpha_i int |grad u_i|^2 + collision) B
//   spectral_mass = B^T (1/2 sum alpha_i int_{dK} |v_i.n| u_i^2 + eps mass + collision) B
struct BlockForms
{
  Eigen::MatrixXd energy;
  Eigen::MatrixXd spectral_mass;
};

// (1/H) sum alpha_i int_e [u_i][w_i] on one interior coarse edge, split into the
// lower/lower, upper/upper and lower/upper couplings in snapshot coordinates.
struct EdgeForms
{
  int edge = -1;
  int lower = -1;
  int upper = -1;
  Eigen::MatrixXd ll, uu, lu;
};

BlockForms ComputeBlockForms(const Discretization &disc, const SnapshotSpace &space);
EdgeForms ComputeEdgeForms(const Discretization &disc, int edge, const SnapshotSpace &lower,
                           const SnapshotSpace &upper);

// Forms for every block and every interior coarse edge (edges indexed by edge id; boundary
// edges are left empty).
struct OfflineForms
{
  std::vector<BlockForms> blocks;
  std::vector<EdgeForms> edges;
};
OfflineForms ComputeOfflineForms(const Discretization &disc,
                                 const std::vector<SnapshotSpace> &spaces, int threads = 1);

// Energy matrix a_Energy^j over the oversampled snapshot space of a region, with blocks in
// region order and interior edges of the region.
Eigen::MatrixXd RegionEnergyMatrix(const NestedMesh &mesh, const OfflineForms &forms,
                                   const OversampleRegion &region);

// Energy-minimizing extension of every snapshot basis function of block j.
struct ExtensionOperator
{
  int center = -1;
  std::vector<int> blocks;                // region blocks, ascending
  std::vector<Eigen::MatrixXd> coeffs;    // per region block: d_K x d_j (identity on K_j)
  Eigen::MatrixXd energy;                 // region energy matrix G
  double ridge = 0.0;                     // ridge added to the free block of G
  double kkt_residual = 0.0;              // ||G_ff X + G_fj|| / ||G_fj||
};
ExtensionOperator EnergyExtend(const NestedMesh &mesh, const OfflineForms &forms, int j,
                               int layers);

// Pencil (A^j, S^j) of block j on the extended snapshot basis.
struct SpectralPencil
{
  int block = -1;
  Eigen::MatrixXd a;
  Eigen::MatrixXd s;
};
SpectralPencil AssemblePencil(const OfflineForms &forms, const ExtensionOperator &ext);

struct Eigenpairs
{
  Eigen::VectorXd values;    // ascending
  Eigen::MatrixXd vectors;   // S-orthonormal columns
  double ridge = 0.0;        // ridge added to S
  double max_residual = 0.0; // max_k ||A c - l S c|| / (||A|| + l ||S||)
};
// Throws NumericalFailure when the residual check fails after regularization.
Eigenpairs SolveGep(const Eigen::MatrixXd &a, const Eigen::MatrixXd &s);

struct OfflineResult
{
  std::vector<Eigenpairs> spectra;   // per block
  std::vector<double> kkt_residuals; // per block
  std::vector<double> extension_ridges;
  double seconds = 0.0;
};
OfflineResult BuildOffline(const Discretization &disc, const std::vector<SnapshotSpace> &spaces,
                           int layers = 1, int threads = 1);

// Offline space: L_j modes per block, as block-local fine vectors.
struct MultiscaleSpace
{
  std::vector<int> modes_per_block;
  std::vector<Eigen::MatrixXd> modes;        // block_dofs x L_j
  std::vector<Eigen::MatrixXd> coefficients; // in the snapshot basis, d_j x L_j
  std::vector<Eigen::VectorXd> eigenvalues;  // selected, ascending
  double lambda_star = std::numeric_limits<double>::infinity();

  int dim() const;
};

// Keeps the first L_j modes per block. A negative L selects the full snapshot space.
MultiscaleSpace SelectSpace(const std::vector<SnapshotSpace> &spaces, const OfflineResult &off,
                            const std::vector<int> &modes_per_block);
MultiscaleSpace SelectSpace(const std::vector<SnapshotSpace> &spaces, const OfflineResult &off,
                            int modes);

// Angular anisotropy sum_i alpha_i ||u_i - ubar||^2 / ||ubar||^2 of a block-local field.
double BlockAnisotropy(const Discretization &disc, const Eigen::VectorXd &block_values);

struct EpsLimitRow
{
  double eps = 0.0;
  Eigen::VectorXd eigenvalues;       // ascending, full spectrum of block j
  double first_mode_anisotropy = 0.0;
};
// Recomputes snapshots, extensions and the pencil of block j for each eps.
std::vector<EpsLimitRow> EpsLimitStudy(const NestedMesh &mesh, const OrdinateSet &ords,
                                       const MediaSpec &media, int j,
                                       const std::vector<double> &eps_list,
                                       const SnapshotOptions &options);

}  // namespace gmsfem

#endif  // GMSFEM_OFFLINE_HPP
