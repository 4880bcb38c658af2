// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/offline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "gmsfem/errors.hpp"
#include "gmsfem/parallel.hpp"

namespace gmsfem
{

namespace
{

Eigen::MatrixXd Symmetrized(const Eigen::MatrixXd &a) { return 0.5 * (a + a.transpose()); }

// Rows of block-local vectors that sit on `side`, ordinate-major: i * (nf+1) + t.
Eigen::MatrixXd SideTrace(const Discretization &disc, Side side, const Eigen::MatrixXd &b)
{
  const auto &nodes = disc.mesh().side_nodes(side);
  const auto n = static_cast<Eigen::Index>(nodes.size());
  const int npb = disc.nodes_per_block();
  Eigen::MatrixXd out(disc.m() * n, b.cols());
  for (int i = 0; i < disc.m(); i++)
  {
    for (Eigen::Index t = 0; t < n; t++)
    {
      out.row(i * n + t) = b.row(static_cast<Eigen::Index>(i) * npb + nodes[t]);
    }
  }
  return out;
}

std::vector<Eigen::Index> Offsets(const OfflineForms &forms, const std::vector<int> &blocks)
{
  std::vector<Eigen::Index> offs(blocks.size() + 1, 0);
  for (std::size_t r = 0; r < blocks.size(); r++)
  {
    offs[r + 1] = offs[r] + forms.blocks[blocks[r]].energy.rows();
  }
  return offs;
}

}  // namespace

BlockForms ComputeBlockForms(const Discretization &disc, const SnapshotSpace &space)
{
  const Eigen::MatrixXd &b = space.basis;
  BlockForms f;
  f.energy = Symmetrized(b.transpose() * (disc.BlockEnergyMatrix(space.block) * b));
  f.spectral_mass = Symmetrized(b.transpose() * (disc.BlockSpectralMassMatrix(space.block) * b));
  return f;
}

EdgeForms ComputeEdgeForms(const Discretization &disc, int edge, const SnapshotSpace &lower,
                           const SnapshotSpace &upper)
{
  const CoarseEdge &e = disc.mesh().edges().at(edge);
  if (!e.interior() || e.lower != lower.block || e.upper != upper.block)
  {
    throw InvalidArgument("ComputeEdgeForms: spaces do not match the blocks of edge " +
                          std::to_string(edge));
  }
  const Side low_side = e.vertical ? Side::Right : Side::Top;
  const Side up_side = e.vertical ? Side::Left : Side::Bottom;
  const Eigen::MatrixXd w = disc.WeightedEdgeMass(low_side) / disc.mesh().H();
  const Eigen::MatrixXd pl = SideTrace(disc, low_side, lower.basis);
  const Eigen::MatrixXd pu = SideTrace(disc, up_side, upper.basis);
  EdgeForms f;
  f.edge = edge;
  f.lower = e.lower;
  f.upper = e.upper;
  f.ll = Symmetrized(pl.transpose() * w * pl);
  f.uu = Symmetrized(pu.transpose() * w * pu);
  f.lu = -(pl.transpose() * w * pu);
  return f;
}

OfflineForms ComputeOfflineForms(const Discretization &disc,
                                 const std::vector<SnapshotSpace> &spaces, int threads)
{
  const NestedMesh &mesh = disc.mesh();
  if (static_cast<int>(spaces.size()) != mesh.num_blocks())
  {
    throw InvalidArgument("ComputeOfflineForms: need one snapshot space per block");
  }
  OfflineForms forms;
  forms.blocks.resize(mesh.num_blocks());
  forms.edges.resize(mesh.edges().size());
  ParallelFor(mesh.num_blocks(), threads,
              [&](int b) { forms.blocks[b] = ComputeBlockForms(disc, spaces[b]); });
  ParallelFor(static_cast<int>(mesh.edges().size()), threads, [&](int id) {
    const CoarseEdge &e = mesh.edges()[id];
    if (e.interior())
    {
      forms.edges[id] = ComputeEdgeForms(disc, id, spaces[e.lower], spaces[e.upper]);
    }
  });
  return forms;
}

Eigen::MatrixXd RegionEnergyMatrix(const NestedMesh &mesh, const OfflineForms &forms,
                                   const OversampleRegion &region)
{
  const auto &blocks = region.blocks;
  const auto offs = Offsets(forms, blocks);
  auto pos = [&](int b) {
    return static_cast<int>(std::lower_bound(blocks.begin(), blocks.end(), b) - blocks.begin());
  };
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(offs.back(), offs.back());
  for (std::size_t r = 0; r < blocks.size(); r++)
  {
    const auto &e = forms.blocks[blocks[r]].energy;
    g.block(offs[r], offs[r], e.rows(), e.cols()) = e;
  }
  for (int id : region.interior_edges)
  {
    const EdgeForms &f = forms.edges.at(id);
    if (f.edge != id)
    {
      throw InvalidArgument("RegionEnergyMatrix: missing forms for edge " + std::to_string(id));
    }
    const CoarseEdge &edge = mesh.edges()[id];
    const int pl = pos(edge.lower), pu = pos(edge.upper);
    g.block(offs[pl], offs[pl], f.ll.rows(), f.ll.cols()) += f.ll;
    g.block(offs[pu], offs[pu], f.uu.rows(), f.uu.cols()) += f.uu;
    g.block(offs[pl], offs[pu], f.lu.rows(), f.lu.cols()) += f.lu;
    g.block(offs[pu], offs[pl], f.lu.cols(), f.lu.rows()) += f.lu.transpose();
  }
  return g;
}

ExtensionOperator EnergyExtend(const NestedMesh &mesh, const OfflineForms &forms, int j,
                               int layers)
{
  const OversampleRegion region = Oversample(mesh, j, layers);
  ExtensionOperator ext;
  ext.center = j;
  ext.blocks = region.blocks;
  ext.energy = RegionEnergyMatrix(mesh, forms, region);

  const auto offs = Offsets(forms, region.blocks);
  const int c = static_cast<int>(std::lower_bound(region.blocks.begin(), region.blocks.end(), j) -
                                 region.blocks.begin());
  const Eigen::Index dj = offs[c + 1] - offs[c];
  std::vector<Eigen::Index> fixed, free;
  for (Eigen::Index k = 0; k < offs.back(); k++)
  {
    (k >= offs[c] && k < offs[c + 1] ? fixed : free).push_back(k);
  }

  ext.coeffs.resize(region.blocks.size());
  ext.coeffs[c] = Eigen::MatrixXd::Identity(dj, dj);
  if (free.empty())
  {
    return ext;
  }
  const Eigen::MatrixXd gff = ext.energy(free, free);
  const Eigen::MatrixXd gfj = ext.energy(free, fixed);

  Eigen::LDLT<Eigen::MatrixXd> ldlt(gff);
  const auto nf = static_cast<double>(free.size());
  const double threshold = 1e-12 * gff.trace() / nf;
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      ldlt.vectorD().minCoeff() < threshold)
  {
    ext.ridge = threshold;
    ldlt.compute(gff + threshold * Eigen::MatrixXd::Identity(gff.rows(), gff.cols()));
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
    {
      throw NumericalFailure("energy extension: free-block system of block " +
                             std::to_string(j) + " is singular after regularization");
    }
  }
  const Eigen::MatrixXd x = -ldlt.solve(gfj);
  const double denom = std::max(gfj.norm(), std::numeric_limits<double>::min());
  ext.kkt_residual = (gff * x + gfj).norm() / denom;
  if (!x.allFinite())
  {
    throw NumericalFailure("energy extension of block " + std::to_string(j) +
                           " produced non-finite coefficients");
  }

  Eigen::Index row = 0;
  for (std::size_t r = 0; r < region.blocks.size(); r++)
  {
    if (static_cast<int>(r) == c)
    {
      continue;
    }
    const Eigen::Index d = offs[r + 1] - offs[r];
    ext.coeffs[r] = x.middleRows(row, d);
    row += d;
  }
  return ext;
}

SpectralPencil AssemblePencil(const OfflineForms &forms, const ExtensionOperator &ext)
{
  const auto offs = Offsets(forms, ext.blocks);
  const int c = static_cast<int>(std::lower_bound(ext.blocks.begin(), ext.blocks.end(),
                                                  ext.center) -
                                 ext.blocks.begin());
  const Eigen::Index dj = ext.coeffs[c].cols();
  Eigen::MatrixXd psi(offs.back(), dj);
  SpectralPencil p;
  p.block = ext.center;
  p.s = Eigen::MatrixXd::Zero(dj, dj);
  for (std::size_t r = 0; r < ext.blocks.size(); r++)
  {
    const Eigen::MatrixXd &x = ext.coeffs[r];
    psi.middleRows(offs[r], x.rows()) = x;
    p.s.noalias() += x.transpose() * forms.blocks[ext.blocks[r]].spectral_mass * x;
  }
  p.a = Symmetrized(psi.transpose() * ext.energy * psi);
  p.s = Symmetrized(p.s);
  return p;
}

Eigenpairs SolveGep(const Eigen::MatrixXd &a, const Eigen::MatrixXd &s)
{
  if (a.rows() != a.cols() || s.rows() != s.cols() || a.rows() != s.rows())
  {
    throw InvalidArgument("SolveGep: pencil matrices must be square and of equal size");
  }
  Eigenpairs out;
  const Eigen::Index n = a.rows();
  if (n == 0)
  {
    return out;
  }
  Eigen::MatrixXd sr = Symmetrized(s);
  const Eigen::MatrixXd as = Symmetrized(a);
  const double threshold = 1e-12 * std::abs(sr.trace()) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> check(sr, Eigen::EigenvaluesOnly);
  if (check.info() != Eigen::Success || check.eigenvalues()(0) < threshold)
  {
    out.ridge = threshold;
    sr += threshold * Eigen::MatrixXd::Identity(n, n);
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> ges(as, sr,
                                                                Eigen::ComputeEigenvectors |
                                                                    Eigen::Ax_lBx);
  if (ges.info() != Eigen::Success)
  {
    throw NumericalFailure("generalized eigensolver failed (S not positive definite)");
  }
  out.values = ges.eigenvalues();
  out.vectors = ges.eigenvectors();
  const double na = as.norm(), ns = sr.norm();
  for (Eigen::Index k = 0; k < n; k++)
  {
    const double lam = out.values(k);
    const Eigen::VectorXd r = as * out.vectors.col(k) - lam * (sr * out.vectors.col(k));
    const double rel = r.norm() / (na + std::abs(lam) * ns);
    out.max_residual = std::max(out.max_residual, rel);
  }
  if (!(out.max_residual <= 1e-8))
  {
    throw NumericalFailure("generalized eigenproblem residual " +
                           std::to_string(out.max_residual) + " exceeds 1e-8");
  }
  return out;
}

OfflineResult BuildOffline(const Discretization &disc, const std::vector<SnapshotSpace> &spaces,
                           int layers, int threads)
{
  const auto start = std::chrono::steady_clock::now();
  const int nb = disc.mesh().num_blocks();
  const OfflineForms forms = ComputeOfflineForms(disc, spaces, threads);
  OfflineResult res;
  res.spectra.resize(nb);
  res.kkt_residuals.resize(nb);
  res.extension_ridges.resize(nb);
  ParallelFor(nb, threads, [&](int j) {
    const ExtensionOperator ext = EnergyExtend(disc.mesh(), forms, j, layers);
    const SpectralPencil pencil = AssemblePencil(forms, ext);
    try
    {
      res.spectra[j] = SolveGep(pencil.a, pencil.s);
    }
    catch (const NumericalFailure &e)
    {
      throw NumericalFailure("block " + std::to_string(j) + ": " + e.what());
    }
    res.kkt_residuals[j] = ext.kkt_residual;
    res.extension_ridges[j] = ext.ridge;
  });
  res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

int MultiscaleSpace::dim() const
{
  int n = 0;
  for (int l : modes_per_block)
  {
    n += l;
  }
  return n;
}

MultiscaleSpace SelectSpace(const std::vector<SnapshotSpace> &spaces, const OfflineResult &off,
                            const std::vector<int> &modes_per_block)
{
  if (spaces.size() != off.spectra.size() || modes_per_block.size() != spaces.size())
  {
    throw InvalidArgument("SelectSpace: block counts do not match");
  }
  MultiscaleSpace v;
  v.lambda_star = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < spaces.size(); j++)
  {
    const Eigenpairs &ep = off.spectra[j];
    const int dj = static_cast<int>(ep.values.size());
    const int l = modes_per_block[j] < 0 ? dj : modes_per_block[j];
    if (l < 1 || l > dj)
    {
      throw InvalidArgument("SelectSpace: block " + std::to_string(j) + " has " +
                            std::to_string(dj) + " modes, requested " + std::to_string(l));
    }
    v.modes_per_block.push_back(l);
    v.coefficients.push_back(ep.vectors.leftCols(l));
    v.modes.push_back(spaces[j].basis * v.coefficients.back());
    v.eigenvalues.push_back(ep.values.head(l));
    if (l < dj)
    {
      v.lambda_star = std::min(v.lambda_star, ep.values(l));
    }
  }
  return v;
}

MultiscaleSpace SelectSpace(const std::vector<SnapshotSpace> &spaces, const OfflineResult &off,
                            int modes)
{
  return SelectSpace(spaces, off, std::vector<int>(spaces.size(), modes));
}

double BlockAnisotropy(const Discretization &disc, const Eigen::VectorXd &block_values)
{
  const int npb = disc.nodes_per_block();
  if (block_values.size() != disc.block_dofs())
  {
    throw InvalidArgument("BlockAnisotropy: expected a block-local vector");
  }
  const auto &w = disc.ordinates().weights;
  Eigen::VectorXd mean = Eigen::VectorXd::Zero(npb);
  for (int i = 0; i < disc.m(); i++)
  {
    mean += w[i] * block_values.segment(static_cast<Eigen::Index>(i) * npb, npb);
  }
  const SparseMatrix &mass = disc.reference().mass;
  double num = 0.0;
  for (int i = 0; i < disc.m(); i++)
  {
    const Eigen::VectorXd d = block_values.segment(static_cast<Eigen::Index>(i) * npb, npb) - mean;
    num += w[i] * d.dot(mass * d);
  }
  const double den = mean.dot(mass * mean);
  if (!(den > 0.0))
  {
    return std::numeric_limits<double>::infinity();
  }
  return num / den;
}

std::vector<EpsLimitRow> EpsLimitStudy(const NestedMesh &mesh, const OrdinateSet &ords,
                                       const MediaSpec &media, int j,
                                       const std::vector<double> &eps_list,
                                       const SnapshotOptions &options)
{
  if (eps_list.size() < 2)
  {
    throw InvalidArgument("EpsLimitStudy: need at least two eps values");
  }
  for (std::size_t k = 1; k < eps_list.size(); k++)
  {
    if (!(eps_list[k] < eps_list[k - 1]))
    {
      throw InvalidArgument("EpsLimitStudy: eps list must be strictly descending");
    }
  }
  const OversampleRegion region = Oversample(mesh, j, options.layers);
  const std::vector<double> cells = SampleCellMedia(media, mesh);
  std::vector<EpsLimitRow> rows;
  for (double eps : eps_list)
  {
    const Discretization disc(mesh, ords, cells, eps);
    std::vector<SnapshotSpace> spaces(mesh.num_blocks());
    ParallelFor(static_cast<int>(region.blocks.size()), options.threads, [&](int r) {
      const int b = region.blocks[r];
      spaces[b] = options.method == SnapshotMethod::Det
                      ? DetLocal(disc, b, options.rank_tol)
                      : RanLocal(disc, b, options.samples, options.seed, options.layers,
                                 options.rank_tol);
    });
    OfflineForms forms;
    forms.blocks.resize(mesh.num_blocks());
    forms.edges.resize(mesh.edges().size());
    for (int b : region.blocks)
    {
      forms.blocks[b] = ComputeBlockForms(disc, spaces[b]);
    }
    for (int id : region.interior_edges)
    {
      const CoarseEdge &e = mesh.edges()[id];
      forms.edges[id] = ComputeEdgeForms(disc, id, spaces[e.lower], spaces[e.upper]);
    }
    const ExtensionOperator ext = EnergyExtend(mesh, forms, j, options.layers);
    const SpectralPencil pencil = AssemblePencil(forms, ext);
    const Eigenpairs ep = SolveGep(pencil.a, pencil.s);
    EpsLimitRow row;
    row.eps = eps;
    row.eigenvalues = ep.values;
    row.first_mode_anisotropy = BlockAnisotropy(disc, spaces[j].basis * ep.vectors.col(0));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace gmsfem
