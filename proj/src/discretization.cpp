// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/discretization.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <string>

#include "gmsfem/errors.hpp"
#include "gmsfem/sparse_solver.hpp"

namespace gmsfem
{

namespace
{

using Triplets = std::vector<Eigen::Triplet<double>>;

// Two-point Gauss rule on [0, 1].
constexpr double kGaussLo = 0.5 - 0.28867513459481288225;
constexpr double kGaussHi = 0.5 + 0.28867513459481288225;
constexpr std::array<double, 2> kGauss = {kGaussLo, kGaussHi};

// Q1 shape functions on the unit square, node a = ix + 2 iy.
double Shape(int a, double s, double t)
{
  const double fx = (a & 1) ? s : 1.0 - s;
  const double fy = (a & 2) ? t : 1.0 - t;
  return fx * fy;
}
double ShapeDs(int a, double t)
{
  const double fy = (a & 2) ? t : 1.0 - t;
  return ((a & 1) ? 1.0 : -1.0) * fy;
}
double ShapeDt(int a, double s)
{
  const double fx = (a & 1) ? s : 1.0 - s;
  return ((a & 2) ? 1.0 : -1.0) * fx;
}

// 1D P1 mass on a uniform segment of n cells of length h.
Eigen::MatrixXd EdgeMass(int n, double h)
{
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n + 1, n + 1);
  for (int c = 0; c < n; c++)
  {
    m(c, c) += h / 3.0;
    m(c + 1, c + 1) += h / 3.0;
    m(c, c + 1) += h / 6.0;
    m(c + 1, c) += h / 6.0;
  }
  return m;
}

// Maps block ids to their position in an ordered block list.
class BlockIndex
{
public:
  BlockIndex(const NestedMesh &mesh, const std::vector<int> &blocks)
    : pos_(mesh.num_blocks(), -1)
  {
    for (std::size_t r = 0; r < blocks.size(); r++)
    {
      const int b = blocks[r];
      if (!mesh.valid_block(b))
      {
        throw InvalidArgument("block list contains invalid block id " + std::to_string(b));
      }
      if (r > 0 && blocks[r - 1] >= b)
      {
        throw InvalidArgument("block list must be strictly ascending");
      }
      pos_[b] = static_cast<int>(r);
    }
  }
  int operator()(int block) const { return block < 0 ? -1 : pos_[block]; }

private:
  std::vector<int> pos_;
};

// Adds `scale * m` to the (row_off, col_off) block of the triplet list.
void AddSparse(Triplets &t, const SparseMatrix &m, Eigen::Index row_off, Eigen::Index col_off,
               double scale)
{
  for (int k = 0; k < m.outerSize(); k++)
  {
    for (SparseMatrix::InnerIterator it(m, k); it; ++it)
    {
      t.emplace_back(row_off + it.row(), col_off + it.col(), scale * it.value());
    }
  }
}

// Adds `scale * e` between side nodes: rows are `rows` of the test block, columns `cols`
// of the trial block.
void AddSideCoupling(Triplets &t, const Eigen::MatrixXd &e, const std::vector<int> &rows,
                     const std::vector<int> &cols, Eigen::Index row_off, Eigen::Index col_off,
                     double scale)
{
  for (std::size_t a = 0; a < rows.size(); a++)
  {
    for (std::size_t b = 0; b < cols.size(); b++)
    {
      const double v = e(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
      if (v != 0.0)
      {
        t.emplace_back(row_off + rows[a], col_off + cols[b], scale * v);
      }
    }
  }
}

SparseMatrix FromTriplets(Eigen::Index n, const Triplets &t)
{
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  m.makeCompressed();
  return m;
}

Side Opposite(Side s)
{
  switch (s)
  {
    case Side::Left:
      return Side::Right;
    case Side::Right:
      return Side::Left;
    case Side::Bottom:
      return Side::Top;
    case Side::Top:
      return Side::Bottom;
  }
  return s;
}

}  // namespace

InflowData CosineInflow()
{
  return [](int, const Eigen::Vector2d &x) {
    return std::cos(2.0 * std::numbers::pi * (x.x() + x.y())) + 1.0;
  };
}

InflowData ConstantInflow(double value)
{
  return [value](int, const Eigen::Vector2d &) { return value; };
}

ReferenceBlock::ReferenceBlock(const NestedMesh &mesh)
{
  const int nf = mesh.nf();
  const int npb = mesh.nodes_per_block();
  const double hx = mesh.hx(), hy = mesh.hy();

  Eigen::Matrix4d ke = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d txe = Eigen::Matrix4d::Zero();
  Eigen::Matrix4d tye = Eigen::Matrix4d::Zero();
  cell_mass.setZero();
  for (double s : kGauss)
  {
    for (double q : kGauss)
    {
      const double w = 0.25 * hx * hy;
      for (int a = 0; a < 4; a++)
      {
        const double dxa = ShapeDs(a, q) / hx, dya = ShapeDt(a, s) / hy;
        for (int b = 0; b < 4; b++)
        {
          const double dxb = ShapeDs(b, q) / hx, dyb = ShapeDt(b, s) / hy;
          cell_mass(a, b) += w * Shape(a, s, q) * Shape(b, s, q);
          ke(a, b) += w * (dxa * dxb + dya * dyb);
          txe(a, b) += w * Shape(b, s, q) * dxa;
          tye(a, b) += w * Shape(b, s, q) * dya;
        }
      }
    }
  }

  cell_nodes.resize(mesh.cells_per_block());
  Triplets tm, tk, tx, ty;
  for (int cy = 0; cy < nf; cy++)
  {
    for (int cx = 0; cx < nf; cx++)
    {
      auto &nodes = cell_nodes[cy * nf + cx];
      for (int a = 0; a < 4; a++)
      {
        nodes[a] = mesh.local_node(cx + (a & 1), cy + ((a & 2) ? 1 : 0));
      }
      for (int a = 0; a < 4; a++)
      {
        for (int b = 0; b < 4; b++)
        {
          tm.emplace_back(nodes[a], nodes[b], cell_mass(a, b));
          tk.emplace_back(nodes[a], nodes[b], ke(a, b));
          tx.emplace_back(nodes[a], nodes[b], txe(a, b));
          ty.emplace_back(nodes[a], nodes[b], tye(a, b));
        }
      }
    }
  }
  mass = FromTriplets(npb, tm);
  stiffness = FromTriplets(npb, tk);
  transport_x = FromTriplets(npb, tx);
  transport_y = FromTriplets(npb, ty);

  edge_mass_x = EdgeMass(nf, hx);
  edge_mass_y = EdgeMass(nf, hy);
  for (Side s : kSides)
  {
    const bool vertical = (s == Side::Left || s == Side::Right);
    const auto &e = vertical ? edge_mass_y : edge_mass_x;
    Triplets ts;
    AddSideCoupling(ts, e, mesh.side_nodes(s), mesh.side_nodes(s), 0, 0, 1.0);
    side_mass[static_cast<int>(s)] = FromTriplets(npb, ts);
  }
}

Discretization::Discretization(const NestedMesh &mesh, const OrdinateSet &ords,
                               const MediaSpec &media, double eps)
  : Discretization(mesh, ords, SampleCellMedia(media, mesh), eps)
{
}

Discretization::Discretization(const NestedMesh &mesh, const OrdinateSet &ords,
                               std::vector<double> cell_media, double eps)
  : mesh_(mesh), ords_(ords), cell_media_(std::move(cell_media)), eps_(eps)
{
  Init();
}

void Discretization::Init()
{
  if (!(eps_ > 0.0) || !std::isfinite(eps_))
  {
    throw InvalidArgument("Discretization: eps must be positive and finite");
  }
  if (ords_.size() < 1 || ords_.weights.size() != ords_.directions.size())
  {
    throw InvalidArgument("Discretization: malformed ordinate set");
  }
  if (static_cast<int>(cell_media_.size()) != mesh_.num_fine_cells())
  {
    throw InvalidArgument("Discretization: media has " + std::to_string(cell_media_.size()) +
                          " cell values, mesh has " + std::to_string(mesh_.num_fine_cells()));
  }
  for (double a : cell_media_)
  {
    if (!(a > 0.0) || !std::isfinite(a))
    {
      throw InvalidArgument("Discretization: media values must be positive and finite");
    }
  }
  scattering_ = ScatteringMatrix(ords_);
  ref_ = ReferenceBlock(mesh_);

  const int cpb = mesh_.cells_per_block();
  inverse_media_mass_.resize(mesh_.num_blocks());
  for (int b = 0; b < mesh_.num_blocks(); b++)
  {
    Triplets t;
    t.reserve(16 * cpb);
    for (int c = 0; c < cpb; c++)
    {
      const double inv = 1.0 / cell_media_[b * cpb + c];
      const auto &nodes = ref_.cell_nodes[c];
      for (int a = 0; a < 4; a++)
      {
        for (int q = 0; q < 4; q++)
        {
          t.emplace_back(nodes[a], nodes[q], inv * ref_.cell_mass(a, q));
        }
      }
    }
    inverse_media_mass_[b] = FromTriplets(nodes_per_block(), t);
  }
}

std::vector<int> Discretization::all_blocks() const
{
  std::vector<int> blocks(mesh_.num_blocks());
  for (int b = 0; b < mesh_.num_blocks(); b++)
  {
    blocks[b] = b;
  }
  return blocks;
}

SparseMatrix Discretization::TransportMatrix(const std::vector<int> &blocks) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  Triplets t;
  for (int i = 0; i < m(); i++)
  {
    const Eigen::Vector2d &v = ords_.directions[i];
    const double alpha = ords_.weights[i];
    const SparseMatrix volume = -(v.x() * ref_.transport_x + v.y() * ref_.transport_y);
    for (int r = 0; r < nb; r++)
    {
      const int b = blocks[r];
      const Eigen::Index off = (static_cast<Eigen::Index>(i) * nb + r) * npb;
      AddSparse(t, volume, off, off, alpha);
      for (Side s : kSides)
      {
        const Eigen::Vector2d n = OutwardNormal(s);
        const int nbr = pos(mesh_.neighbor(b, s));
        if (nbr < 0)
        {
          if (ClassifyFace(v, n) == FaceFlow::Outflow)
          {
            AddSparse(t, ref_.side_mass[static_cast<int>(s)], off, off, alpha * v.dot(n));
          }
          continue;
        }
        // Interior edges are visited once, from the lower/left block.
        if (s != Side::Right && s != Side::Top)
        {
          continue;
        }
        const FaceFlow flow = ClassifyFace(v, n);
        if (flow == FaceFlow::Tangential)
        {
          continue;
        }
        const double vn = std::abs(v.dot(n));
        const Eigen::MatrixXd &e = (s == Side::Right) ? ref_.edge_mass_y : ref_.edge_mass_x;
        const Eigen::Index off_nbr = (static_cast<Eigen::Index>(i) * nb + nbr) * npb;
        const auto &own_nodes = mesh_.side_nodes(s);
        const auto &nbr_nodes = mesh_.side_nodes(Opposite(s));
        // Upwind trace u+ tested against the jump (w+ - w-) |v.n|.
        const bool own_upwind = (flow == FaceFlow::Outflow);
        const Eigen::Index up_off = own_upwind ? off : off_nbr;
        const Eigen::Index down_off = own_upwind ? off_nbr : off;
        const auto &up_nodes = own_upwind ? own_nodes : nbr_nodes;
        const auto &down_nodes = own_upwind ? nbr_nodes : own_nodes;
        AddSideCoupling(t, e, up_nodes, up_nodes, up_off, up_off, alpha * vn);
        AddSideCoupling(t, e, down_nodes, up_nodes, down_off, up_off, -alpha * vn);
      }
    }
  }
  return FromTriplets(num_dofs(blocks), t);
}

SparseMatrix Discretization::ScatteringMatrixForm(const std::vector<int> &blocks) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  Triplets t;
  for (int r = 0; r < nb; r++)
  {
    const SparseMatrix &mc = inverse_media_mass_[blocks[r]];
    for (int i = 0; i < m(); i++)
    {
      for (int j = 0; j < m(); j++)
      {
        const double aij = scattering_(i, j) / eps_;
        if (aij == 0.0)
        {
          continue;
        }
        AddSparse(t, mc, (static_cast<Eigen::Index>(i) * nb + r) * npb,
                  (static_cast<Eigen::Index>(j) * nb + r) * npb, aij);
      }
    }
  }
  return FromTriplets(num_dofs(blocks), t);
}

SparseMatrix Discretization::MassMatrix(const std::vector<int> &blocks) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  Triplets t;
  for (int i = 0; i < m(); i++)
  {
    for (int r = 0; r < nb; r++)
    {
      const Eigen::Index off = (static_cast<Eigen::Index>(i) * nb + r) * npb;
      AddSparse(t, ref_.mass, off, off, ords_.weights[i]);
    }
  }
  return FromTriplets(num_dofs(blocks), t);
}

SparseMatrix Discretization::CollisionMatrix(const std::vector<int> &blocks) const
{
  SparseMatrix l = ScatteringMatrixForm(blocks) + eps_ * MassMatrix(blocks);
  l.makeCompressed();
  return l;
}

SparseMatrix Discretization::SystemMatrix(const std::vector<int> &blocks) const
{
  SparseMatrix k = TransportMatrix(blocks) + CollisionMatrix(blocks);
  k.makeCompressed();
  return k;
}

namespace
{

// Calls f(ordinate, block_pos, side nodes, |v.n|) for every inflow face of the region.
template <typename F>
void ForEachInflowFace(const NestedMesh &mesh, const OrdinateSet &ords,
                       const std::vector<int> &blocks, F &&f)
{
  for (int i = 0; i < ords.size(); i++)
  {
    const Eigen::Vector2d &v = ords.directions[i];
    for (std::size_t r = 0; r < blocks.size(); r++)
    {
      for (Side s : kSides)
      {
        const Eigen::Vector2d n = OutwardNormal(s);
        if (OnRegionBoundary(mesh, blocks, blocks[r], s) &&
            ClassifyFace(v, n) == FaceFlow::Inflow)
        {
          f(i, static_cast<int>(r), s, std::abs(v.dot(n)));
        }
      }
    }
  }
}

}  // namespace

Eigen::VectorXd Discretization::InflowLoad(const std::vector<int> &blocks,
                                           const InflowData &g) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  Eigen::VectorXd load = Eigen::VectorXd::Zero(num_dofs(blocks));
  ForEachInflowFace(mesh_, ords_, blocks, [&](int i, int r, Side s, double vn) {
    const auto &nodes = mesh_.side_nodes(s);
    const Eigen::Index off = (static_cast<Eigen::Index>(i) * nb + r) * npb;
    const double scale = ords_.weights[i] * vn;
    for (std::size_t k = 0; k + 1 < nodes.size(); k++)
    {
      const Eigen::Vector2d p0 = mesh_.node_point(blocks[r], nodes[k]);
      const Eigen::Vector2d p1 = mesh_.node_point(blocks[r], nodes[k + 1]);
      const double w = 0.5 * (p1 - p0).norm();
      for (double xi : kGauss)
      {
        const double gv = g(i, p0 + xi * (p1 - p0));
        load(off + nodes[k]) += scale * w * gv * (1.0 - xi);
        load(off + nodes[k + 1]) += scale * w * gv * xi;
      }
    }
  });
  return load;
}

double Discretization::InflowEnergy(const std::vector<int> &blocks, const InflowData &g) const
{
  const BlockIndex pos(mesh_, blocks);
  double total = 0.0;
  ForEachInflowFace(mesh_, ords_, blocks, [&](int i, int r, Side s, double vn) {
    const auto &nodes = mesh_.side_nodes(s);
    for (std::size_t k = 0; k + 1 < nodes.size(); k++)
    {
      const Eigen::Vector2d p0 = mesh_.node_point(blocks[r], nodes[k]);
      const Eigen::Vector2d p1 = mesh_.node_point(blocks[r], nodes[k + 1]);
      const double w = 0.5 * (p1 - p0).norm();
      for (double xi : kGauss)
      {
        const double gv = g(i, p0 + xi * (p1 - p0));
        total += ords_.weights[i] * vn * w * gv * gv;
      }
    }
  });
  return total;
}

SparseMatrix Discretization::JumpMatrix(const std::vector<int> &blocks) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  Triplets t;
  for (int i = 0; i < m(); i++)
  {
    const Eigen::Vector2d &v = ords_.directions[i];
    const double alpha = ords_.weights[i];
    for (int r = 0; r < nb; r++)
    {
      const int b = blocks[r];
      const Eigen::Index off = (static_cast<Eigen::Index>(i) * nb + r) * npb;
      for (Side s : kSides)
      {
        const double vn = std::abs(v.dot(OutwardNormal(s)));
        const int nbr = pos(mesh_.neighbor(b, s));
        if (nbr < 0)
        {
          AddSparse(t, ref_.side_mass[static_cast<int>(s)], off, off, 0.5 * alpha * vn);
          continue;
        }
        if (s != Side::Right && s != Side::Top)
        {
          continue;
        }
        const Eigen::MatrixXd &e = (s == Side::Right) ? ref_.edge_mass_y : ref_.edge_mass_x;
        const Eigen::Index off_nbr = (static_cast<Eigen::Index>(i) * nb + nbr) * npb;
        const auto &a = mesh_.side_nodes(s);
        const auto &c = mesh_.side_nodes(Opposite(s));
        const double w = 0.5 * alpha * vn;
        AddSideCoupling(t, e, a, a, off, off, w);
        AddSideCoupling(t, e, c, c, off_nbr, off_nbr, w);
        AddSideCoupling(t, e, a, c, off, off_nbr, -w);
        AddSideCoupling(t, e, c, a, off_nbr, off, -w);
      }
    }
  }
  return FromTriplets(num_dofs(blocks), t);
}

SparseMatrix Discretization::TraceMatrix(const std::vector<int> &blocks) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  Triplets t;
  for (int i = 0; i < m(); i++)
  {
    const Eigen::Vector2d &v = ords_.directions[i];
    for (int r = 0; r < nb; r++)
    {
      const Eigen::Index off = (static_cast<Eigen::Index>(i) * nb + r) * npb;
      for (Side s : kSides)
      {
        const double vn = std::abs(v.dot(OutwardNormal(s)));
        AddSparse(t, ref_.side_mass[static_cast<int>(s)], off, off,
                  0.5 * ords_.weights[i] * vn);
      }
    }
  }
  return FromTriplets(num_dofs(blocks), t);
}

SparseMatrix Discretization::EnergyMatrix(const std::vector<int> &blocks) const
{
  const BlockIndex pos(mesh_, blocks);
  const int nb = static_cast<int>(blocks.size());
  const int npb = nodes_per_block();
  const double inv_h = 1.0 / mesh_.H();
  Triplets t;
  for (int i = 0; i < m(); i++)
  {
    const double alpha = ords_.weights[i];
    for (int r = 0; r < nb; r++)
    {
      const int b = blocks[r];
      const Eigen::Index off = (static_cast<Eigen::Index>(i) * nb + r) * npb;
      AddSparse(t, ref_.stiffness, off, off, alpha);
      for (Side s : {Side::Right, Side::Top})
      {
        const int nbr = pos(mesh_.neighbor(b, s));
        if (nbr < 0)
        {
          continue;
        }
        const Eigen::MatrixXd &e = (s == Side::Right) ? ref_.edge_mass_y : ref_.edge_mass_x;
        const Eigen::Index off_nbr = (static_cast<Eigen::Index>(i) * nb + nbr) * npb;
        const auto &a = mesh_.side_nodes(s);
        const auto &c = mesh_.side_nodes(Opposite(s));
        const double w = alpha * inv_h;
        AddSideCoupling(t, e, a, a, off, off, w);
        AddSideCoupling(t, e, c, c, off_nbr, off_nbr, w);
        AddSideCoupling(t, e, a, c, off, off_nbr, -w);
        AddSideCoupling(t, e, c, a, off_nbr, off, -w);
      }
    }
  }
  SparseMatrix energy = FromTriplets(num_dofs(blocks), t) + ScatteringMatrixForm(blocks);
  energy.makeCompressed();
  return energy;
}

SparseMatrix Discretization::BlockEnergyMatrix(int block) const
{
  const int npb = nodes_per_block();
  Triplets t;
  for (int i = 0; i < m(); i++)
  {
    AddSparse(t, ref_.stiffness, i * npb, i * npb, ords_.weights[i]);
  }
  SparseMatrix energy = FromTriplets(block_dofs(), t) + ScatteringMatrixForm({block});
  energy.makeCompressed();
  return energy;
}

SparseMatrix Discretization::BlockSpectralMassMatrix(int block) const
{
  SparseMatrix s = TraceMatrix({block}) + CollisionMatrix({block});
  s.makeCompressed();
  return s;
}

Eigen::MatrixXd Discretization::WeightedEdgeMass(Side side) const
{
  const bool vertical = (side == Side::Left || side == Side::Right);
  const Eigen::MatrixXd &e = vertical ? ref_.edge_mass_y : ref_.edge_mass_x;
  const Eigen::Index n = e.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(m() * n, m() * n);
  for (int i = 0; i < m(); i++)
  {
    out.block(i * n, i * n, n, n) = ords_.weights[i] * e;
  }
  return out;
}

KineticField SolveFine(const Discretization &disc, const InflowData &g, FineSolveReport *report)
{
  const auto start = std::chrono::steady_clock::now();
  const std::vector<int> blocks = disc.all_blocks();
  const SparseMatrix k = disc.SystemMatrix(blocks);
  const Eigen::VectorXd f = disc.InflowLoad(blocks, g);
  KineticField u = disc.zero_field(blocks);
  SparseDirectSolver solver(k, "fine system");
  u.coeffs() = solver.Solve(f);

  const double fnorm = f.norm();
  const double res = (k * u.coeffs() - f).norm();
  const double rel = fnorm > 0.0 ? res / fnorm : res;
  if (!std::isfinite(rel) || rel > 1e-8)
  {
    throw NumericalFailure("fine solve: relative residual " + std::to_string(rel) +
                           " exceeds tolerance");
  }
  if (report != nullptr)
  {
    report->relative_residual = rel;
    report->seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  return u;
}

}  // namespace gmsfem
