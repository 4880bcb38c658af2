// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gmsfem/errors.hpp"

namespace gmsfem
{

Eigen::Vector2d OutwardNormal(Side side)
{
  switch (side)
  {
    case Side::Left:
      return {-1.0, 0.0};
    case Side::Right:
      return {1.0, 0.0};
    case Side::Bottom:
      return {0.0, -1.0};
    case Side::Top:
      return {0.0, 1.0};
  }
  return {0.0, 0.0};
}

NestedMesh::NestedMesh(int ncx, int ncy, int nf) : ncx_(ncx), ncy_(ncy), nf_(nf)
{
  if (ncx < 1 || ncy < 1 || nf < 1)
  {
    throw InvalidArgument("NestedMesh: block counts and fine refinement must be >= 1 (got " +
                          std::to_string(ncx) + ", " + std::to_string(ncy) + ", " +
                          std::to_string(nf) + ")");
  }
  const int nv = (ncx_ + 1) * ncy_;
  const int nh = ncx_ * (ncy_ + 1);
  edges_.resize(nv + nh);
  for (int by = 0; by < ncy_; by++)
  {
    for (int ix = 0; ix <= ncx_; ix++)
    {
      auto &e = edges_[by * (ncx_ + 1) + ix];
      e.id = by * (ncx_ + 1) + ix;
      e.vertical = true;
      e.lower = (ix > 0) ? block_id(ix - 1, by) : -1;
      e.upper = (ix < ncx_) ? block_id(ix, by) : -1;
    }
  }
  for (int iy = 0; iy <= ncy_; iy++)
  {
    for (int bx = 0; bx < ncx_; bx++)
    {
      auto &e = edges_[nv + iy * ncx_ + bx];
      e.id = nv + iy * ncx_ + bx;
      e.vertical = false;
      e.lower = (iy > 0) ? block_id(bx, iy - 1) : -1;
      e.upper = (iy < ncy_) ? block_id(bx, iy) : -1;
    }
  }
  for (int t = 0; t <= nf_; t++)
  {
    side_nodes_[static_cast<int>(Side::Left)].push_back(local_node(0, t));
    side_nodes_[static_cast<int>(Side::Right)].push_back(local_node(nf_, t));
    side_nodes_[static_cast<int>(Side::Bottom)].push_back(local_node(t, 0));
    side_nodes_[static_cast<int>(Side::Top)].push_back(local_node(t, nf_));
  }
}

int NestedMesh::neighbor(int block, Side side) const
{
  const int bx = block_x(block), by = block_y(block);
  switch (side)
  {
    case Side::Left:
      return bx > 0 ? block_id(bx - 1, by) : -1;
    case Side::Right:
      return bx + 1 < ncx_ ? block_id(bx + 1, by) : -1;
    case Side::Bottom:
      return by > 0 ? block_id(bx, by - 1) : -1;
    case Side::Top:
      return by + 1 < ncy_ ? block_id(bx, by + 1) : -1;
  }
  return -1;
}

int NestedMesh::edge_of(int block, Side side) const
{
  const int bx = block_x(block), by = block_y(block);
  const int nv = (ncx_ + 1) * ncy_;
  switch (side)
  {
    case Side::Left:
      return by * (ncx_ + 1) + bx;
    case Side::Right:
      return by * (ncx_ + 1) + bx + 1;
    case Side::Bottom:
      return nv + by * ncx_ + bx;
    case Side::Top:
      return nv + (by + 1) * ncx_ + bx;
  }
  return -1;
}

int NestedMesh::num_interior_edges() const
{
  return static_cast<int>(
      std::count_if(edges_.begin(), edges_.end(), [](const auto &e) { return e.interior(); }));
}

Eigen::Vector2d NestedMesh::node_point(int block, int local) const
{
  const int ix = local % (nf_ + 1), iy = local / (nf_ + 1);
  return {block_x(block) * Hx() + ix * hx(), block_y(block) * Hy() + iy * hy()};
}

Eigen::Vector2d NestedMesh::cell_center(int block, int cell) const
{
  const int cx = cell % nf_, cy = cell / nf_;
  return {block_x(block) * Hx() + (cx + 0.5) * hx(), block_y(block) * Hy() + (cy + 0.5) * hy()};
}

int NestedMesh::global_node(int block, int local) const
{
  const int ix = block_x(block) * nf_ + local % (nf_ + 1);
  const int iy = block_y(block) * nf_ + local / (nf_ + 1);
  return iy * (ncx_ * nf_ + 1) + ix;
}

Eigen::Vector2d NestedMesh::global_node_point(int gnode) const
{
  const int nx = ncx_ * nf_ + 1;
  return {(gnode % nx) * hx(), (gnode / nx) * hy()};
}

NestedMesh BuildNestedMesh(int ncx, int ncy, int nf)
{
  return NestedMesh(ncx, ncy, nf);
}

OversampleRegion Oversample(const NestedMesh &mesh, int j, int layers)
{
  if (!mesh.valid_block(j))
  {
    throw InvalidArgument("Oversample: invalid block id " + std::to_string(j));
  }
  if (layers < 0)
  {
    throw InvalidArgument("Oversample: layers must be >= 0");
  }
  OversampleRegion region;
  region.center = j;
  const int bx = mesh.block_x(j), by = mesh.block_y(j);
  for (int y = std::max(0, by - layers); y <= std::min(mesh.ncy() - 1, by + layers); y++)
  {
    for (int x = std::max(0, bx - layers); x <= std::min(mesh.ncx() - 1, bx + layers); x++)
    {
      region.blocks.push_back(mesh.block_id(x, y));
    }
  }
  region.interior_edges = InteriorEdges(mesh, region.blocks);
  return region;
}

std::vector<int> InteriorEdges(const NestedMesh &mesh, const std::vector<int> &blocks)
{
  auto in = [&](int b) { return b >= 0 && std::binary_search(blocks.begin(), blocks.end(), b); };
  std::vector<int> out;
  for (const auto &e : mesh.edges())
  {
    if (e.interior() && in(e.lower) && in(e.upper))
    {
      out.push_back(e.id);
    }
  }
  return out;
}

bool OnRegionBoundary(const NestedMesh &mesh, const std::vector<int> &blocks, int block,
                      Side side)
{
  const int nb = mesh.neighbor(block, side);
  return nb < 0 || !std::binary_search(blocks.begin(), blocks.end(), nb);
}

FaceFlow ClassifyFace(const Eigen::Vector2d &v, const Eigen::Vector2d &n)
{
  const double vn = v.dot(n);
  const double tol = 1e-12 * v.norm();
  if (vn < -tol)
  {
    return FaceFlow::Inflow;
  }
  if (vn > tol)
  {
    return FaceFlow::Outflow;
  }
  return FaceFlow::Tangential;
}

std::vector<int> BoundaryFaceNodes(const NestedMesh &mesh, const std::vector<int> &blocks,
                                   const Eigen::Vector2d &v, FaceFlow flow)
{
  std::vector<int> nodes;
  for (int b : blocks)
  {
    for (Side s : kSides)
    {
      if (OnRegionBoundary(mesh, blocks, b, s) && ClassifyFace(v, OutwardNormal(s)) == flow)
      {
        for (int k : mesh.side_nodes(s))
        {
          nodes.push_back(mesh.global_node(b, k));
        }
      }
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

std::vector<int> UpwindNodes(const NestedMesh &mesh, const std::vector<int> &blocks,
                             const Eigen::Vector2d &v)
{
  return BoundaryFaceNodes(mesh, blocks, v, FaceFlow::Inflow);
}

std::vector<int> RegionBoundaryNodes(const NestedMesh &mesh, const std::vector<int> &blocks)
{
  std::vector<int> nodes;
  for (int b : blocks)
  {
    for (Side s : kSides)
    {
      if (OnRegionBoundary(mesh, blocks, b, s))
      {
        for (int k : mesh.side_nodes(s))
        {
          nodes.push_back(mesh.global_node(b, k));
        }
      }
    }
  }
  std::sort(nodes.begin(), nodes.end());
  nodes.erase(std::unique(nodes.begin(), nodes.end()), nodes.end());
  return nodes;
}

}  // namespace gmsfem
