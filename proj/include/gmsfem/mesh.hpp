// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_MESH_HPP
#define GMSFEM_MESH_HPP

#include <array>
#include <vector>

#include <Eigen/Core>

namespace gmsfem
{

// Sides of a rectangular block, with outward normals -x, +x, -y, +y.
enum class Side : int
{
  Left = 0,
  Right = 1,
  Bottom = 2,
  Top = 3
};

inline constexpr std::array<Side, 4> kSides = {Side::Left, Side::Right, Side::Bottom,
                                               Side::Top};

Eigen::Vector2d OutwardNormal(Side side);

// A coarse edge. `lower` is the block to the left (vertical edge) or below (horizontal
// edge), `upper` the block to the right or above; -1 marks the domain boundary. The
// reference normal points from `lower` to `upper`.
struct CoarseEdge
{
  int id = -1;
  bool vertical = true;
  int lower = -1;
  int upper = -1;

  bool interior() const { return lower >= 0 && upper >= 0; }
  Eigen::Vector2d normal() const
  {
    return vertical ? Eigen::Vector2d(1.0, 0.0) : Eigen::Vector2d(0.0, 1.0);
  }
};

// Nested coarse/fine partition of the unit square.
//
// Blocks are numbered row-major from the lower-left corner. Every block carries its own
// copy of its (nf+1)^2 fine nodes, numbered row-major inside the block, so nodes on a
// coarse edge are duplicated between the two adjacent blocks. Fine cells inside a block
// are numbered row-major as well. Geometric (deduplicated) nodes are numbered row-major
// over the global (Ncx*nf+1) x (Ncy*nf+1) lattice.
//
// Edge numbering: vertical edges first, id = by*(Ncx+1) + ix, then horizontal edges,
// id = V + iy*Ncx + bx with V the vertical edge count.
class NestedMesh
{
public:
  NestedMesh(int ncx, int ncy, int nf);

  int ncx() const { return ncx_; }
  int ncy() const { return ncy_; }
  int nf() const { return nf_; }
  int num_blocks() const { return ncx_ * ncy_; }
  int nodes_per_block() const { return (nf_ + 1) * (nf_ + 1); }
  int cells_per_block() const { return nf_ * nf_; }
  int num_fine_cells() const { return num_blocks() * cells_per_block(); }

  double Hx() const { return 1.0 / ncx_; }
  double Hy() const { return 1.0 / ncy_; }
  // Coarse mesh size used in the jump penalty 1/H.
  double H() const { return Hx(); }
  double hx() const { return Hx() / nf_; }
  double hy() const { return Hy() / nf_; }

  int block_id(int bx, int by) const { return by * ncx_ + bx; }
  int block_x(int block) const { return block % ncx_; }
  int block_y(int block) const { return block / ncx_; }
  bool valid_block(int block) const { return block >= 0 && block < num_blocks(); }

  // Neighbouring block across `side`, or -1 at the domain boundary.
  int neighbor(int block, Side side) const;
  // Coarse edge id on `side` of `block`.
  int edge_of(int block, Side side) const;

  const std::vector<CoarseEdge> &edges() const { return edges_; }
  int num_interior_edges() const;

  int local_node(int ix, int iy) const { return iy * (nf_ + 1) + ix; }
  Eigen::Vector2d node_point(int block, int local) const;
  Eigen::Vector2d cell_center(int block, int cell) const;

  int num_global_nodes() const { return (ncx_ * nf_ + 1) * (ncy_ * nf_ + 1); }
  int global_node(int block, int local) const;
  Eigen::Vector2d global_node_point(int gnode) const;

  // Local node ids on `side`, ordered by increasing coordinate along the side.
  const std::vector<int> &side_nodes(Side side) const
  {
    return side_nodes_[static_cast<int>(side)];
  }

  bool operator==(const NestedMesh &other) const
  {
    return ncx_ == other.ncx_ && ncy_ == other.ncy_ && nf_ == other.nf_;
  }

private:
  int ncx_, ncy_, nf_;
  std::vector<CoarseEdge> edges_;
  std::array<std::vector<int>, 4> side_nodes_;
};

NestedMesh BuildNestedMesh(int ncx, int ncy, int nf);

// Union of whole coarse blocks around a centre block.
struct OversampleRegion
{
  int center = -1;
  std::vector<int> blocks;          // ascending block ids, contains `center`
  std::vector<int> interior_edges;  // coarse edges with both neighbours in `blocks`
};

// Blocks within Chebyshev distance `layers` of block j (in block indices), clipped to
// the domain.
OversampleRegion Oversample(const NestedMesh &mesh, int j, int layers);

// Coarse edges whose two adjacent blocks both belong to `blocks` (sorted input).
std::vector<int> InteriorEdges(const NestedMesh &mesh, const std::vector<int> &blocks);

// True when `side` of `block` lies on the boundary of the union of `blocks`.
bool OnRegionBoundary(const NestedMesh &mesh, const std::vector<int> &blocks, int block,
                      Side side);

enum class FaceFlow
{
  Inflow,
  Outflow,
  Tangential
};

// Classification of a face with outward normal n for transport direction v.
FaceFlow ClassifyFace(const Eigen::Vector2d &v, const Eigen::Vector2d &n);

// Geometric nodes on faces of the region boundary with v.n < 0 (sorted, unique). Faces
// with v.n = 0 contribute nothing.
std::vector<int> UpwindNodes(const NestedMesh &mesh, const std::vector<int> &blocks,
                             const Eigen::Vector2d &v);
// Geometric nodes on region-boundary faces with the given classification.
std::vector<int> BoundaryFaceNodes(const NestedMesh &mesh, const std::vector<int> &blocks,
                                   const Eigen::Vector2d &v, FaceFlow flow);
// All geometric nodes on the region boundary.
std::vector<int> RegionBoundaryNodes(const NestedMesh &mesh,
                                     const std::vector<int> &blocks);

}  // namespace gmsfem

#endif  // GMSFEM_MESH_HPP
