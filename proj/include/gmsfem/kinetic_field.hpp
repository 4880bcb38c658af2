// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_KINETIC_FIELD_HPP
#define GMSFEM_KINETIC_FIELD_HPP

#include <utility>
#include <vector>

#include <Eigen/Core>

namespace gmsfem
{

// An m-component field, continuous piecewise bilinear inside each coarse block and
// independent across blocks, over an ordered list of blocks.
//
// Coefficients are ordinate-major, then block position, then block-local node:
//   index(i, r, k) = (i * num_blocks + r) * nodes_per_block + k.
// A block-local vector (see block_values) is ordinate-major: i * nodes_per_block + k.
class KineticField
{
public:
  KineticField() = default;
  KineticField(std::vector<int> blocks, int m, int nodes_per_block)
    : blocks_(std::move(blocks)), m_(m), npb_(nodes_per_block),
      coeffs_(Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m) * blocks_.size() *
                                    nodes_per_block))
  {
  }

  const std::vector<int> &blocks() const { return blocks_; }
  int m() const { return m_; }
  int nodes_per_block() const { return npb_; }
  int num_blocks() const { return static_cast<int>(blocks_.size()); }

  Eigen::Index index(int ordinate, int block_pos, int node) const
  {
    return (static_cast<Eigen::Index>(ordinate) * num_blocks() + block_pos) * npb_ + node;
  }
  double operator()(int ordinate, int block_pos, int node) const
  {
    return coeffs_(index(ordinate, block_pos, node));
  }
  double &operator()(int ordinate, int block_pos, int node)
  {
    return coeffs_(index(ordinate, block_pos, node));
  }

  Eigen::VectorXd &coeffs() { return coeffs_; }
  const Eigen::VectorXd &coeffs() const { return coeffs_; }

  Eigen::VectorXd block_values(int block_pos) const
  {
    Eigen::VectorXd out(static_cast<Eigen::Index>(m_) * npb_);
    for (int i = 0; i < m_; i++)
    {
      out.segment(static_cast<Eigen::Index>(i) * npb_, npb_) =
          coeffs_.segment(index(i, block_pos, 0), npb_);
    }
    return out;
  }
  void set_block_values(int block_pos, const Eigen::Ref<const Eigen::VectorXd> &values)
  {
    for (int i = 0; i < m_; i++)
    {
      coeffs_.segment(index(i, block_pos, 0), npb_) =
          values.segment(static_cast<Eigen::Index>(i) * npb_, npb_);
    }
  }

  bool same_layout(const KineticField &other) const
  {
    return blocks_ == other.blocks_ && m_ == other.m_ && npb_ == other.npb_;
  }

private:
  std::vector<int> blocks_;
  int m_ = 0;
  int npb_ = 0;
  Eigen::VectorXd coeffs_;
};

}  // namespace gmsfem

#endif  // GMSFEM_KINETIC_FIELD_HPP
