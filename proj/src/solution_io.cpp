// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/solution_io.hpp"

#include <fstream>

#include "gmsfem/errors.hpp"
#include "gmsfem/format.hpp"

namespace gmsfem
{

std::string SolutionCsv(const Discretization &disc, const KineticField &u)
{
  const int m = disc.m();
  if (u.m() != m || u.nodes_per_block() != disc.nodes_per_block())
  {
    throw InvalidArgument("solution dump: field layout does not match the discretization");
  }
  const auto &alpha = disc.ordinates().weights;
  std::string out = "block,node,x,y";
  for (int i = 1; i <= m; i++)
  {
    out += ",u" + std::to_string(i);
  }
  out += ",ubar\n";
  for (int r = 0; r < u.num_blocks(); r++)
  {
    const int block = u.blocks()[r];
    for (int k = 0; k < u.nodes_per_block(); k++)
    {
      const Eigen::Vector2d x = disc.mesh().node_point(block, k);
      out += std::to_string(block) + "," + std::to_string(k) + "," + FormatDouble(x.x()) + "," +
             FormatDouble(x.y());
      double ubar = 0.0;
      for (int i = 0; i < m; i++)
      {
        out += "," + FormatDouble(u(i, r, k));
        ubar += alpha[i] * u(i, r, k);
      }
      out += "," + FormatDouble(ubar) + "\n";
    }
  }
  return out;
}

void WriteSolutionCsv(const std::string &path, const Discretization &disc, const KineticField &u)
{
  const std::string text = SolutionCsv(disc, u);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
  {
    throw IoError("cannot write solution dump '" + path + "'");
  }
  f << text;
  if (!f)
  {
    throw IoError("write failed for solution dump '" + path + "'");
  }
}

}  // namespace gmsfem
