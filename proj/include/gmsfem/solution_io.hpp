// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_SOLUTION_IO_HPP
#define GMSFEM_SOLUTION_IO_HPP

#include <string>

#include "gmsfem/discretization.hpp"

namespace gmsfem
{

// CSV dump of a kinetic field, one row per (block, block-local node):
//   block,node,x,y,u1,...,um,ubar
// Nodes on coarse edges appear once per adjacent block since the field is discontinuous
// there.
std::string SolutionCsv(const Discretization &disc, const KineticField &u);
void WriteSolutionCsv(const std::string &path, const Discretization &disc, const KineticField &u);

}  // namespace gmsfem

#endif  // GMSFEM_SOLUTION_IO_HPP
