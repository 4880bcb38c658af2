// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_MEDIA_HPP
#define GMSFEM_MEDIA_HPP

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "gmsfem/mesh.hpp"

namespace gmsfem
{

// Closed-form periodic coefficient
//   (2 + 1.8 sin(10 pi x)) / (2 + 1.8 cos(10 pi y)) + (2 + sin(10 pi y)) / (2 + 1.8 sin(10 pi x)).
struct OscillatoryMedia
{
};

// Axis-aligned rectangle [x0, x1] x [y0, y1], aligned with fine grid lines.
struct Inclusion
{
  double x0 = 0.0, x1 = 0.0, y0 = 0.0, y1 = 0.0;

  bool contains(const Eigen::Vector2d &p) const
  {
    return p.x() >= x0 && p.x() <= x1 && p.y() >= y0 && p.y() <= y1;
  }
};

// Piecewise-constant kappa in {background, contrast}; the coefficient is kappa^power.
struct ContrastMedia
{
  std::vector<Inclusion> inclusions;
  double background = 1.0;
  double contrast = 1.0;
  int power = 4;
};

using MediaSpec = std::variant<OscillatoryMedia, ContrastMedia>;

double EvalMedia(const MediaSpec &spec, const Eigen::Vector2d &x);

// Reproducible surrogate for a high-contrast field: one long channel crossing several
// coarse blocks plus scattered rectangular inclusions, all snapped to fine cells and
// pairwise separated, covering roughly 10-20% of the domain.
ContrastMedia DefaultContrastField(const NestedMesh &mesh, double contrast, std::uint64_t seed,
                                   int power = 4);

// Fraction of fine cells whose centre lies inside an inclusion.
double InclusionCoverage(const ContrastMedia &media, const NestedMesh &mesh);

// One coefficient value per fine cell, sampled at cell centres; index
// block * cells_per_block + cell.
std::vector<double> SampleCellMedia(const MediaSpec &spec, const NestedMesh &mesh);

// "x0 x1 y0 y1; x0 x1 y0 y1; ..." with shortest round-trip decimals.
std::string FormatInclusions(const std::vector<Inclusion> &inclusions);
std::vector<Inclusion> ParseInclusions(const std::string &text);

}  // namespace gmsfem

#endif  // GMSFEM_MEDIA_HPP
