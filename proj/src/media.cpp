// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/media.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "gmsfem/errors.hpp"
#include "gmsfem/format.hpp"

namespace gmsfem
{

namespace
{

// Rectangle in fine-cell indices, half-open [cx0, cx1) x [cy0, cy1).
struct CellBox
{
  int cx0, cx1, cy0, cy1;

  int area() const { return (cx1 - cx0) * (cy1 - cy0); }
  bool overlaps(const CellBox &o, int margin) const
  {
    return cx0 < o.cx1 + margin && o.cx0 < cx1 + margin && cy0 < o.cy1 + margin &&
           o.cy0 < cy1 + margin;
  }
};

int Uniform(std::mt19937_64 &rng, int lo, int hi)
{
  // Inclusive range; modulo keeps the draw portable across standard libraries.
  if (hi <= lo)
  {
    return lo;
  }
  return lo + static_cast<int>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

}  // namespace

double EvalMedia(const MediaSpec &spec, const Eigen::Vector2d &x)
{
  if (std::holds_alternative<OscillatoryMedia>(spec))
  {
    constexpr double pi = std::numbers::pi;
    const double s1 = std::sin(10.0 * pi * x.x());
    const double c2 = std::cos(10.0 * pi * x.y());
    const double s2 = std::sin(10.0 * pi * x.y());
    return (2.0 + 1.8 * s1) / (2.0 + 1.8 * c2) + (2.0 + s2) / (2.0 + 1.8 * s1);
  }
  const auto &c = std::get<ContrastMedia>(spec);
  const bool inside = std::any_of(c.inclusions.begin(), c.inclusions.end(),
                                  [&](const Inclusion &r) { return r.contains(x); });
  return std::pow(inside ? c.contrast : c.background, c.power);
}

ContrastMedia DefaultContrastField(const NestedMesh &mesh, double contrast, std::uint64_t seed,
                                   int power)
{
  if (!(contrast >= 1.0))
  {
    throw InvalidArgument("DefaultContrastField: contrast must be >= 1");
  }
  const int nx = mesh.ncx() * mesh.nf(), ny = mesh.ncy() * mesh.nf();
  const int total = nx * ny;
  std::mt19937_64 rng(seed);
  std::vector<CellBox> boxes;

  // Horizontal channel spanning about 70% of the width.
  {
    const int thick = std::max(1, ny / 50);
    const int len = std::max(1, (7 * nx) / 10);
    const int x0 = Uniform(rng, 0, nx - len);
    const int y0 = Uniform(rng, ny / 5, std::max(ny / 5, (4 * ny) / 5 - thick));
    boxes.push_back({x0, x0 + len, y0, std::min(ny, y0 + thick)});
  }

  const int min_side = std::max(1, nx / 50);
  const int max_side = std::max(min_side + 1, nx / 12);
  const int target = static_cast<int>(0.14 * total);
  int covered = boxes.front().area();
  for (int attempt = 0; attempt < 4000 && covered < target; attempt++)
  {
    const int w = Uniform(rng, min_side, max_side);
    const int h = Uniform(rng, min_side, max_side);
    if (w > nx || h > ny)
    {
      continue;
    }
    const int x0 = Uniform(rng, 0, nx - w);
    const int y0 = Uniform(rng, 0, ny - h);
    const CellBox box{x0, x0 + w, y0, y0 + h};
    if (covered + box.area() > static_cast<int>(0.2 * total))
    {
      continue;
    }
    const bool clash = std::any_of(boxes.begin(), boxes.end(),
                                   [&](const CellBox &b) { return b.overlaps(box, 1); });
    if (!clash)
    {
      boxes.push_back(box);
      covered += box.area();
    }
  }

  ContrastMedia media;
  media.background = 1.0;
  media.contrast = contrast;
  media.power = power;
  const double hx = mesh.hx(), hy = mesh.hy();
  for (const auto &b : boxes)
  {
    media.inclusions.push_back({b.cx0 * hx, b.cx1 * hx, b.cy0 * hy, b.cy1 * hy});
  }
  return media;
}

double InclusionCoverage(const ContrastMedia &media, const NestedMesh &mesh)
{
  int inside = 0;
  for (int b = 0; b < mesh.num_blocks(); b++)
  {
    for (int c = 0; c < mesh.cells_per_block(); c++)
    {
      const auto p = mesh.cell_center(b, c);
      if (std::any_of(media.inclusions.begin(), media.inclusions.end(),
                      [&](const Inclusion &r) { return r.contains(p); }))
      {
        inside++;
      }
    }
  }
  return static_cast<double>(inside) / mesh.num_fine_cells();
}

std::vector<double> SampleCellMedia(const MediaSpec &spec, const NestedMesh &mesh)
{
  std::vector<double> values(mesh.num_fine_cells());
  for (int b = 0; b < mesh.num_blocks(); b++)
  {
    for (int c = 0; c < mesh.cells_per_block(); c++)
    {
      const double a = EvalMedia(spec, mesh.cell_center(b, c));
      if (!(a > 0.0) || !std::isfinite(a))
      {
        throw InvalidArgument("SampleCellMedia: coefficient must be positive and finite");
      }
      values[b * mesh.cells_per_block() + c] = a;
    }
  }
  return values;
}

std::string FormatInclusions(const std::vector<Inclusion> &inclusions)
{
  std::string out;
  for (std::size_t i = 0; i < inclusions.size(); i++)
  {
    const auto &r = inclusions[i];
    if (i > 0)
    {
      out += "; ";
    }
    out += FormatDouble(r.x0) + " " + FormatDouble(r.x1) + " " + FormatDouble(r.y0) + " " +
           FormatDouble(r.y1);
  }
  return out;
}

std::vector<Inclusion> ParseInclusions(const std::string &text)
{
  std::vector<Inclusion> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';'))
  {
    if (item.find_first_not_of(" \t") == std::string::npos)
    {
      continue;
    }
    std::istringstream fields(item);
    Inclusion r;
    if (!(fields >> r.x0 >> r.x1 >> r.y0 >> r.y1) || r.x1 < r.x0 || r.y1 < r.y0)
    {
      throw InvalidArgument("ParseInclusions: malformed rectangle '" + item + "'");
    }
    std::string rest;
    if (fields >> rest)
    {
      throw InvalidArgument("ParseInclusions: trailing tokens in '" + item + "'");
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace gmsfem
