// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/ordinates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "gmsfem/errors.hpp"

namespace gmsfem
{

OrdinateSet BuildOrdinates(int m, double offset)
{
  if (m < 2)
  {
    throw InvalidArgument("BuildOrdinates: need at least 2 directions, got " +
                          std::to_string(m));
  }
  OrdinateSet ords;
  ords.directions.reserve(m);
  ords.weights.reserve(m);
  for (int i = 1; i <= m; i++)
  {
    const long double theta =
        2.0L * std::numbers::pi_v<long double> * (static_cast<long double>(i) - offset) / m;
    double c = static_cast<double>(std::cos(theta));
    double s = static_cast<double>(std::sin(theta));
    // Snap round-off so axis-aligned directions classify faces exactly.
    if (std::abs(c) < 1e-15)
    {
      c = 0.0;
    }
    if (std::abs(s) < 1e-15)
    {
      s = 0.0;
    }
    ords.directions.emplace_back(c, s);
  }
  // Normalise in extended precision; equal weights make the sum exact up to one ulp.
  long double total = 0.0L;
  std::vector<long double> raw(m, 1.0L / m);
  for (auto w : raw)
  {
    total += w;
  }
  for (auto w : raw)
  {
    ords.weights.push_back(static_cast<double>(w / total));
  }
  return ords;
}

Eigen::MatrixXd ScatteringMatrix(const OrdinateSet &ords)
{
  const int m = ords.size();
  Eigen::MatrixXd a(m, m);
  for (int i = 0; i < m; i++)
  {
    for (int j = 0; j < m; j++)
    {
      const double ai = ords.weights[i], aj = ords.weights[j];
      a(i, j) = (i == j) ? ai - ai * ai : -ai * aj;
    }
  }
  return a;
}

double AngularAverage(const OrdinateSet &ords, const Eigen::Ref<const Eigen::VectorXd> &u)
{
  double s = 0.0;
  for (int i = 0; i < ords.size(); i++)
  {
    s += ords.weights[i] * u(i);
  }
  return s;
}

}  // namespace gmsfem
