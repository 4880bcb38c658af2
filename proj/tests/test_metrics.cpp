// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>

#include "gmsfem/errors.hpp"
#include "gmsfem/metrics.hpp"
#include "support.hpp"

using namespace gmsfem;

namespace
{

using Fn = std::function<double(int, const Eigen::Vector2d &)>;

KineticField Interpolate(const Discretization &disc, const Fn &f)
{
  const NestedMesh &mesh = disc.mesh();
  KineticField u = disc.zero_field(disc.all_blocks());
  for (int i = 0; i < disc.m(); i++)
  {
    for (int b = 0; b < mesh.num_blocks(); b++)
    {
      for (int k = 0; k < mesh.nodes_per_block(); k++)
      {
        u(i, b, k) = f(i, mesh.node_point(b, k));
      }
    }
  }
  return u;
}

// Sum over cells of int (bilinear interpolant of nodal data)^2, 3x3 Gauss per cell,
// evaluated with plain nested loops.
double SquaredL2(const NestedMesh &mesh, const std::function<double(int, int)> &nodal)
{
  const double g[3] = {0.5 - 0.5 * std::sqrt(0.6), 0.5, 0.5 + 0.5 * std::sqrt(0.6)};
  const double w[3] = {5.0 / 18, 8.0 / 18, 5.0 / 18};
  const int n1 = mesh.nf() + 1;
  double total = 0.0;
  for (int b = 0; b < mesh.num_blocks(); b++)
  {
    for (int cy = 0; cy < mesh.nf(); cy++)
    {
      for (int cx = 0; cx < mesh.nf(); cx++)
      {
        const double v00 = nodal(b, cy * n1 + cx), v10 = nodal(b, cy * n1 + cx + 1);
        const double v01 = nodal(b, (cy + 1) * n1 + cx), v11 = nodal(b, (cy + 1) * n1 + cx + 1);
        for (int a = 0; a < 3; a++)
        {
          for (int c = 0; c < 3; c++)
          {
            const double s = g[a], t = g[c];
            const double v = (1 - s) * (1 - t) * v00 + s * (1 - t) * v10 + (1 - s) * t * v01 + s * t * v11;
            total += w[a] * w[c] * mesh.hx() * mesh.hy() * v * v;
          }
        }
      }
    }
  }
  return total;
}

}  // namespace

TEST_CASE("norm ordering and zero field")
{
  std::mt19937_64 rng(31);
  const NestedMesh mesh(3, 2, 3);
  const Discretization disc(mesh, BuildOrdinates(6, 0.25), OscillatoryMedia{}, 2e-2);
  const Norms norms(disc);
  const KineticField zero = disc.zero_field(disc.all_blocks());
  const NormReport z = norms.Report(zero);
  CHECK(z.v == 0.0);
  CHECK(z.w == 0.0);
  CHECK(z.tilde_v == 0.0);
  CHECK(z.tilde_w == 0.0);
  CHECK(z.energy == 0.0);

  for (int trial = 0; trial < 50; trial++)
  {
    KineticField u = disc.zero_field(disc.all_blocks());
    u.coeffs() = testing::RandomVector(u.coeffs().size(), rng);
    const NormReport r = norms.Report(u);
    CHECK(r.v >= 0.0);
    CHECK(r.w >= 0.0);
    CHECK(r.energy >= 0.0);
    CHECK(r.tilde_v >= r.v);
    CHECK(r.tilde_w >= r.w);
    CHECK(norms.Collision(u) >= 0.0);
    CHECK(r.tilde_v * r.tilde_v == doctest::Approx(r.v * r.v + norms.Collision(u)).epsilon(1e-12));
    // Homogeneity.
    KineticField s = u;
    s.coeffs() *= -3.0;
    CHECK(norms.V(s) == doctest::Approx(3.0 * r.v).epsilon(1e-13));
    CHECK(norms.Energy(s) == doctest::Approx(3.0 * r.energy).epsilon(1e-13));
  }

  // Triangle inequality.
  for (int trial = 0; trial < 20; trial++)
  {
    KineticField a = disc.zero_field(disc.all_blocks()), b = a, c = a;
    a.coeffs() = testing::RandomVector(a.coeffs().size(), rng);
    b.coeffs() = testing::RandomVector(b.coeffs().size(), rng);
    c.coeffs() = a.coeffs() + b.coeffs();
    CHECK(norms.TildeW(c) <= norms.TildeW(a) + norms.TildeW(b) + 1e-12);
    CHECK(norms.Energy(c) <= norms.Energy(a) + norms.Energy(b) + 1e-12);
  }
}

TEST_CASE("norms of the isotropic constant")
{
  const NestedMesh mesh(2, 3, 2);
  const auto ords = BuildOrdinates(6, 0.25);
  const Discretization disc(mesh, ords, OscillatoryMedia{}, 1e-2);
  const Norms norms(disc);
  KineticField one = disc.zero_field(disc.all_blocks());
  one.coeffs().setOnes();

  // Only the outer boundary carries a jump: 1/2 sum_i alpha_i (2|v_x| + 2|v_y|).
  double perimeter = 0.0;
  for (int i = 0; i < 6; i++)
  {
    perimeter += ords.weights[i] * (std::abs(ords.directions[i].x()) + std::abs(ords.directions[i].y()));
  }
  CHECK(norms.V(one) * norms.V(one) == doctest::Approx(perimeter).epsilon(1e-12));

  // Gradient, interior jumps and scattering all vanish; l(u, u) keeps the eps mass.
  CHECK(norms.Energy(one) < 1e-12);
  CHECK(norms.Collision(one) == doctest::Approx(1e-2).epsilon(1e-12));
}

TEST_CASE("relative errors")
{
  const NestedMesh mesh(3, 3, 4);
  const auto ords = BuildOrdinates(6, 0.25);
  const Discretization disc(mesh, ords, OscillatoryMedia{}, 1e-2);
  const Fn ref = [&](int i, const Eigen::Vector2d &x) {
    return 1.0 + 0.3 * ords.directions[i].x() * std::sin(3 * x.x()) + x.y() * x.y();
  };
  const KineticField uh = Interpolate(disc, ref);

  const auto same = ErrorsE1E2(disc, uh, uh);
  CHECK(same.e1 == 0.0);
  CHECK(same.e2 == 0.0);

  const auto zero = ErrorsE1E2(disc, uh, disc.zero_field(disc.all_blocks()));
  CHECK(zero.e1 == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(zero.e2 == doctest::Approx(1.0).epsilon(1e-15));

  CHECK_THROWS_AS(ErrorsE1E2(disc, disc.zero_field(disc.all_blocks()), uh), InvalidArgument);

  // Isotropic perturbation: e1 and e2 both reduce to ||drho|| over the respective norms.
  const auto drho = [](const Eigen::Vector2d &x) { return 0.05 * std::cos(2 * x.x() + x.y()); };
  const KineticField up = Interpolate(disc, [&](int i, const Eigen::Vector2d &x) { return ref(i, x) + drho(x); });
  const auto e = ErrorsE1E2(disc, uh, up);

  const double d2 = SquaredL2(mesh, [&](int b, int k) { return drho(mesh.node_point(b, k)); });
  const double avg2 = SquaredL2(mesh, [&](int b, int k) {
    double s = 0.0;
    for (int i = 0; i < 6; i++)
    {
      s += ords.weights[i] * ref(i, mesh.node_point(b, k));
    }
    return s;
  });
  double all2 = 0.0;
  for (int i = 0; i < 6; i++)
  {
    all2 += ords.weights[i] * SquaredL2(mesh, [&](int b, int k) { return ref(i, mesh.node_point(b, k)); });
  }
  CHECK(e.e2 == doctest::Approx(std::sqrt(d2 / avg2)).epsilon(1e-12));
  CHECK(e.e1 == doctest::Approx(std::sqrt(d2 / all2)).epsilon(1e-12));

  // Scale invariance.
  KineticField uh2 = uh, up2 = up;
  uh2.coeffs() *= 7.0;
  up2.coeffs() *= 7.0;
  const auto e7 = ErrorsE1E2(disc, uh2, up2);
  CHECK(e7.e1 == doctest::Approx(e.e1).epsilon(1e-13));
  CHECK(e7.e2 == doctest::Approx(e.e2).epsilon(1e-13));

  const KineticField part = disc.zero_field({0, 1});
  CHECK_THROWS_AS(ErrorsE1E2(disc, uh, part), InvalidArgument);
}

TEST_CASE("angular average field")
{
  const NestedMesh mesh(2, 2, 2);
  const auto ords = BuildOrdinates(4, 0.25);
  const Discretization disc(mesh, ords, OscillatoryMedia{}, 1e-2);
  KineticField u = disc.zero_field(disc.all_blocks());
  for (int i = 0; i < 4; i++)
  {
    for (int b = 0; b < 4; b++)
    {
      for (int k = 0; k < mesh.nodes_per_block(); k++)
      {
        u(i, b, k) = i + 10.0 * b + 100.0 * k;
      }
    }
  }
  const Eigen::VectorXd avg = AngularAverageField(disc, u);
  REQUIRE(avg.size() == 4 * mesh.nodes_per_block());
  for (int b = 0; b < 4; b++)
  {
    for (int k = 0; k < mesh.nodes_per_block(); k++)
    {
      CHECK(avg(b * mesh.nodes_per_block() + k) == doctest::Approx(1.5 + 10.0 * b + 100.0 * k));
    }
  }
}

TEST_CASE("snapshot ratio")
{
  std::vector<SnapshotSpace> spaces(4);
  for (auto &s : spaces)
  {
    s.basis = Eigen::MatrixXd::Zero(10, 126);
  }
  MultiscaleSpace v;
  v.modes_per_block = {5, 5, 5, 5};
  CHECK(SnapshotRatio(v, spaces) == doctest::Approx(5.0 / 126));
  CHECK_THROWS_AS(SnapshotRatio(v, std::vector<SnapshotSpace>{}), InvalidArgument);
}
