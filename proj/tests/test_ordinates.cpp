// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <Eigen/Eigenvalues>

#include "gmsfem/errors.hpp"
#include "gmsfem/ordinates.hpp"
#include "support.hpp"

using namespace gmsfem;
using std::numbers::pi;

TEST_CASE("six equispaced directions")
{
  const auto ords = BuildOrdinates(6);
  REQUIRE(ords.size() == 6);
  double sum = 0.0;
  for (int k = 0; k < 6; k++)
  {
    const double theta = pi / 6 + k * pi / 3;
    CHECK((ords.directions[k] - Eigen::Vector2d(std::cos(theta), std::sin(theta))).norm() < 1e-15);
    CHECK(ords.weights[k] == doctest::Approx(1.0 / 6).epsilon(1e-15));
    sum += ords.weights[k];
  }
  CHECK(std::abs(sum - 1.0) < 1e-15);
}

TEST_CASE("antipodal pair")
{
  const auto ords = BuildOrdinates(2);
  CHECK((ords.directions[0] - Eigen::Vector2d(0, 1)).norm() < 1e-15);
  CHECK((ords.directions[1] - Eigen::Vector2d(0, -1)).norm() < 1e-15);
  CHECK(ords.weights[0] == 0.5);
  CHECK(ords.weights[1] == 0.5);
}

TEST_CASE("quarter-step offset keeps even m off the axes")
{
  for (int m : {2, 4, 6, 8, 10, 12})
  {
    const auto ords = BuildOrdinates(m, 0.25);
    for (const auto &v : ords.directions)
    {
      CHECK(std::abs(v.x()) > 1e-3);
      CHECK(std::abs(v.y()) > 1e-3);
    }
  }
}

TEST_CASE("rejects fewer than two directions")
{
  CHECK_THROWS_AS(BuildOrdinates(1), InvalidArgument);
  CHECK_THROWS_AS(BuildOrdinates(0), InvalidArgument);
}

TEST_CASE("unit directions and exact weight sum")
{
  for (int m = 2; m <= 40; m++)
  {
    for (double off : {0.5, 0.25, 0.0})
    {
      const auto ords = BuildOrdinates(m, off);
      long double sum = 0.0L;
      for (int i = 0; i < m; i++)
      {
        CHECK(std::abs(ords.directions[i].norm() - 1.0) < 1e-15);
        CHECK(ords.weights[i] > 0.0);
        sum += ords.weights[i];
      }
      CHECK(std::abs(static_cast<double>(sum - 1.0L)) <= std::numeric_limits<double>::epsilon());
    }
  }
}

TEST_CASE("quadrature exactness on the circle")
{
  // (1/2pi) int cos^2 = 1/2.
  const auto four = BuildOrdinates(4);
  double q = 0.0;
  for (int i = 0; i < 4; i++)
  {
    q += four.weights[i] * four.directions[i].x() * four.directions[i].x();
  }
  CHECK(q == doctest::Approx(0.5).epsilon(1e-15));

  // Harmonics e^{ik theta}, 0 < |k| < m, average to zero.
  for (int m : {3, 6, 9})
  {
    const auto ords = BuildOrdinates(m);
    for (int k : {1, 2})
    {
      double re = 0.0, im = 0.0;
      for (int i = 0; i < m; i++)
      {
        const double theta = std::atan2(ords.directions[i].y(), ords.directions[i].x());
        re += ords.weights[i] * std::cos(k * theta);
        im += ords.weights[i] * std::sin(k * theta);
      }
      CHECK(std::abs(re) < 1e-15);
      CHECK(std::abs(im) < 1e-15);
    }
  }
}

TEST_CASE("scattering matrix for m = 2")
{
  const Eigen::MatrixXd a = ScatteringMatrix(BuildOrdinates(2));
  Eigen::Matrix2d expect;
  expect << 0.25, -0.25, -0.25, 0.25;
  CHECK((a - expect).norm() < 1e-16);
}

TEST_CASE("scattering matrix properties")
{
  std::mt19937_64 rng(7);
  for (int m : {2, 3, 6, 11})
  {
    const auto ords = BuildOrdinates(m);
    const Eigen::MatrixXd a = ScatteringMatrix(ords);
    CHECK((a - a.transpose()).norm() == 0.0);
    CHECK((a * Eigen::VectorXd::Ones(m)).norm() < 1e-15);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
    CHECK(std::abs(es.eigenvalues()(0)) < 1e-15);
    for (int k = 1; k < m; k++)
    {
      CHECK(es.eigenvalues()(k) == doctest::Approx(1.0 / m).epsilon(1e-12));
    }
    const Eigen::VectorXd kernel = es.eigenvectors().col(0);
    CHECK((kernel.cwiseAbs() - Eigen::VectorXd::Constant(m, 1.0 / std::sqrt(m))).norm() < 1e-12);

    for (int trial = 0; trial < 50; trial++)
    {
      const Eigen::VectorXd u = testing::RandomVector(m, rng);
      double direct = 0.0;
      for (int i = 0; i < m; i++)
      {
        for (int j = i + 1; j < m; j++)
        {
          direct += ords.weights[i] * ords.weights[j] * (u(i) - u(j)) * (u(i) - u(j));
        }
      }
      CHECK(testing::RelDiff(u.dot(a * u), direct) < 1e-12);
    }
  }
}

TEST_CASE("angular average")
{
  const auto ords = BuildOrdinates(6);
  Eigen::VectorXd u(6);
  u << 1, 2, 3, 4, 5, 6;
  CHECK(AngularAverage(ords, u) == doctest::Approx(3.5));
}
