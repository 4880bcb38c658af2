// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "gmsfem/gmsfem_c.h"

namespace
{

const char *kSmall = "mesh.ncx = 3\nmesh.ncy = 3\nmesh.nf = 3\neps = 0.01\n"
                     "snapshot.samples = 4\nL = 1,2,full\ntimings = off\n";

std::string Get(const gmsfem_config *c, const char *key)
{
  size_t needed = 0;
  REQUIRE(gmsfem_config_get(c, key, nullptr, 0, &needed) == GMSFEM_OK);
  std::string s(needed, '\0');
  REQUIRE(gmsfem_config_get(c, key, s.data(), s.size(), &needed) == GMSFEM_OK);
  s.resize(needed - 1);
  return s;
}

std::string Csv(const gmsfem_result *r)
{
  size_t needed = 0;
  REQUIRE(gmsfem_result_csv(r, 0, nullptr, 0, &needed) == GMSFEM_OK);
  std::string s(needed, '\0');
  REQUIRE(gmsfem_result_csv(r, 0, s.data(), s.size(), &needed) == GMSFEM_OK);
  s.resize(needed - 1);
  return s;
}

}  // namespace

TEST_CASE("version and status strings")
{
  CHECK(std::strlen(gmsfem_version()) > 0);
  CHECK(std::string(gmsfem_status_string(GMSFEM_OK)) == "ok");
  CHECK(std::string(gmsfem_status_string(GMSFEM_IO_ERROR)).size() > 0);
}

TEST_CASE("config handles")
{
  gmsfem_config *c = nullptr;
  REQUIRE(gmsfem_config_default(&c) == GMSFEM_OK);
  CHECK(Get(c, "mesh.ncx") == "10");
  CHECK(gmsfem_config_set(c, "mesh.ncx", "4") == GMSFEM_OK);
  CHECK(Get(c, "mesh.ncx") == "4");

  CHECK(gmsfem_config_set(c, "mesh.ncx", "zero") == GMSFEM_INVALID_ARGUMENT);
  CHECK(std::string(gmsfem_last_error()).find("mesh.ncx") != std::string::npos);
  CHECK(gmsfem_config_set(c, "no.such.key", "1") == GMSFEM_INVALID_ARGUMENT);
  CHECK(Get(c, "mesh.ncx") == "4");

  char small[2];
  size_t needed = 0;
  CHECK(gmsfem_config_get(c, "mesh.ncx", small, sizeof small, &needed) == GMSFEM_OK);
  CHECK(needed == 2);
  CHECK(gmsfem_config_get(c, "eps", small, sizeof small, &needed) == GMSFEM_INVALID_ARGUMENT);
  CHECK(needed == 6);

  size_t len = 0;
  REQUIRE(gmsfem_config_to_string(c, nullptr, 0, &len) == GMSFEM_OK);
  std::string text(len, '\0');
  REQUIRE(gmsfem_config_to_string(c, text.data(), text.size(), &len) == GMSFEM_OK);
  gmsfem_config *d = nullptr;
  REQUIRE(gmsfem_config_from_string(text.c_str(), &d) == GMSFEM_OK);
  CHECK(Get(d, "mesh.ncx") == "4");

  gmsfem_config *bad = nullptr;
  CHECK(gmsfem_config_from_string("mesh.ncx = 3\nmesh.ncx = 3\n", &bad) == GMSFEM_INVALID_ARGUMENT);
  CHECK(bad == nullptr);
  CHECK(gmsfem_config_from_file("/nonexistent.cfg", &bad) == GMSFEM_IO_ERROR);
  CHECK(gmsfem_config_from_string(nullptr, &bad) == GMSFEM_INVALID_ARGUMENT);
  CHECK(gmsfem_config_default(nullptr) == GMSFEM_INVALID_ARGUMENT);

  gmsfem_config_free(c);
  gmsfem_config_free(d);
  gmsfem_config_free(nullptr);
}

TEST_CASE("run, rows and CSV")
{
  gmsfem_config *c = nullptr;
  REQUIRE(gmsfem_config_from_string(kSmall, &c) == GMSFEM_OK);
  gmsfem_result *r = nullptr;
  REQUIRE(gmsfem_run(c, &r) == GMSFEM_OK);
  size_t n = 0;
  REQUIRE(gmsfem_result_row_count(r, &n) == GMSFEM_OK);
  REQUIRE(n == 3);
  gmsfem_row row{};
  REQUIRE(gmsfem_result_row(r, 2, &row) == GMSFEM_OK);
  CHECK(row.modes == -1);
  CHECK(row.eps == 0.01);
  CHECK(row.snapshot_ratio == 1.0);
  CHECK(std::isinf(row.lambda_star));
  CHECK(row.snapshot_gap < 1e-8);
  CHECK(row.stability_lhs <= row.stability_rhs * (1 + 1e-10));
  CHECK(gmsfem_result_row(r, 3, &row) == GMSFEM_INVALID_ARGUMENT);

  const std::string csv = Csv(r);
  CHECK(csv.rfind("L,snapshot_ratio,", 0) == 0);

  gmsfem_result *again = nullptr;
  REQUIRE(gmsfem_config_set(c, "threads", "2") == GMSFEM_OK);
  REQUIRE(gmsfem_run(c, &again) == GMSFEM_OK);
  CHECK(Csv(again) == csv);

  const auto dir = std::filesystem::temp_directory_path() / "gmsfem-capi";
  std::filesystem::remove_all(dir);
  CHECK(gmsfem_result_write(r, (dir / "out.csv").c_str(), 0) == GMSFEM_OK);
  CHECK(std::filesystem::exists(dir / "out.csv"));
  CHECK(gmsfem_result_write(r, "/proc/forbidden/out.csv", 0) == GMSFEM_IO_ERROR);

  const double eps[] = {0.1, 0.02};
  gmsfem_result *sw = nullptr;
  REQUIRE(gmsfem_sweep(c, eps, 2, &sw) == GMSFEM_OK);
  REQUIRE(gmsfem_result_row_count(sw, &n) == GMSFEM_OK);
  CHECK(n == 6);
  REQUIRE(gmsfem_result_row(sw, 3, &row) == GMSFEM_OK);
  CHECK(row.eps == 0.02);
  CHECK(Csv(sw).rfind("eps,L,", 0) == 0);
  CHECK(gmsfem_result_write(sw, (dir / "sweep.csv").c_str(), 0) == GMSFEM_OK);
  CHECK(std::filesystem::exists(dir / "sweep_eigen.csv"));
  CHECK(gmsfem_sweep(c, eps, 0, &sw) == GMSFEM_INVALID_ARGUMENT);

  std::filesystem::remove_all(dir);
  gmsfem_result_free(r);
  gmsfem_result_free(again);
  gmsfem_result_free(sw);
  gmsfem_config_free(c);
}

TEST_CASE("queries")
{
  std::vector<double> dirs(12), w(6);
  REQUIRE(gmsfem_ordinates(6, 0.5, dirs.data(), w.data()) == GMSFEM_OK);
  CHECK(dirs[0] == doctest::Approx(std::cos(M_PI / 6)));
  CHECK(dirs[1] == doctest::Approx(0.5));
  CHECK(w[5] == doctest::Approx(1.0 / 6));
  CHECK(gmsfem_ordinates(1, 0.5, dirs.data(), w.data()) == GMSFEM_INVALID_ARGUMENT);

  int32_t blocks = 0, edges = 0, cells = 0;
  REQUIRE(gmsfem_mesh_counts(10, 10, 10, &blocks, &edges, &cells) == GMSFEM_OK);
  CHECK(blocks == 100);
  CHECK(edges == 180);
  CHECK(cells == 10000);
  CHECK(gmsfem_mesh_counts(0, 10, 10, &blocks, &edges, &cells) == GMSFEM_INVALID_ARGUMENT);
}
