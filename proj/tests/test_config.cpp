// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <variant>

#include "gmsfem/config.hpp"
#include "gmsfem/errors.hpp"

using namespace gmsfem;

TEST_CASE("defaults describe the oscillatory experiment")
{
  const ExperimentConfig c;
  CHECK_NOTHROW(ValidateConfig(c));
  CHECK(c.ncx == 10);
  CHECK(c.nf == 10);
  CHECK(c.m == 6);
  CHECK(c.samples == 21);
  CHECK(c.modes == std::vector<int>{1, 2, 3, 5, 7, 10, 15, 20});
  CHECK(c.ResolvedStudyBlock() == 55);
  CHECK(std::holds_alternative<OscillatoryMedia>(c.BuildMedia(NestedMesh(10, 10, 10))));
}

TEST_CASE("parse and round-trip")
{
  const std::string text = R"(# comment line
version = 1
mesh.ncx = 4
mesh.ncy = 3   # trailing comment
mesh.nf=5
eps = 1e-3

media = contrast
media.power = 6
snapshot.method = det
L = 1, 3, full
timings = off
threads = 4
)";
  const ExperimentConfig c = ParseConfig(text);
  CHECK(c.ncx == 4);
  CHECK(c.ncy == 3);
  CHECK(c.nf == 5);
  CHECK(c.eps == 1e-3);
  CHECK(c.media == ExperimentConfig::Media::Contrast);
  CHECK(c.power == 6);
  CHECK(c.snapshot_method == SnapshotMethod::Det);
  CHECK(c.modes == std::vector<int>{1, 3, -1});
  CHECK_FALSE(c.timings);
  CHECK(c.threads == 4);
  CHECK(c.ResolvedStudyBlock() == 1 * 4 + 2);

  const ExperimentConfig back = ParseConfig(c.ToString());
  CHECK(back.ToString() == c.ToString());
  for (const auto &key : ConfigKeys())
  {
    CAPTURE(key);
    CHECK(GetConfigValue(back, key) == GetConfigValue(c, key));
  }
  CHECK(GetConfigValue(c, "L") == "1,3,full");
  CHECK(GetConfigValue(c, "eps") == "0.001");

  ExperimentConfig d = ParseConfig(ExperimentConfig{}.ToString());
  CHECK(d.ToString() == ExperimentConfig{}.ToString());
}

TEST_CASE("parse errors")
{
  CHECK_THROWS_AS(ParseConfig("mesh.ncx = 3\nbogus = 1\n"), InvalidArgument);
  CHECK_THROWS_WITH_AS(ParseConfig("mesh.ncx = 3\nmesh.ncx = 4\n"), doctest::Contains("line 2"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("mesh.ncx 3\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("mesh.ncx = 3x\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("mesh.ncx = 0\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("eps = -1\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("eps = nan\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("ordinates.m = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("version = 2\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("snapshot.method = both\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("L = 0\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("L =\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("snapshot.rank_tol = 1\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("threads = 0\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("study.block = 100\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("media = contrast\nmedia.contrast = 0.5\n"), InvalidArgument);
  CHECK_THROWS_AS(ParseConfig("timings = maybe\n"), InvalidArgument);
  CHECK_THROWS_AS(LoadConfig("/nonexistent/config.txt"), IoError);
}

TEST_CASE("set and get single keys")
{
  ExperimentConfig c;
  SetConfigValue(c, "snapshot.seed", "99");
  CHECK(c.snapshot_seed == 99);
  SetConfigValue(c, "L", "2,full");
  CHECK(c.modes == std::vector<int>{2, -1});
  CHECK_THROWS_AS(SetConfigValue(c, "threads", "-3"), InvalidArgument);
  CHECK(c.threads == 1);
  CHECK_THROWS_AS(SetConfigValue(c, "nope", "1"), InvalidArgument);
  CHECK_THROWS_AS(GetConfigValue(c, "nope"), InvalidArgument);
}

TEST_CASE("builders")
{
  ExperimentConfig c;
  c.media = ExperimentConfig::Media::Contrast;
  c.inclusions = "0.1 0.3 0.1 0.3";
  c.contrast = 10;
  c.power = 2;
  const MediaSpec m = c.BuildMedia(NestedMesh(4, 4, 2));
  CHECK(EvalMedia(m, {0.2, 0.2}) == doctest::Approx(100.0));
  CHECK(EvalMedia(m, {0.8, 0.2}) == 1.0);

  c.inflow = ExperimentConfig::Inflow::Constant;
  c.inflow_value = 2.5;
  CHECK(c.BuildInflow()(3, {0.0, 0.4}) == 2.5);

  c.snapshot_method = SnapshotMethod::Det;
  c.samples = 7;
  c.threads = 3;
  const SnapshotOptions o = c.BuildSnapshotOptions();
  CHECK(o.method == SnapshotMethod::Det);
  CHECK(o.samples == 7);
  CHECK(o.threads == 3);
}
