// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_CONFIG_HPP
#define GMSFEM_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gmsfem/discretization.hpp"
#include "gmsfem/media.hpp"
#include "gmsfem/snapshot.hpp"

namespace gmsfem
{

// Flat key/value experiment description. See docs/config.md for the schema.
struct ExperimentConfig
{
  int version = 1;

  int ncx = 10;
  int ncy = 10;
  int nf = 10;
  int m = 6;
  double ordinate_offset = 0.25;
  double eps = 5e-3;

  enum class Media
  {
    Oscillatory,
    Contrast
  } media = Media::Oscillatory;
  double contrast = 10.0;
  int power = 4;
  std::uint64_t media_seed = 1;
  std::string inclusions;  // explicit rectangles; empty selects the seeded default field

  enum class Inflow
  {
    Cosine,
    Constant
  } inflow = Inflow::Cosine;
  double inflow_value = 1.0;

  SnapshotMethod snapshot_method = SnapshotMethod::Ran;
  int samples = 21;
  std::uint64_t snapshot_seed = 1;
  int layers = 1;
  double rank_tol = 1e-10;

  std::vector<int> modes = {1, 2, 3, 5, 7, 10, 15, 20};  // -1 = full snapshot space

  std::string output_csv = "results.csv";
  std::string cache_dir;      // empty disables the offline cache
  std::string solution_dump;  // empty disables the solution dump
  bool timings = true;
  int threads = 1;

  int study_block = -1;  // -1 selects the block nearest the domain centre

  // Builds the media described by the config on `mesh`.
  MediaSpec BuildMedia(const NestedMesh &mesh) const;
  InflowData BuildInflow() const;
  SnapshotOptions BuildSnapshotOptions() const;
  int ResolvedStudyBlock() const;

  // Canonical key/value rendering; parsing it back gives an equal config.
  std::string ToString() const;
};

// Parses a config document. Unknown keys, duplicate keys and malformed values throw
// InvalidArgument; the result is validated.
ExperimentConfig ParseConfig(const std::string &text);
ExperimentConfig LoadConfig(const std::string &path);

// Sets one key on an existing config (same syntax as a config line) and re-validates.
void SetConfigValue(ExperimentConfig &config, const std::string &key, const std::string &value);
std::string GetConfigValue(const ExperimentConfig &config, const std::string &key);

void ValidateConfig(const ExperimentConfig &config);

// Keys accepted by the parser, in canonical order.
const std::vector<std::string> &ConfigKeys();

}  // namespace gmsfem

#endif  // GMSFEM_CONFIG_HPP
