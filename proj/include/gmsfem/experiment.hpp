// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_EXPERIMENT_HPP
#define GMSFEM_EXPERIMENT_HPP

#include <string>
#include <vector>

#include "gmsfem/config.hpp"
#include "gmsfem/offline.hpp"

namespace gmsfem
{

// One CSV row plus diagnostics that are not part of the CSV schema.
struct ExperimentRow
{
  int modes = 0;  // L; -1 for the full snapshot space
  double snapshot_ratio = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double lambda_star = 0.0;
  double t_offline_s = 0.0;
  double t_online_s = 0.0;

  int coarse_dim = 0;
  double condition_estimate = 0.0;
  double online_residual = 0.0;
  double stability_lhs = 0.0;
  double stability_rhs = 0.0;
  double snapshot_gap = 0.0;  // ||u_H - u_snap||_~V / ||u_snap||_~V
};

struct ExperimentResult
{
  double eps = 0.0;
  std::vector<ExperimentRow> rows;

  int snapshot_dim = 0;       // dim V_snap
  double fine_residual = 0.0;
  double snapshot_e1 = 0.0;   // u_snap against u_h
  double snapshot_e2 = 0.0;
  double fine_stability_lhs = 0.0;
  double fine_stability_rhs = 0.0;
  bool cache_hit = false;
};

// Runs fine reference, snapshots, offline and one online solve per L of the config.
// Writes nothing; see WriteExperimentOutputs.
ExperimentResult RunExperiment(const ExperimentConfig &config);

struct SweepResult
{
  std::vector<ExperimentResult> runs;  // in the order of the eps list
  int study_block = -1;
  std::vector<EpsLimitRow> eigen;      // eps descending
};

// RunExperiment for every eps plus the eigenvalue study on config.ResolvedStudyBlock().
SweepResult SweepEpsilon(const ExperimentConfig &config, const std::vector<double> &eps_list);

// CSV renderings with shortest round-trip decimals. Timings are written as 0 when the
// config disables them, so that repeated runs produce identical bytes.
std::string ExperimentCsv(const ExperimentResult &result, bool timings);
std::string SweepCsv(const SweepResult &result, bool timings);
std::string EigenCsv(const SweepResult &result);

// Resolves a relative output path against GMSFEM_OUTPUT_DIR when it is set.
std::string ResolveOutputPath(const std::string &path);
void WriteTextFile(const std::string &path, const std::string &content);

// "<stem><suffix><ext>", e.g. ("out/r.csv", "_eigen") -> "out/r_eigen.csv".
std::string PathWithSuffix(const std::string &path, const std::string &suffix);

}  // namespace gmsfem

#endif  // GMSFEM_EXPERIMENT_HPP
