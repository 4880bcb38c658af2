// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/experiment.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "gmsfem/errors.hpp"
#include "gmsfem/format.hpp"
#include "gmsfem/metrics.hpp"
#include "gmsfem/offline_cache.hpp"
#include "gmsfem/online.hpp"
#include "gmsfem/solution_io.hpp"

namespace gmsfem
{

namespace
{

using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t0)
{
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Prefixes numerical failures with the pipeline stage that raised them.
template <typename F>
auto Stage(const char *name, F &&f) -> decltype(f())
{
  try
  {
    return f();
  }
  catch (const NumericalFailure &e)
  {
    throw NumericalFailure(std::string(name) + " stage: " + e.what());
  }
}

OfflineArtifacts BuildArtifacts(const Discretization &disc, const ExperimentConfig &config)
{
  OfflineArtifacts a;
  a.spaces = Stage("snapshot", [&] { return BuildSnapshotSpaces(disc, config.BuildSnapshotOptions()); });
  a.offline = Stage("offline", [&] {
    return BuildOffline(disc, a.spaces, config.layers, config.threads);
  });
  return a;
}

}  // namespace

ExperimentResult RunExperiment(const ExperimentConfig &config)
{
  ValidateConfig(config);
  for (int l : config.modes)
  {
    if (l > 0 && l > config.m * (config.nf + 1) * (config.nf + 1))
    {
      throw InvalidArgument("L = " + std::to_string(l) + " exceeds the block dof count");
    }
  }

  const NestedMesh mesh(config.ncx, config.ncy, config.nf);
  const OrdinateSet ords = BuildOrdinates(config.m, config.ordinate_offset);
  const Discretization disc(mesh, ords, config.BuildMedia(mesh), config.eps);
  const InflowData g = config.BuildInflow();

  ExperimentResult result;
  result.eps = config.eps;

  FineSolveReport fine_report;
  const KineticField uh = Stage("fine", [&] { return SolveFine(disc, g, &fine_report); });
  result.fine_residual = fine_report.relative_residual;
  const Norms norms(disc);
  const double inflow_energy = disc.InflowEnergy(disc.all_blocks(), g);
  const StabilityBound fine_bound = Stability(norms, uh, inflow_energy);
  result.fine_stability_lhs = fine_bound.lhs;
  result.fine_stability_rhs = fine_bound.rhs;

  const auto t_offline = Clock::now();
  OfflineArtifacts art;
  const std::string cache_key = OfflineCacheKey(config);
  std::string cache_path;
  if (!config.cache_dir.empty())
  {
    cache_path = OfflineCachePath(ResolveOutputPath(config.cache_dir), config);
    result.cache_hit = LoadOfflineCache(cache_path, cache_key, art);
  }
  if (!result.cache_hit)
  {
    art = BuildArtifacts(disc, config);
    if (!cache_path.empty())
    {
      SaveOfflineCache(cache_path, cache_key, art);
    }
  }
  const double offline_seconds = Since(t_offline);
  const auto &spaces = art.spaces;
  for (const auto &s : spaces)
  {
    result.snapshot_dim += s.dim();
  }

  const FineOperators ops(disc);
  const Eigen::VectorXd load = disc.InflowLoad(disc.all_blocks(), g);

  SnapshotSolveReport snap_report;
  const KineticField usnap =
      Stage("snapshot solve", [&] { return SolveSnapshot(disc, spaces, g, &snap_report); });
  const RelativeErrors snap_err = ErrorsE1E2(disc, uh, usnap);
  result.snapshot_e1 = snap_err.e1;
  result.snapshot_e2 = snap_err.e2;
  const double usnap_norm = norms.TildeV(usnap);

  KineticField last_field;
  for (int l : config.modes)
  {
    const auto t_online = Clock::now();
    const MultiscaleSpace space = SelectSpace(spaces, art.offline, l);
    const CoarseSystem sys = AssembleCoarse(disc, ops, space, load);
    OnlineSolution sol = Stage("online", [&] { return SolveOnline(sys); });
    const double online_seconds = Since(t_online);

    ExperimentRow row;
    row.modes = l;
    row.snapshot_ratio = SnapshotRatio(space, spaces);
    const RelativeErrors err = ErrorsE1E2(disc, uh, sol.field);
    row.e1 = err.e1;
    row.e2 = err.e2;
    row.lambda_star = space.lambda_star;
    row.t_offline_s = offline_seconds;
    row.t_online_s = online_seconds;
    row.coarse_dim = space.dim();
    row.condition_estimate = sol.condition_estimate;
    row.online_residual = sol.relative_residual;
    const StabilityBound bound = Stability(norms, sol.field, inflow_energy);
    row.stability_lhs = bound.lhs;
    row.stability_rhs = bound.rhs;
    KineticField diff = sol.field;
    diff.coeffs() -= usnap.coeffs();
    row.snapshot_gap = usnap_norm > 0.0 ? norms.TildeV(diff) / usnap_norm : norms.TildeV(diff);
    result.rows.push_back(row);
    last_field = std::move(sol.field);
  }

  if (!config.solution_dump.empty())
  {
    const std::string path = ResolveOutputPath(config.solution_dump);
    WriteSolutionCsv(path, disc, last_field);
    WriteSolutionCsv(PathWithSuffix(path, "_fine"), disc, uh);
  }
  return result;
}

SweepResult SweepEpsilon(const ExperimentConfig &config, const std::vector<double> &eps_list)
{
  if (eps_list.empty())
  {
    throw InvalidArgument("sweep: the eps list is empty");
  }
  for (double e : eps_list)
  {
    if (!(e > 0.0) || !std::isfinite(e))
    {
      throw InvalidArgument("sweep: eps values must be positive");
    }
  }
  SweepResult out;
  for (double e : eps_list)
  {
    ExperimentConfig c = config;
    c.eps = e;
    if (!config.solution_dump.empty())
    {
      c.solution_dump = PathWithSuffix(config.solution_dump, "_eps" + FormatDouble(e));
    }
    out.runs.push_back(RunExperiment(c));
  }

  std::vector<double> sorted = eps_list;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  out.study_block = config.ResolvedStudyBlock();
  const NestedMesh mesh(config.ncx, config.ncy, config.nf);
  const OrdinateSet ords = BuildOrdinates(config.m, config.ordinate_offset);
  out.eigen = Stage("eigenvalue study", [&] {
    return EpsLimitStudy(mesh, ords, config.BuildMedia(mesh), out.study_block, sorted,
                         config.BuildSnapshotOptions());
  });
  return out;
}

namespace
{

void AppendRow(std::string &out, const ExperimentRow &r, bool timings)
{
  out += (r.modes < 0 ? std::string("full") : std::to_string(r.modes)) + "," +
         FormatDouble(r.snapshot_ratio) + "," + FormatDouble(r.e1) + "," + FormatDouble(r.e2) +
         "," + FormatDouble(r.lambda_star) + "," + FormatDouble(timings ? r.t_offline_s : 0.0) +
         "," + FormatDouble(timings ? r.t_online_s : 0.0) + "\n";
}

constexpr const char *kHeader = "L,snapshot_ratio,e1,e2,lambda_star,t_offline_s,t_online_s\n";

}  // namespace

std::string ExperimentCsv(const ExperimentResult &result, bool timings)
{
  std::string out = kHeader;
  for (const auto &r : result.rows)
  {
    AppendRow(out, r, timings);
  }
  return out;
}

std::string SweepCsv(const SweepResult &result, bool timings)
{
  std::string out = std::string("eps,") + kHeader;
  for (const auto &run : result.runs)
  {
    for (const auto &r : run.rows)
    {
      out += FormatDouble(run.eps) + ",";
      AppendRow(out, r, timings);
    }
  }
  return out;
}

std::string EigenCsv(const SweepResult &result)
{
  std::string out = "block,eps,mode,lambda,first_mode_anisotropy\n";
  for (const auto &row : result.eigen)
  {
    for (Eigen::Index k = 0; k < row.eigenvalues.size(); k++)
    {
      out += std::to_string(result.study_block) + "," + FormatDouble(row.eps) + "," +
             std::to_string(k + 1) + "," + FormatDouble(row.eigenvalues(k)) + "," +
             FormatDouble(row.first_mode_anisotropy) + "\n";
    }
  }
  return out;
}

std::string ResolveOutputPath(const std::string &path)
{
  const char *dir = std::getenv("GMSFEM_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0' || path.empty() || std::filesystem::path(path).is_absolute())
  {
    return path;
  }
  return (std::filesystem::path(dir) / path).string();
}

void WriteTextFile(const std::string &path, const std::string &content)
{
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty())
  {
    std::filesystem::create_directories(parent, ec);
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f)
  {
    throw IoError("cannot write '" + path + "'");
  }
  f << content;
  if (!f)
  {
    throw IoError("write failed for '" + path + "'");
  }
}

std::string PathWithSuffix(const std::string &path, const std::string &suffix)
{
  const std::filesystem::path p(path);
  std::filesystem::path out = p.parent_path() / (p.stem().string() + suffix);
  out += p.extension();
  return out.string();
}

}  // namespace gmsfem
