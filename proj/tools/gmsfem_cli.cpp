// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

// Command-line driver: runs the multiscale pipeline described by a config file and
// writes the result tables as CSV.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gmsfem/gmsfem_c.h"

namespace
{

struct ConfigDeleter
{
  void operator()(gmsfem_config *c) const { gmsfem_config_free(c); }
};
struct ResultDeleter
{
  void operator()(gmsfem_result *r) const { gmsfem_result_free(r); }
};
using ConfigPtr = std::unique_ptr<gmsfem_config, ConfigDeleter>;
using ResultPtr = std::unique_ptr<gmsfem_result, ResultDeleter>;

int ExitCode(gmsfem_status s)
{
  switch (s)
  {
    case GMSFEM_OK:
      return 0;
    case GMSFEM_INVALID_ARGUMENT:
      return 2;
    case GMSFEM_NUMERICAL_FAILURE:
      return 3;
    case GMSFEM_IO_ERROR:
      return 4;
    default:
      return 5;
  }
}

class Failure
{
public:
  explicit Failure(gmsfem_status s) : status(s) {}
  gmsfem_status status;
};

void Check(gmsfem_status s, const char *context)
{
  if (s != GMSFEM_OK)
  {
    std::fprintf(stderr, "error: %s: %s: %s\n", context, gmsfem_status_string(s),
                 gmsfem_last_error());
    throw Failure(s);
  }
}

std::string GetValue(const gmsfem_config *c, const char *key)
{
  size_t needed = 0;
  Check(gmsfem_config_get(c, key, nullptr, 0, &needed), key);
  std::string buf(needed, '\0');
  Check(gmsfem_config_get(c, key, buf.data(), buf.size(), &needed), key);
  buf.resize(needed - 1);
  return buf;
}

struct CommonOptions
{
  std::string config_path;
  bool det = false;
  bool ran = false;
  std::int64_t seed = -1;
  int threads = 0;
  std::string output;
  std::string dump;
  std::string cache_dir;
  bool quiet = false;
};

void AddCommon(CLI::App *app, CommonOptions &o)
{
  app->add_option("config", o.config_path, "Experiment config file")->required();
  auto *det = app->add_flag("--det", o.det, "Use deterministic delta-inflow snapshots");
  auto *ran = app->add_flag("--ran", o.ran, "Use randomized oversampled snapshots");
  det->excludes(ran);
  app->add_option("--seed", o.seed, "Snapshot seed")->check(CLI::NonNegativeNumber);
  app->add_option("--threads", o.threads, "Worker threads (speed only)")
      ->check(CLI::PositiveNumber);
  app->add_option("--output", o.output, "Results CSV path (overrides output.csv)");
  app->add_option("--dump-solution", o.dump, "Write the last multiscale solution as CSV");
  app->add_option("--cache-dir", o.cache_dir, "Offline cache directory");
  app->add_flag("-q,--quiet", o.quiet, "Do not print the result table");
}

ConfigPtr LoadWithOverrides(const CommonOptions &o)
{
  gmsfem_config *raw = nullptr;
  Check(gmsfem_config_from_file(o.config_path.c_str(), &raw), o.config_path.c_str());
  ConfigPtr c(raw);
  if (o.det || o.ran)
  {
    Check(gmsfem_config_set(c.get(), "snapshot.method", o.det ? "det" : "ran"), "--det/--ran");
  }
  if (o.seed >= 0)
  {
    Check(gmsfem_config_set(c.get(), "snapshot.seed", std::to_string(o.seed).c_str()), "--seed");
  }
  if (o.threads > 0)
  {
    Check(gmsfem_config_set(c.get(), "threads", std::to_string(o.threads).c_str()), "--threads");
  }
  if (!o.output.empty())
  {
    Check(gmsfem_config_set(c.get(), "output.csv", o.output.c_str()), "--output");
  }
  if (!o.dump.empty())
  {
    Check(gmsfem_config_set(c.get(), "output.solution", o.dump.c_str()), "--dump-solution");
  }
  if (!o.cache_dir.empty())
  {
    Check(gmsfem_config_set(c.get(), "output.cache_dir", o.cache_dir.c_str()), "--cache-dir");
  }
  return c;
}

void PrintRows(const gmsfem_result *r, bool sweep)
{
  size_t n = 0;
  Check(gmsfem_result_row_count(r, &n), "result");
  if (sweep)
  {
    std::printf("%10s ", "eps");
  }
  std::printf("%6s %10s %10s %10s %12s %12s\n", "L", "ratio", "e1", "e2", "lambda_star", "cond");
  for (size_t k = 0; k < n; k++)
  {
    gmsfem_row row{};
    Check(gmsfem_result_row(r, k, &row), "result");
    if (sweep)
    {
      std::printf("%10.3g ", row.eps);
    }
    const std::string l = row.modes < 0 ? "full" : std::to_string(row.modes);
    std::printf("%6s %9.4f%% %9.4f%% %9.4f%% %12.5g %12.5g\n", l.c_str(),
                100.0 * row.snapshot_ratio, 100.0 * row.e1, 100.0 * row.e2, row.lambda_star,
                row.condition_estimate);
  }
}

int Execute(const CommonOptions &o, const std::vector<double> *eps)
{
  ConfigPtr config = LoadWithOverrides(o);
  gmsfem_result *raw = nullptr;
  if (eps == nullptr)
  {
    Check(gmsfem_run(config.get(), &raw), "run");
  }
  else
  {
    Check(gmsfem_sweep(config.get(), eps->data(), eps->size(), &raw), "sweep");
  }
  ResultPtr result(raw);
  const std::string path = GetValue(config.get(), "output.csv");
  const bool timings = GetValue(config.get(), "timings") == "on";
  Check(gmsfem_result_write(result.get(), path.c_str(), timings ? 1 : 0), path.c_str());
  if (!o.quiet)
  {
    PrintRows(result.get(), eps != nullptr);
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Multiscale discrete-ordinates Boltzmann solver"};
  app.set_version_flag("--version", std::string(gmsfem_version()));
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto *run = app.add_subcommand("run", "Run one experiment");
  AddCommon(run, run_opts);

  CommonOptions sweep_opts;
  std::vector<double> eps;
  auto *sweep = app.add_subcommand("sweep", "Run the experiment for several eps values");
  AddCommon(sweep, sweep_opts);
  sweep->add_option("--epsilon", eps, "Knudsen numbers to sweep")
      ->required()
      ->expected(1, -1)
      ->check(CLI::PositiveNumber);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    // Help and version exit 0; every usage error maps to the invalid-argument code.
    return app.exit(e) == 0 ? 0 : 2;
  }

  try
  {
    if (run->parsed())
    {
      return Execute(run_opts, nullptr);
    }
    return Execute(sweep_opts, &eps);
  }
  catch (const Failure &f)
  {
    return ExitCode(f.status);
  }
}
