// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/gmsfem_c.h"

#include <cstring>
#include <new>
#include <string>

#include "gmsfem/config.hpp"
#include "gmsfem/errors.hpp"
#include "gmsfem/experiment.hpp"
#include "gmsfem/mesh.hpp"
#include "gmsfem/ordinates.hpp"

struct gmsfem_config
{
  gmsfem::ExperimentConfig config;
};

struct gmsfem_result
{
  bool sweep = false;
  gmsfem::SweepResult data;
};

namespace
{

thread_local std::string g_last_error;

template <typename F>
gmsfem_status Guard(F &&f)
{
  g_last_error.clear();
  try
  {
    f();
    return GMSFEM_OK;
  }
  catch (const gmsfem::InvalidArgument &e)
  {
    g_last_error = e.what();
    return GMSFEM_INVALID_ARGUMENT;
  }
  catch (const gmsfem::NumericalFailure &e)
  {
    g_last_error = e.what();
    return GMSFEM_NUMERICAL_FAILURE;
  }
  catch (const gmsfem::IoError &e)
  {
    g_last_error = e.what();
    return GMSFEM_IO_ERROR;
  }
  catch (const std::bad_alloc &)
  {
    g_last_error = "out of memory";
    return GMSFEM_INTERNAL_ERROR;
  }
  catch (const std::exception &e)
  {
    g_last_error = e.what();
    return GMSFEM_INTERNAL_ERROR;
  }
  catch (...)
  {
    g_last_error = "unknown error";
    return GMSFEM_INTERNAL_ERROR;
  }
}

void Require(bool ok, const char *what)
{
  if (!ok)
  {
    throw gmsfem::InvalidArgument(what);
  }
}

void CopyOut(const std::string &s, char *buf, size_t size, size_t *needed)
{
  if (needed != nullptr)
  {
    *needed = s.size() + 1;
  }
  if (buf == nullptr && size == 0)
  {
    return;
  }
  Require(buf != nullptr, "output buffer is null");
  if (size < s.size() + 1)
  {
    throw gmsfem::InvalidArgument("output buffer too small: need " + std::to_string(s.size() + 1) +
                                  " bytes");
  }
  std::memcpy(buf, s.c_str(), s.size() + 1);
}

std::string ResultCsv(const gmsfem_result &r, bool timings)
{
  return r.sweep ? gmsfem::SweepCsv(r.data, timings)
                 : gmsfem::ExperimentCsv(r.data.runs.front(), timings);
}

}  // namespace

extern "C" {

const char *gmsfem_version(void) { return "1.0.0"; }

const char *gmsfem_last_error(void) { return g_last_error.c_str(); }

const char *gmsfem_status_string(gmsfem_status status)
{
  switch (status)
  {
    case GMSFEM_OK:
      return "ok";
    case GMSFEM_INVALID_ARGUMENT:
      return "invalid argument";
    case GMSFEM_NUMERICAL_FAILURE:
      return "numerical failure";
    case GMSFEM_IO_ERROR:
      return "i/o error";
    case GMSFEM_INTERNAL_ERROR:
      return "internal error";
  }
  return "unknown status";
}

gmsfem_status gmsfem_config_default(gmsfem_config **out)
{
  return Guard([&] {
    Require(out != nullptr, "out is null");
    *out = new gmsfem_config{};
  });
}

gmsfem_status gmsfem_config_from_file(const char *path, gmsfem_config **out)
{
  return Guard([&] {
    Require(path != nullptr && out != nullptr, "path and out must be non-null");
    *out = nullptr;
    auto *c = new gmsfem_config{gmsfem::LoadConfig(path)};
    *out = c;
  });
}

gmsfem_status gmsfem_config_from_string(const char *text, gmsfem_config **out)
{
  return Guard([&] {
    Require(text != nullptr && out != nullptr, "text and out must be non-null");
    *out = nullptr;
    auto *c = new gmsfem_config{gmsfem::ParseConfig(text)};
    *out = c;
  });
}

gmsfem_status gmsfem_config_set(gmsfem_config *config, const char *key, const char *value)
{
  return Guard([&] {
    Require(config != nullptr && key != nullptr && value != nullptr,
            "config, key and value must be non-null");
    gmsfem::SetConfigValue(config->config, key, value);
  });
}

gmsfem_status gmsfem_config_get(const gmsfem_config *config, const char *key, char *buf,
                                size_t size, size_t *needed)
{
  return Guard([&] {
    Require(config != nullptr && key != nullptr, "config and key must be non-null");
    CopyOut(gmsfem::GetConfigValue(config->config, key), buf, size, needed);
  });
}

gmsfem_status gmsfem_config_to_string(const gmsfem_config *config, char *buf, size_t size,
                                      size_t *needed)
{
  return Guard([&] {
    Require(config != nullptr, "config is null");
    CopyOut(config->config.ToString(), buf, size, needed);
  });
}

void gmsfem_config_free(gmsfem_config *config) { delete config; }

gmsfem_status gmsfem_run(const gmsfem_config *config, gmsfem_result **out)
{
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "config and out must be non-null");
    *out = nullptr;
    auto *r = new gmsfem_result{};
    try
    {
      r->data.runs.push_back(gmsfem::RunExperiment(config->config));
    }
    catch (...)
    {
      delete r;
      throw;
    }
    *out = r;
  });
}

gmsfem_status gmsfem_sweep(const gmsfem_config *config, const double *eps, size_t count,
                           gmsfem_result **out)
{
  return Guard([&] {
    Require(config != nullptr && out != nullptr, "config and out must be non-null");
    Require(eps != nullptr && count > 0, "the eps list is empty");
    *out = nullptr;
    auto *r = new gmsfem_result{};
    r->sweep = true;
    try
    {
      r->data = gmsfem::SweepEpsilon(config->config, std::vector<double>(eps, eps + count));
    }
    catch (...)
    {
      delete r;
      throw;
    }
    *out = r;
  });
}

gmsfem_status gmsfem_result_row_count(const gmsfem_result *result, size_t *count)
{
  return Guard([&] {
    Require(result != nullptr && count != nullptr, "result and count must be non-null");
    size_t n = 0;
    for (const auto &run : result->data.runs)
    {
      n += run.rows.size();
    }
    *count = n;
  });
}

gmsfem_status gmsfem_result_row(const gmsfem_result *result, size_t index, gmsfem_row *row)
{
  return Guard([&] {
    Require(result != nullptr && row != nullptr, "result and row must be non-null");
    for (const auto &run : result->data.runs)
    {
      if (index < run.rows.size())
      {
        const auto &r = run.rows[index];
        *row = gmsfem_row{run.eps,         r.modes,       r.snapshot_ratio,
                          r.e1,            r.e2,          r.lambda_star,
                          r.t_offline_s,   r.t_online_s,  r.coarse_dim,
                          r.condition_estimate, r.stability_lhs, r.stability_rhs,
                          r.snapshot_gap};
        return;
      }
      index -= run.rows.size();
    }
    throw gmsfem::InvalidArgument("row index out of range");
  });
}

gmsfem_status gmsfem_result_csv(const gmsfem_result *result, int timings, char *buf,
                                size_t size, size_t *needed)
{
  return Guard([&] {
    Require(result != nullptr, "result is null");
    CopyOut(ResultCsv(*result, timings != 0), buf, size, needed);
  });
}

gmsfem_status gmsfem_result_write(const gmsfem_result *result, const char *path, int timings)
{
  return Guard([&] {
    Require(result != nullptr && path != nullptr && *path != '\0',
            "result and path must be non-null");
    const std::string resolved = gmsfem::ResolveOutputPath(path);
    gmsfem::WriteTextFile(resolved, ResultCsv(*result, timings != 0));
    if (result->sweep)
    {
      gmsfem::WriteTextFile(gmsfem::PathWithSuffix(resolved, "_eigen"),
                            gmsfem::EigenCsv(result->data));
    }
  });
}

void gmsfem_result_free(gmsfem_result *result) { delete result; }

gmsfem_status gmsfem_ordinates(int32_t m, double offset, double *directions_xy, double *weights)
{
  return Guard([&] {
    Require(directions_xy != nullptr && weights != nullptr, "output arrays must be non-null");
    const auto ords = gmsfem::BuildOrdinates(m, offset);
    for (int i = 0; i < ords.size(); i++)
    {
      directions_xy[2 * i] = ords.directions[i].x();
      directions_xy[2 * i + 1] = ords.directions[i].y();
      weights[i] = ords.weights[i];
    }
  });
}

gmsfem_status gmsfem_mesh_counts(int32_t ncx, int32_t ncy, int32_t nf, int32_t *blocks,
                                 int32_t *interior_edges, int32_t *fine_cells)
{
  return Guard([&] {
    const gmsfem::NestedMesh mesh(ncx, ncy, nf);
    if (blocks != nullptr)
    {
      *blocks = mesh.num_blocks();
    }
    if (interior_edges != nullptr)
    {
      *interior_edges = mesh.num_interior_edges();
    }
    if (fine_cells != nullptr)
    {
      *fine_cells = mesh.num_fine_cells();
    }
  });
}

}  // extern "C"
