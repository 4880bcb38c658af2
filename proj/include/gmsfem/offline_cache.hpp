// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef GMSFEM_OFFLINE_CACHE_HPP
#define GMSFEM_OFFLINE_CACHE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "gmsfem/config.hpp"
#include "gmsfem/offline.hpp"
#include "gmsfem/snapshot.hpp"

namespace gmsfem
{

// Everything the online stage needs that does not depend on the inflow data. Spaces
// loaded from the cache carry their filtered basis and singular values only; the raw
// snapshot matrices are not stored.
struct OfflineArtifacts
{
  std::vector<SnapshotSpace> spaces;
  OfflineResult offline;
};

// Canonical description of every config field that influences the offline stage.
std::string OfflineCacheKey(const ExperimentConfig &config);

std::uint64_t Fnv1a64(const std::string &bytes);

// <dir>/offline-<16 hex digits>.bin
std::string OfflineCachePath(const std::string &dir, const ExperimentConfig &config);

// Returns false when the file is missing, truncated, of another format version or was
// written for a different key.
bool LoadOfflineCache(const std::string &path, const std::string &key, OfflineArtifacts &out);

// Writes atomically (temporary file plus rename). Throws IoError.
void SaveOfflineCache(const std::string &path, const std::string &key,
                      const OfflineArtifacts &artifacts);

}  // namespace gmsfem

#endif  // GMSFEM_OFFLINE_CACHE_HPP
