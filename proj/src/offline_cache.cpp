// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/offline_cache.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmsfem/errors.hpp"

namespace gmsfem
{

namespace
{

constexpr char kMagic[8] = {'G', 'M', 'S', 'F', 'O', 'F', 'F', 'L'};
constexpr std::uint32_t kFormatVersion = 1;

class Writer
{
public:
  explicit Writer(std::ostream &out) : out_(out) {}

  template <typename T>
  void Pod(const T &v)
  {
    out_.write(reinterpret_cast<const char *>(&v), sizeof(T));
  }
  void String(const std::string &s)
  {
    Pod<std::uint64_t>(s.size());
    out_.write(s.data(), static_cast<std::streamsize>(s.size()));
  }
  void Matrix(const Eigen::MatrixXd &m)
  {
    Pod<std::int64_t>(m.rows());
    Pod<std::int64_t>(m.cols());
    out_.write(reinterpret_cast<const char *>(m.data()),
               static_cast<std::streamsize>(m.size() * sizeof(double)));
  }
  void Vector(const Eigen::VectorXd &v)
  {
    Pod<std::int64_t>(v.size());
    out_.write(reinterpret_cast<const char *>(v.data()),
               static_cast<std::streamsize>(v.size() * sizeof(double)));
  }

private:
  std::ostream &out_;
};

class Reader
{
public:
  explicit Reader(std::istream &in) : in_(in) {}

  bool ok() const { return static_cast<bool>(in_); }

  template <typename T>
  T Pod()
  {
    T v{};
    in_.read(reinterpret_cast<char *>(&v), sizeof(T));
    return v;
  }
  std::string String()
  {
    const auto n = Pod<std::uint64_t>();
    if (!in_ || n > (1u << 20))
    {
      in_.setstate(std::ios::failbit);
      return {};
    }
    std::string s(n, '\0');
    in_.read(s.data(), static_cast<std::streamsize>(n));
    return s;
  }
  Eigen::MatrixXd Matrix()
  {
    const auto r = Pod<std::int64_t>();
    const auto c = Pod<std::int64_t>();
    if (!in_ || r < 0 || c < 0 || r * c > (std::int64_t{1} << 32))
    {
      in_.setstate(std::ios::failbit);
      return {};
    }
    Eigen::MatrixXd m(r, c);
    in_.read(reinterpret_cast<char *>(m.data()),
             static_cast<std::streamsize>(m.size() * sizeof(double)));
    return m;
  }
  Eigen::VectorXd Vector()
  {
    const auto n = Pod<std::int64_t>();
    if (!in_ || n < 0 || n > (std::int64_t{1} << 32))
    {
      in_.setstate(std::ios::failbit);
      return {};
    }
    Eigen::VectorXd v(n);
    in_.read(reinterpret_cast<char *>(v.data()),
             static_cast<std::streamsize>(v.size() * sizeof(double)));
    return v;
  }

private:
  std::istream &in_;
};

}  // namespace

std::string OfflineCacheKey(const ExperimentConfig &c)
{
  static const char *const kKeys[] = {
      "mesh.ncx",        "mesh.ncy",         "mesh.nf",         "ordinates.m",
      "ordinates.offset", "eps",             "media",           "media.contrast",
      "media.power",     "media.seed",       "media.inclusions", "snapshot.method",
      "snapshot.samples", "snapshot.seed",   "snapshot.layers", "snapshot.rank_tol"};
  std::ostringstream out;
  out << "format=" << kFormatVersion << "\n";
  for (const char *k : kKeys)
  {
    out << k << "=" << GetConfigValue(c, k) << "\n";
  }
  return out.str();
}

std::uint64_t Fnv1a64(const std::string &bytes)
{
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes)
  {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string OfflineCachePath(const std::string &dir, const ExperimentConfig &config)
{
  char name[64];
  std::snprintf(name, sizeof(name), "offline-%016llx.bin",
                static_cast<unsigned long long>(Fnv1a64(OfflineCacheKey(config))));
  return (std::filesystem::path(dir) / name).string();
}

bool LoadOfflineCache(const std::string &path, const std::string &key, OfflineArtifacts &out)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    return false;
  }
  Reader r(in);
  char magic[8];
  in.read(magic, sizeof(magic));
  if (!in || !std::equal(magic, magic + 8, kMagic))
  {
    return false;
  }
  if (r.Pod<std::uint32_t>() != kFormatVersion || r.String() != key || !r.ok())
  {
    return false;
  }
  OfflineArtifacts a;
  const auto nblocks = r.Pod<std::uint64_t>();
  if (!r.ok() || nblocks > 1000000)
  {
    return false;
  }
  for (std::uint64_t b = 0; b < nblocks && r.ok(); b++)
  {
    SnapshotSpace s;
    s.block = r.Pod<std::int32_t>();
    s.method = r.Pod<std::int32_t>() == 0 ? SnapshotMethod::Det : SnapshotMethod::Ran;
    s.seed = r.Pod<std::uint64_t>();
    s.samples = r.Pod<std::int32_t>();
    s.basis = r.Matrix();
    s.singular_values = r.Vector();
    a.spaces.push_back(std::move(s));
  }
  for (std::uint64_t b = 0; b < nblocks && r.ok(); b++)
  {
    Eigenpairs e;
    e.values = r.Vector();
    e.vectors = r.Matrix();
    e.ridge = r.Pod<double>();
    e.max_residual = r.Pod<double>();
    a.offline.spectra.push_back(std::move(e));
    a.offline.kkt_residuals.push_back(r.Pod<double>());
    a.offline.extension_ridges.push_back(r.Pod<double>());
  }
  a.offline.seconds = r.Pod<double>();
  if (!r.ok() || r.Pod<std::uint32_t>() != 0x454e4421u || !r.ok())
  {
    return false;
  }
  out = std::move(a);
  return true;
}

void SaveOfflineCache(const std::string &path, const std::string &key,
                      const OfflineArtifacts &artifacts)
{
  if (artifacts.spaces.size() != artifacts.offline.spectra.size())
  {
    throw InvalidArgument("offline cache: spaces and spectra differ in length");
  }
  std::error_code ec;
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty())
  {
    std::filesystem::create_directories(parent, ec);
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
    {
      throw IoError("offline cache: cannot write '" + tmp + "'");
    }
    Writer w(out);
    out.write(kMagic, sizeof(kMagic));
    w.Pod(kFormatVersion);
    w.String(key);
    w.Pod<std::uint64_t>(artifacts.spaces.size());
    for (const auto &s : artifacts.spaces)
    {
      w.Pod<std::int32_t>(s.block);
      w.Pod<std::int32_t>(s.method == SnapshotMethod::Det ? 0 : 1);
      w.Pod<std::uint64_t>(s.seed);
      w.Pod<std::int32_t>(s.samples);
      w.Matrix(s.basis);
      w.Vector(s.singular_values);
    }
    for (std::size_t b = 0; b < artifacts.spaces.size(); b++)
    {
      const auto &e = artifacts.offline.spectra[b];
      w.Vector(e.values);
      w.Matrix(e.vectors);
      w.Pod(e.ridge);
      w.Pod(e.max_residual);
      w.Pod(b < artifacts.offline.kkt_residuals.size() ? artifacts.offline.kkt_residuals[b] : 0.0);
      w.Pod(b < artifacts.offline.extension_ridges.size() ? artifacts.offline.extension_ridges[b]
                                                          : 0.0);
    }
    w.Pod(artifacts.offline.seconds);
    w.Pod<std::uint32_t>(0x454e4421u);
    if (!out)
    {
      throw IoError("offline cache: write failed for '" + tmp + "'");
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec)
  {
    std::filesystem::remove(tmp, ec);
    throw IoError("offline cache: cannot move '" + tmp + "' to '" + path + "'");
  }
}

}  // namespace gmsfem
