// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

#include "gmsfem/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gmsfem/errors.hpp"
#include "gmsfem/format.hpp"

namespace gmsfem
{

namespace
{

std::string Trim(const std::string &s)
{
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
  {
    return "";
  }
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double ParseDouble(const std::string &key, const std::string &v)
{
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x))
  {
    throw InvalidArgument("config: key '" + key + "' expects a number, got '" + v + "'");
  }
  return x;
}

long long ParseInt(const std::string &key, const std::string &v)
{
  long long x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
  {
    throw InvalidArgument("config: key '" + key + "' expects an integer, got '" + v + "'");
  }
  return x;
}

std::uint64_t ParseSeed(const std::string &key, const std::string &v)
{
  std::uint64_t x = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || ptr != v.data() + v.size())
  {
    throw InvalidArgument("config: key '" + key + "' expects a non-negative integer, got '" +
                          v + "'");
  }
  return x;
}

bool ParseBool(const std::string &key, const std::string &v)
{
  if (v == "on" || v == "true" || v == "1")
  {
    return true;
  }
  if (v == "off" || v == "false" || v == "0")
  {
    return false;
  }
  throw InvalidArgument("config: key '" + key + "' expects on/off, got '" + v + "'");
}

int ToInt(const std::string &key, long long x)
{
  if (x < -1000000000LL || x > 1000000000LL)
  {
    throw InvalidArgument("config: key '" + key + "' is out of range");
  }
  return static_cast<int>(x);
}

std::vector<int> ParseModes(const std::string &key, const std::string &v)
{
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ','))
  {
    item = Trim(item);
    if (item == "full")
    {
      out.push_back(-1);
    }
    else
    {
      out.push_back(ToInt(key, ParseInt(key, item)));
    }
  }
  return out;
}

std::string FormatModes(const std::vector<int> &modes)
{
  std::string out;
  for (std::size_t k = 0; k < modes.size(); k++)
  {
    if (k > 0)
    {
      out += ",";
    }
    out += modes[k] < 0 ? "full" : std::to_string(modes[k]);
  }
  return out;
}

struct KeySpec
{
  std::string name;
  std::function<void(ExperimentConfig &, const std::string &)> set;
  std::function<std::string(const ExperimentConfig &)> get;
};

const std::vector<KeySpec> &Keys()
{
  using C = ExperimentConfig;
  static const std::vector<KeySpec> keys = {
      {"version",
       [](C &c, const std::string &v) { c.version = ToInt("version", ParseInt("version", v)); },
       [](const C &c) { return std::to_string(c.version); }},
      {"mesh.ncx", [](C &c, const std::string &v) { c.ncx = ToInt("mesh.ncx", ParseInt("mesh.ncx", v)); },
       [](const C &c) { return std::to_string(c.ncx); }},
      {"mesh.ncy", [](C &c, const std::string &v) { c.ncy = ToInt("mesh.ncy", ParseInt("mesh.ncy", v)); },
       [](const C &c) { return std::to_string(c.ncy); }},
      {"mesh.nf", [](C &c, const std::string &v) { c.nf = ToInt("mesh.nf", ParseInt("mesh.nf", v)); },
       [](const C &c) { return std::to_string(c.nf); }},
      {"ordinates.m",
       [](C &c, const std::string &v) { c.m = ToInt("ordinates.m", ParseInt("ordinates.m", v)); },
       [](const C &c) { return std::to_string(c.m); }},
      {"ordinates.offset",
       [](C &c, const std::string &v) { c.ordinate_offset = ParseDouble("ordinates.offset", v); },
       [](const C &c) { return FormatDouble(c.ordinate_offset); }},
      {"eps", [](C &c, const std::string &v) { c.eps = ParseDouble("eps", v); },
       [](const C &c) { return FormatDouble(c.eps); }},
      {"media",
       [](C &c, const std::string &v) {
         if (v == "oscillatory")
         {
           c.media = C::Media::Oscillatory;
         }
         else if (v == "contrast")
         {
           c.media = C::Media::Contrast;
         }
         else
         {
           throw InvalidArgument("config: media must be 'oscillatory' or 'contrast', got '" + v +
                                 "'");
         }
       },
       [](const C &c) {
         return std::string(c.media == C::Media::Oscillatory ? "oscillatory" : "contrast");
       }},
      {"media.contrast",
       [](C &c, const std::string &v) { c.contrast = ParseDouble("media.contrast", v); },
       [](const C &c) { return FormatDouble(c.contrast); }},
      {"media.power",
       [](C &c, const std::string &v) { c.power = ToInt("media.power", ParseInt("media.power", v)); },
       [](const C &c) { return std::to_string(c.power); }},
      {"media.seed", [](C &c, const std::string &v) { c.media_seed = ParseSeed("media.seed", v); },
       [](const C &c) { return std::to_string(c.media_seed); }},
      {"media.inclusions",
       [](C &c, const std::string &v) {
         ParseInclusions(v);
         c.inclusions = v;
       },
       [](const C &c) { return c.inclusions; }},
      {"inflow",
       [](C &c, const std::string &v) {
         if (v == "cosine")
         {
           c.inflow = C::Inflow::Cosine;
         }
         else if (v == "constant")
         {
           c.inflow = C::Inflow::Constant;
         }
         else
         {
           throw InvalidArgument("config: inflow must be 'cosine' or 'constant', got '" + v + "'");
         }
       },
       [](const C &c) { return std::string(c.inflow == C::Inflow::Cosine ? "cosine" : "constant"); }},
      {"inflow.value",
       [](C &c, const std::string &v) { c.inflow_value = ParseDouble("inflow.value", v); },
       [](const C &c) { return FormatDouble(c.inflow_value); }},
      {"snapshot.method",
       [](C &c, const std::string &v) {
         if (v == "det")
         {
           c.snapshot_method = SnapshotMethod::Det;
         }
         else if (v == "ran")
         {
           c.snapshot_method = SnapshotMethod::Ran;
         }
         else
         {
           throw InvalidArgument("config: snapshot.method must be 'det' or 'ran', got '" + v +
                                 "'");
         }
       },
       [](const C &c) {
         return std::string(c.snapshot_method == SnapshotMethod::Det ? "det" : "ran");
       }},
      {"snapshot.samples",
       [](C &c, const std::string &v) {
         c.samples = ToInt("snapshot.samples", ParseInt("snapshot.samples", v));
       },
       [](const C &c) { return std::to_string(c.samples); }},
      {"snapshot.seed",
       [](C &c, const std::string &v) { c.snapshot_seed = ParseSeed("snapshot.seed", v); },
       [](const C &c) { return std::to_string(c.snapshot_seed); }},
      {"snapshot.layers",
       [](C &c, const std::string &v) {
         c.layers = ToInt("snapshot.layers", ParseInt("snapshot.layers", v));
       },
       [](const C &c) { return std::to_string(c.layers); }},
      {"snapshot.rank_tol",
       [](C &c, const std::string &v) { c.rank_tol = ParseDouble("snapshot.rank_tol", v); },
       [](const C &c) { return FormatDouble(c.rank_tol); }},
      {"L", [](C &c, const std::string &v) { c.modes = ParseModes("L", v); },
       [](const C &c) { return FormatModes(c.modes); }},
      {"output.csv", [](C &c, const std::string &v) { c.output_csv = v; },
       [](const C &c) { return c.output_csv; }},
      {"output.cache_dir", [](C &c, const std::string &v) { c.cache_dir = v; },
       [](const C &c) { return c.cache_dir; }},
      {"output.solution", [](C &c, const std::string &v) { c.solution_dump = v; },
       [](const C &c) { return c.solution_dump; }},
      {"timings", [](C &c, const std::string &v) { c.timings = ParseBool("timings", v); },
       [](const C &c) { return std::string(c.timings ? "on" : "off"); }},
      {"threads",
       [](C &c, const std::string &v) { c.threads = ToInt("threads", ParseInt("threads", v)); },
       [](const C &c) { return std::to_string(c.threads); }},
      {"study.block",
       [](C &c, const std::string &v) {
         c.study_block = ToInt("study.block", ParseInt("study.block", v));
       },
       [](const C &c) { return std::to_string(c.study_block); }},
  };
  return keys;
}

const KeySpec &FindKey(const std::string &key)
{
  for (const auto &k : Keys())
  {
    if (k.name == key)
    {
      return k;
    }
  }
  throw InvalidArgument("config: unknown key '" + key + "'");
}

}  // namespace

const std::vector<std::string> &ConfigKeys()
{
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto &k : Keys())
    {
      out.push_back(k.name);
    }
    return out;
  }();
  return names;
}

void ValidateConfig(const ExperimentConfig &c)
{
  auto fail = [](const std::string &msg) { throw InvalidArgument("config: " + msg); };
  if (c.version != 1)
  {
    fail("unsupported version " + std::to_string(c.version) + " (expected 1)");
  }
  if (c.ncx < 1 || c.ncy < 1 || c.nf < 1)
  {
    fail("mesh.ncx, mesh.ncy and mesh.nf must be >= 1");
  }
  if (c.m < 2)
  {
    fail("ordinates.m must be >= 2");
  }
  if (!(c.eps > 0.0))
  {
    fail("eps must be > 0");
  }
  if (c.media == ExperimentConfig::Media::Contrast)
  {
    if (!(c.contrast >= 1.0))
    {
      fail("media.contrast must be >= 1");
    }
    if (c.power < 1)
    {
      fail("media.power must be >= 1");
    }
  }
  if (c.samples < 1)
  {
    fail("snapshot.samples must be >= 1");
  }
  if (c.layers < 0)
  {
    fail("snapshot.layers must be >= 0");
  }
  if (!(c.rank_tol >= 0.0 && c.rank_tol < 1.0))
  {
    fail("snapshot.rank_tol must lie in [0, 1)");
  }
  if (c.modes.empty())
  {
    fail("L must list at least one mode count");
  }
  for (int l : c.modes)
  {
    if (l == 0 || l < -1)
    {
      fail("L entries must be positive or 'full'");
    }
  }
  if (c.threads < 1)
  {
    fail("threads must be >= 1");
  }
  if (c.study_block < -1 || c.study_block >= c.ncx * c.ncy)
  {
    fail("study.block is not a valid block id");
  }
}

ExperimentConfig ParseConfig(const std::string &text)
{
  ExperimentConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line))
  {
    lineno++;
    const auto hash = line.find('#');
    if (hash != std::string::npos)
    {
      line.resize(hash);
    }
    line = Trim(line);
    if (line.empty())
    {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
    {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": expected 'key = value'");
    }
    const std::string key = Trim(line.substr(0, eq));
    const std::string value = Trim(line.substr(eq + 1));
    if (!seen.insert(key).second)
    {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": duplicate key '" + key +
                            "'");
    }
    try
    {
      FindKey(key).set(c, value);
    }
    catch (const InvalidArgument &e)
    {
      throw InvalidArgument("config line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  ValidateConfig(c);
  return c;
}

ExperimentConfig LoadConfig(const std::string &path)
{
  std::ifstream f(path);
  if (!f)
  {
    throw IoError("cannot open config file '" + path + "'");
  }
  std::stringstream ss;
  ss << f.rdbuf();
  return ParseConfig(ss.str());
}

void SetConfigValue(ExperimentConfig &config, const std::string &key, const std::string &value)
{
  ExperimentConfig copy = config;
  FindKey(key).set(copy, Trim(value));
  ValidateConfig(copy);
  config = copy;
}

std::string GetConfigValue(const ExperimentConfig &config, const std::string &key)
{
  return FindKey(key).get(config);
}

std::string ExperimentConfig::ToString() const
{
  std::string out;
  for (const auto &k : Keys())
  {
    out += k.name + " = " + k.get(*this) + "\n";
  }
  return out;
}

MediaSpec ExperimentConfig::BuildMedia(const NestedMesh &mesh) const
{
  if (media == Media::Oscillatory)
  {
    return OscillatoryMedia{};
  }
  ContrastMedia cm;
  if (inclusions.empty())
  {
    cm = DefaultContrastField(mesh, contrast, media_seed, power);
  }
  else
  {
    cm.inclusions = ParseInclusions(inclusions);
    cm.contrast = contrast;
    cm.power = power;
  }
  return cm;
}

InflowData ExperimentConfig::BuildInflow() const
{
  return inflow == Inflow::Cosine ? CosineInflow() : ConstantInflow(inflow_value);
}

SnapshotOptions ExperimentConfig::BuildSnapshotOptions() const
{
  SnapshotOptions o;
  o.method = snapshot_method;
  o.samples = samples;
  o.seed = snapshot_seed;
  o.layers = layers;
  o.rank_tol = rank_tol;
  o.threads = threads;
  return o;
}

int ExperimentConfig::ResolvedStudyBlock() const
{
  return study_block >= 0 ? study_block : (ncy / 2) * ncx + ncx / 2;
}

}  // namespace gmsfem
