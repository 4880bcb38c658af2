// Copyright (c) 2026 The gmsfem-boltzmann authors.
// SPDX-License-Identifier: Apache-2.0

// Acceptance gate: runs every acceptance criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "gmsfem/config.hpp"
#include "gmsfem/experiment.hpp"
#include "gmsfem/metrics.hpp"
#include "gmsfem/offline.hpp"
#include "gmsfem/ordinates.hpp"
#include "oracles/dense_oracle.hpp"

using namespace gmsfem;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
  bool pass = false;
  std::string detail;
};

int g_threads = 1;
std::string g_cli;

std::string Fmt(const char *format, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, format, v);
  return buf;
}

std::string Pct(double v) { return Fmt("%.2f%%", 100.0 * v); }
std::string Sci(double v) { return Fmt("%.2e", v); }

ExperimentConfig FullScale(double eps)
{
  ExperimentConfig c;
  c.eps = eps;
  c.threads = g_threads;
  c.timings = false;
  return c;
}

ExperimentConfig Contrast(double eps, int power)
{
  ExperimentConfig c = FullScale(eps);
  c.media = ExperimentConfig::Media::Contrast;
  c.power = power;
  return c;
}

// Full-scale runs shared between criteria.
const ExperimentResult &CachedRun(const ExperimentConfig &config)
{
  static std::map<std::string, ExperimentResult> runs;
  const std::string key = config.ToString();
  auto it = runs.find(key);
  if (it == runs.end())
  {
    it = runs.emplace(key, RunExperiment(config)).first;
  }
  return it->second;
}

const ExperimentRow &RowFor(const ExperimentResult &r, int modes)
{
  for (const auto &row : r.rows)
  {
    if (row.modes == modes)
    {
      return row;
    }
  }
  throw std::runtime_error("missing row for L = " + std::to_string(modes));
}

// 1. Ordinate and scattering identities.
Outcome Algebraic()
{
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  double worst_sum = 0.0, worst_sym = 0.0, worst_row = 0.0, worst_identity = 0.0;
  double worst_kernel = 0.0, min_eig = 0.0;
  for (int m : {2, 3, 4, 6, 8, 12, 16})
  {
    for (double offset : {0.5, 0.25})
    {
      const OrdinateSet ords = BuildOrdinates(m, offset);
      long double sum = 0.0L;
      for (double w : ords.weights)
      {
        sum += w;
      }
      worst_sum = std::max(worst_sum, std::abs(static_cast<double>(sum - 1.0L)));

      const Eigen::MatrixXd a = ScatteringMatrix(ords);
      worst_sym = std::max(worst_sym, (a - a.transpose()).cwiseAbs().maxCoeff());
      worst_row = std::max(worst_row, (a * Eigen::VectorXd::Ones(m)).cwiseAbs().maxCoeff());
      const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
      min_eig = std::min(min_eig, es.eigenvalues()(0));
      // The kernel is exactly the constants: second eigenvalue bounded away from zero.
      const Eigen::VectorXd k = es.eigenvectors().col(0);
      worst_kernel = std::max(worst_kernel, (k.cwiseAbs().array() - 1.0 / std::sqrt(m)).abs().maxCoeff());
      if (es.eigenvalues()(1) < 0.5 / m)
      {
        return {false, "second eigenvalue of the scattering matrix too small for m = " + std::to_string(m)};
      }

      for (int trial = 0; trial < 1000; trial++)
      {
        Eigen::VectorXd u(m);
        for (int i = 0; i < m; i++)
        {
          u(i) = n01(rng);
        }
        double direct = 0.0;
        for (int i = 0; i < m; i++)
        {
          for (int j = i + 1; j < m; j++)
          {
            direct += ords.weights[i] * ords.weights[j] * (u(i) - u(j)) * (u(i) - u(j));
          }
        }
        worst_identity = std::max(worst_identity, std::abs(u.dot(a * u) - direct) / direct);
      }
    }
  }
  const bool pass = worst_sum <= std::numeric_limits<double>::epsilon() && worst_sym == 0.0 &&
                    worst_row < 1e-15 && min_eig > -1e-15 && worst_kernel < 1e-12 &&
                    worst_identity < 1e-12;
  return {pass, "|sum alpha - 1| = " + Sci(worst_sum) + ", row sums " + Sci(worst_row) +
                    ", min eig " + Sci(min_eig) + ", quadratic identity rel " + Sci(worst_identity)};
}

// 2. a(u, u) = ||u||_V^2 on the 10x10x10 mesh.
Outcome FormNorm()
{
  const NestedMesh mesh(10, 10, 10);
  const Discretization disc(mesh, BuildOrdinates(6, 0.25), OscillatoryMedia{}, 5e-3);
  const Norms norms(disc);
  const SparseMatrix t = disc.TransportMatrix(disc.all_blocks());
  std::mt19937_64 rng(2);
  std::normal_distribution<double> n01;
  double worst = 0.0;
  for (int trial = 0; trial < 100; trial++)
  {
    KineticField u = disc.zero_field(disc.all_blocks());
    for (Eigen::Index k = 0; k < u.coeffs().size(); k++)
    {
      u.coeffs()(k) = n01(rng);
    }
    const double a = u.coeffs().dot(t * u.coeffs());
    const double v = norms.V(u);
    worst = std::max(worst, std::abs(a - v * v) / (v * v));
  }
  return {worst < 1e-10, "max relative gap " + Sci(worst) + " over 100 fields"};
}

// 3. Modular fine solve against the hand-coded dense weak form.
Outcome OracleEquivalence()
{
  double worst = 0.0;
  for (double offset : {0.5, 0.25})
  {
    const NestedMesh mesh(1, 1, 2);
    const Discretization disc(mesh, BuildOrdinates(2, offset), OscillatoryMedia{}, 0.1);
    oracle::Problem p;
    p.ncx = 1;
    p.ncy = 1;
    p.nf = 2;
    p.v = disc.ordinates().directions;
    p.alpha = disc.ordinates().weights;
    p.eps = disc.eps();
    const MediaSpec media = OscillatoryMedia{};
    p.media = [&](const Eigen::Vector2d &x) { return EvalMedia(media, x); };
    const InflowData g = CosineInflow();
    p.g = g;
    const oracle::Dense d = oracle::Assemble(p);
    const Eigen::VectorXd ref = (d.a + d.l).fullPivLu().solve(d.f);
    const KineticField uh = SolveFine(disc, g);
    worst = std::max(worst, (uh.coeffs() - ref).cwiseAbs().maxCoeff() / ref.cwiseAbs().maxCoeff());
  }
  return {worst < 1e-12, "max relative nodal difference " + Sci(worst)};
}

ExperimentConfig Reduced(double eps, bool contrast)
{
  ExperimentConfig c = contrast ? Contrast(eps, 4) : FullScale(eps);
  c.ncx = 5;
  c.ncy = 5;
  c.nf = 6;
  c.modes = {1, 3, 5, 10, -1};
  return c;
}

// 4. Stability of every fine and multiscale solution across the test matrix.
Outcome StabilityMatrix()
{
  double worst = -std::numeric_limits<double>::infinity();
  int checked = 0;
  for (bool contrast : {false, true})
  {
    for (double eps : {1e-1, 1e-2, 1e-3})
    {
      const ExperimentResult r = RunExperiment(Reduced(eps, contrast));
      auto check = [&](double lhs, double rhs) {
        worst = std::max(worst, lhs / rhs - 1.0);
        checked++;
      };
      check(r.fine_stability_lhs, r.fine_stability_rhs);
      for (const auto &row : r.rows)
      {
        check(row.stability_lhs, row.stability_rhs);
      }
    }
  }
  return {worst <= 1e-10, std::to_string(checked) + " solutions, max lhs/rhs - 1 = " + Fmt("%.3f", worst)};
}

// 5. Full offline space reproduces the snapshot solution.
Outcome ExactRecovery()
{
  ExperimentConfig c = FullScale(5e-3);
  c.ncx = 5;
  c.ncy = 5;
  c.modes = {-1};
  const ExperimentResult r = RunExperiment(c);
  const double gap = r.rows.at(0).snapshot_gap;
  return {gap < 1e-8, "||u_H - u_snap|| / ||u_snap|| = " + Sci(gap) + " on 5x5 blocks"};
}

// 6. Local pencils bound the global norms on the snapshot space.
Outcome NormBounds()
{
  const NestedMesh mesh(5, 5, 6);
  const Discretization disc(mesh, BuildOrdinates(6, 0.25), OscillatoryMedia{}, 5e-3);
  SnapshotOptions o;
  o.threads = g_threads;
  const auto spaces = BuildSnapshotSpaces(disc, o);
  const OfflineForms forms = ComputeOfflineForms(disc, spaces, g_threads);
  const int nb = mesh.num_blocks();
  std::vector<SpectralPencil> pencils;
  std::vector<int> overlap(nb, 0);
  for (int j = 0; j < nb; j++)
  {
    pencils.push_back(AssemblePencil(forms, EnergyExtend(mesh, forms, j, 1)));
    for (int b : Oversample(mesh, j, 1).blocks)
    {
      overlap[b]++;
    }
  }
  const int m_overlap = *std::max_element(overlap.begin(), overlap.end());
  const Norms norms(disc);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n01;
  double worst_s = 0.0, worst_a = 0.0;
  bool pass = true;
  for (int trial = 0; trial < 20; trial++)
  {
    KineticField u = disc.zero_field(disc.all_blocks());
    double s_sum = 0.0, a_sum = 0.0;
    for (int j = 0; j < nb; j++)
    {
      Eigen::VectorXd c(spaces[j].dim());
      for (Eigen::Index k = 0; k < c.size(); k++)
      {
        c(k) = n01(rng);
      }
      u.set_block_values(j, spaces[j].basis * c);
      s_sum += c.dot(pencils[j].s * c);
      a_sum += c.dot(pencils[j].a * c);
    }
    const double tw = norms.TildeW(u), en = norms.Energy(u);
    worst_s = std::max(worst_s, tw * tw / s_sum);
    worst_a = std::max(worst_a, a_sum / (m_overlap * en * en));
    pass = pass && tw * tw <= s_sum * (1 + 1e-10) && a_sum <= m_overlap * en * en * (1 + 1e-10);
  }
  return {pass, "M = " + std::to_string(m_overlap) + ", max ||u||^2/sum s = " + Fmt("%.3f", worst_s) +
                    ", max sum a/(M E) = " + Fmt("%.3f", worst_a)};
}

// 7. Oscillatory media at eps = 5e-3.
Outcome Table6()
{
  const ExperimentResult &r = CachedRun(FullScale(5e-3));
  const ExperimentRow &l5 = RowFor(r, 5), &l20 = RowFor(r, 20);
  const bool pass = l5.e1 <= 0.04 && l5.e2 <= 0.035 && l20.e1 <= 0.025 && l20.e2 <= 0.025;
  return {pass, "L=5 e1 " + Pct(l5.e1) + " (<= 4%) e2 " + Pct(l5.e2) + " (<= 3.5%); L=20 e1 " +
                    Pct(l20.e1) + " e2 " + Pct(l20.e2) + " (<= 2.5%)"};
}

// 8. Error and conditioning across eps at L = 10. Conditioning counts as blowing up when
// it grows faster than 1/eps between successive eps values.
Outcome EpsRobustness()
{
  const std::vector<double> eps = {5e-2, 5e-3, 5e-4};
  std::vector<const ExperimentRow *> rows;
  for (double e : eps)
  {
    rows.push_back(&RowFor(CachedRun(FullScale(e)), 10));
  }
  bool pass = true;
  std::string detail;
  for (std::size_t k = 0; k < eps.size(); k++)
  {
    pass = pass && rows[k]->e2 <= 0.06 && std::isfinite(rows[k]->condition_estimate);
    if (k > 0)
    {
      pass = pass && rows[k]->condition_estimate / rows[k - 1]->condition_estimate <= eps[k - 1] / eps[k];
    }
    detail += (k ? "; " : "") + Sci(eps[k]) + ": e2 " + Pct(rows[k]->e2) + " cond " + Sci(rows[k]->condition_estimate);
  }
  return {pass, detail};
}

// 9. Contrast exponent does not change the error.
Outcome ContrastRobustness()
{
  bool pass = true;
  std::string detail;
  for (int l : {5, 10, 20})
  {
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    std::string values;
    for (int p : {2, 4, 6})
    {
      const double e2 = RowFor(CachedRun(Contrast(1e-2, p)), l).e2;
      lo = std::min(lo, e2);
      hi = std::max(hi, e2);
      values += (values.empty() ? "" : "/") + Pct(e2);
    }
    const double spread = (hi - lo) / lo;
    pass = pass && spread <= 0.2;
    detail += (detail.empty() ? "" : "; ") + std::string("L=") + std::to_string(l) + " e2 " + values +
              " spread " + Pct(spread);
  }
  return {pass, detail};
}

// 10. Local eigenvalues converge at first order as eps -> 0 and the lowest mode becomes
// isotropic. Order per mode from successive difference ratios.
Outcome EigenAsymptotics()
{
  const ExperimentConfig c = FullScale(1e-1);
  const NestedMesh mesh(c.ncx, c.ncy, c.nf);
  SnapshotOptions o = c.BuildSnapshotOptions();
  o.threads = g_threads;
  const std::vector<double> eps = {1e-1, 5e-2, 2.5e-2, 1.25e-2, 1e-3};
  const auto rows = EpsLimitStudy(mesh, BuildOrdinates(c.m, c.ordinate_offset), c.BuildMedia(mesh),
                                  c.ResolvedStudyBlock(), eps, o);
  const Eigen::Index n = rows[0].eigenvalues.size();
  bool pass = true;
  std::string detail;
  int found = 0;
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (Eigen::Index k = 0; k < n && found < 5; k++)
  {
    bool nonzero = true;
    for (int r = 0; r < 4; r++)
    {
      nonzero = nonzero && rows[r].eigenvalues(k) > 1e-8 * rows[r].eigenvalues.maxCoeff();
    }
    if (!nonzero)
    {
      continue;
    }
    found++;
    double d[3];
    for (int r = 0; r < 3; r++)
    {
      d[r] = std::abs(rows[r].eigenvalues(k) - rows[r + 1].eigenvalues(k));
    }
    for (int r = 0; r < 2; r++)
    {
      const double order = std::log2(d[r] / d[r + 1]);
      lo = std::min(lo, order);
      hi = std::max(hi, order);
      pass = pass && order >= 0.5 && order <= 1.5;
    }
  }
  pass = pass && found == 5;
  const double aniso = rows.back().first_mode_anisotropy;
  pass = pass && aniso < 1e-3;
  detail = "block " + std::to_string(c.ResolvedStudyBlock()) + ", orders in [" + Fmt("%.2f", lo) + ", " +
           Fmt("%.2f", hi) + "] for " + std::to_string(found) + " modes; mode-1 anisotropy at 1e-3 " + Sci(aniso);
  return {pass, detail};
}

std::string Slurp(const fs::path &p)
{
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

// 11. Byte-identical CSV from the CLI across runs and thread counts.
Outcome Determinism()
{
  if (g_cli.empty())
  {
    return {false, "no CLI path given (--cli)"};
  }
  const fs::path dir = fs::temp_directory_path() / "gmsfem-acceptance-determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  ExperimentConfig c = Reduced(5e-3, false);
  c.modes = {1, 2, 3, 5, 7, 10, 15, 20, -1};
  {
    std::ofstream f(dir / "run.cfg");
    f << c.ToString();
  }
  std::vector<std::string> outputs;
  const std::vector<std::pair<const char *, int>> runs = {{"a", 1}, {"b", 1}, {"c", 4}};
  for (const auto &[name, threads] : runs)
  {
    const fs::path out = dir / (std::string(name) + ".csv");
    const std::string cmd = "\"" + g_cli + "\" run \"" + (dir / "run.cfg").string() + "\" -q --threads " +
                            std::to_string(threads) + " --output \"" + out.string() + "\"";
    if (std::system(cmd.c_str()) != 0)
    {
      return {false, "CLI run failed: " + cmd};
    }
    outputs.push_back(Slurp(out));
  }
  fs::remove_all(dir);
  const bool pass = !outputs[0].empty() && outputs[0] == outputs[1] && outputs[0] == outputs[2];
  return {pass, std::to_string(outputs[0].size()) + " bytes, runs with --threads 1, 1, 4"};
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Acceptance criteria"};
  std::vector<int> only;
  g_threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  app.add_option("--cli", g_cli, "Path to gmsfem-cli");
  app.add_option("--only", only, "Criteria to run (default: all)")->delimiter(',');
  app.add_option("--threads", g_threads, "Worker threads")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<int, std::function<Outcome()>>> criteria = {
      {1, Algebraic},     {2, FormNorm},      {3, OracleEquivalence}, {4, StabilityMatrix},
      {5, ExactRecovery}, {6, NormBounds},    {7, Table6},            {8, EpsRobustness},
      {9, ContrastRobustness}, {10, EigenAsymptotics}, {11, Determinism}};

  int failed = 0;
  for (const auto &[id, run] : criteria)
  {
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
    {
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = run();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2d: %s  %s  [%.1fs]\n", id, o.pass ? "PASS" : "FAIL", o.detail.c_str(), s);
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
