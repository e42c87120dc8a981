// ovalcount -- experiment runner for the lattice point counting toolkit.
//
// One subcommand per claim:
//
//   run_count     normalized counting error over Haar-random lattices
//   run_gap       tail of the gap |normalized error - S_A'| across (A,t) pairs
//   run_limit     Monte Carlo draws of the truncated limit series + moments
//   run_converge  KS distance between counting and limit distributions
//   run_siegel    mean/variance/small-ball checks of the Siegel transform
//   run_equidist  uniformity of the dilation phases theta_k at large t
//
// All randomness flows from one root seed through per-sample derived seeds,
// and aggregation happens in sample-index order, so output files are
// byte-identical for any --workers value. Exit codes: 0 success, 2 config
// error, 3 resource cap exceeded.

#include <atomic>
#include <cstdio>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ovals/counting.hpp"
#include "ovals/fourier.hpp"
#include "ovals/geometry.hpp"
#include "ovals/io.hpp"
#include "ovals/lattice.hpp"
#include "ovals/limit_law.hpp"
#include "ovals/rng.hpp"
#include "ovals/siegel.hpp"
#include "ovals/stats.hpp"

using namespace ovals;

namespace {

// ---------------------------------------------------------------------------
// shared plumbing
// ---------------------------------------------------------------------------

struct Runtime {
  ExperimentConfig cfg;
  OvalCurve curve = OvalCurve::disk();
  std::optional<UnimodularLattice> fixed;  // --fixed-lattice
};

// run fn(0..n-1) on the worker pool; fn must only touch its own slot
template <class Fn>
void run_indexed(std::uint64_t n, int workers, Fn&& fn) {
  if (workers <= 1 || n < 2) {
    for (std::uint64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto drain = [&] {
    try {
      for (std::uint64_t i; (i = next.fetch_add(1)) < n;) fn(i);
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next.store(n);  // stop the other workers
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

// Haar draw conditioned exactly like the limit-law sampler: generic reduced
// basis, shortest vector at least min_norm
UnimodularLattice draw_lattice(Rng& rng, double min_norm) {
  for (;;) {
    UnimodularLattice L = sample_haar(rng);
    ReducedBasis rb = reduce(L);
    if (rb.nongeneric || rb.norm1 < min_norm) continue;
    return L;
  }
}

// truncation length: explicit m_max, or derived from the certified tail bound
int resolve_m_max(const Runtime& rt, double A) {
  if (rt.cfg.tolerance > 0.0)
    return ApproximantConfig::certified(A, rt.cfg.tolerance, rt.curve).m_max;
  return rt.cfg.m_max;
}

std::string t_tag(double t) { return format_decimal(t); }

void write_lines(const std::string& path, const json& config_echo,
                 const std::vector<std::optional<std::string>>& lines) {
  std::string text = json{{"config", config_echo}}.dump() + "\n";
  for (const auto& line : lines)
    if (line) {
      text += *line;
      text += "\n";
    }
  write_text(path, text);
}

// ---------------------------------------------------------------------------
// run_count
// ---------------------------------------------------------------------------

int run_count(const Runtime& rt) {
  const ExperimentConfig& cfg = rt.cfg;
  if (cfg.t_grid.empty()) throw std::domain_error("run_count: need --t");
  const json echo = config_json(cfg);
  std::mutex log_mu;

  for (std::size_t j = 0; j < cfg.t_grid.size(); ++j) {
    const double t = cfg.t_grid[j];
    std::vector<std::optional<std::string>> records(cfg.n_lattice);
    std::uint64_t skipped = 0;

    run_indexed(cfg.n_lattice, cfg.workers, [&](std::uint64_t i) {
      const std::uint64_t s = derive_seed(cfg.seed, j * cfg.n_lattice + i);
      Rng rng(s);
      const UnimodularLattice L = rt.fixed ? *rt.fixed : draw_lattice(rng, cfg.min_norm);
      try {
        records[i] = error_sample_record(s, error_normalized(rt.curve, L, t, cfg.alpha));
      } catch (const ResourceError& e) {
        std::lock_guard<std::mutex> lock(log_mu);
        ++skipped;
        std::fprintf(stderr, "{\"skip\":true,\"seed\":%llu,\"t\":%s,\"reason\":\"%s\"}\n",
                     static_cast<unsigned long long>(s), t_tag(t).c_str(), e.what());
      }
    });

    const std::string path = path_join(cfg.out_dir, "count_t" + t_tag(t) + ".jsonl");
    write_lines(path, echo, records);
    std::printf("count t=%s  samples=%llu  skipped=%llu  -> %s\n", t_tag(t).c_str(),
                static_cast<unsigned long long>(cfg.n_lattice - skipped),
                static_cast<unsigned long long>(skipped), path.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// run_gap
// ---------------------------------------------------------------------------

// (A, t) pairs: equal-length grids zip, a single A broadcasts over t
std::vector<std::pair<double, double>> gap_pairs(const ExperimentConfig& cfg) {
  if (cfg.t_grid.empty()) throw std::domain_error("run_gap: need --t");
  std::vector<double> As = cfg.A_grid.empty() ? std::vector<double>{10.0} : cfg.A_grid;
  if (As.size() == 1) As.assign(cfg.t_grid.size(), As[0]);
  if (As.size() != cfg.t_grid.size())
    throw std::domain_error("run_gap: --A must be one value or match --t in length");
  std::vector<std::pair<double, double>> pairs;
  for (std::size_t j = 0; j < As.size(); ++j) pairs.emplace_back(As[j], cfg.t_grid[j]);
  return pairs;
}

int run_gap(const Runtime& rt) {
  const ExperimentConfig& cfg = rt.cfg;
  const auto pairs = gap_pairs(cfg);
  if (cfg.n_lattice == 0) throw std::domain_error("run_gap: need --n-lattice > 0");
  const json echo = config_json(cfg);
  const std::vector<double> x_grid = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};

  json report;
  report["config"] = echo;
  report["pairs"] = json::array();
  std::vector<std::vector<double>> tails;  // per pair, per x

  for (std::size_t j = 0; j < pairs.size(); ++j) {
    const double A = pairs[j].first;
    const double t = pairs[j].second;
    ApproximantConfig acfg;
    acfg.A = A;
    acfg.m_max = resolve_m_max(rt, A);
    acfg.tolerance = cfg.tolerance;
    acfg.validate();

    std::vector<std::optional<std::string>> records(cfg.n_lattice);
    std::vector<double> deltas(cfg.n_lattice);
    run_indexed(cfg.n_lattice, cfg.workers, [&](std::uint64_t i) {
      const std::uint64_t s = derive_seed(cfg.seed, j * cfg.n_lattice + i);
      Rng rng(s);
      const UnimodularLattice L = rt.fixed ? *rt.fixed : draw_lattice(rng, cfg.min_norm);
      const ErrorSample es = error_normalized(rt.curve, L, t);
      const double sa = s_A_prime(rt.curve, L, t, Vec2::Zero(), acfg);
      GapSample g;
      g.seed = s;
      g.A = A;
      g.m_max = acfg.m_max;
      g.t = t;
      g.delta = std::abs(es.normalized - sa);
      g.s_A_prime = sa;
      g.normalized_error = es.normalized;
      deltas[i] = g.delta;
      records[i] = gap_sample_record(g);
    });

    const std::string path =
        path_join(cfg.out_dir, "gap_A" + format_decimal(A) + "_t" + t_tag(t) + ".jsonl");
    write_lines(path, echo, records);

    json row;
    row["A"] = format_decimal(A);
    row["t"] = format_decimal(t);
    row["m_max"] = acfg.m_max;
    row["n"] = cfg.n_lattice;
    json tail;
    std::vector<double> tj;
    for (double x : x_grid) {
      std::uint64_t hits = 0;
      for (double d : deltas) hits += (d >= x);
      const double p = double(hits) / double(cfg.n_lattice);
      tail[format_decimal(x)] = format_decimal(p);
      tj.push_back(p);
    }
    row["tail"] = tail;
    report["pairs"].push_back(row);
    tails.push_back(tj);
    std::printf("gap A=%s t=%s  m_max=%d  P(delta>=0.5)=%s  -> %s\n", format_decimal(A).c_str(),
                t_tag(t).c_str(), acfg.m_max, format_decimal(tj[4]).c_str(), path.c_str());
  }

  // monotonicity summary: tails should not grow as (A, t) climbs the grid
  json mono;
  for (std::size_t k = 0; k < x_grid.size(); ++k) {
    bool ok = true;
    for (std::size_t j = 1; j < tails.size(); ++j) ok = ok && tails[j][k] <= tails[j - 1][k];
    mono[format_decimal(x_grid[k])] = ok;
  }
  report["tail_nonincreasing"] = mono;

  const std::string rpath = path_join(cfg.out_dir, "gap_report.json");
  write_text(rpath, report.dump(2) + "\n");
  std::printf("gap report -> %s\n", rpath.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// run_limit
// ---------------------------------------------------------------------------

json moment_report_json(const MomentReport& mr) {
  json j;
  j["n"] = mr.n;
  j["mean"] = format_decimal(mr.mean);
  j["mean_se"] = format_decimal(mr.mean_se);
  j["tail_slope"] = format_decimal(mr.tail_slope);
  j["rows"] = json::array();
  for (const MomentRow& r : mr.rows) {
    json row;
    row["order"] = format_decimal(r.order);
    row["quarter"] = format_decimal(r.quarter);
    row["half"] = format_decimal(r.half);
    row["full"] = format_decimal(r.full);
    row["rel_spread"] = format_decimal(r.rel_spread);
    row["stable"] = r.stable;
    j["rows"].push_back(row);
  }
  return j;
}

int run_limit(const Runtime& rt) {
  const ExperimentConfig& cfg = rt.cfg;
  if (cfg.n_lattice == 0) throw std::domain_error("run_limit: need --n-lattice > 0");
  LimitConfig lcfg;
  lcfg.A = cfg.A_grid.empty() ? 40.0 : cfg.A_grid.front();
  lcfg.m_max = resolve_m_max(rt, lcfg.A);
  lcfg.n_theta = cfg.n_theta;
  lcfg.n_lattice = cfg.n_lattice;
  lcfg.seed = cfg.seed;
  lcfg.min_norm = cfg.min_norm;
  lcfg.validate();

  // same draws as estimate_cdf, sliced across the pool by lattice index
  const PhiSeries series(lcfg.m_max);
  std::vector<double> xs(cfg.n_lattice * cfg.n_theta);
  run_indexed(cfg.n_lattice, cfg.workers, [&](std::uint64_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    ReducedBasis rb;
    if (rt.fixed) {
      rb = reduce(*rt.fixed);
    } else {
      do {
        rb = reduce(sample_haar(rng));
      } while (rb.nongeneric || rb.norm1 < cfg.min_norm);
    }
    for (std::uint64_t k = 0; k < cfg.n_theta; ++k)
      xs[i * cfg.n_theta + k] = sample_limit_series(rt.curve, rb, cfg.alpha, lcfg, rng, series);
  });

  json header;
  header["config"] = config_json(cfg);
  header["curve"] = curve_spec_json(rt.curve);
  header["series"] = {{"kind", "limit-series"},
                      {"A", format_decimal(lcfg.A)},
                      {"m_max", lcfg.m_max}};
  EmpiricalDistribution dist(xs, header.dump());

  const std::string dpath = path_join(cfg.out_dir, "limit_dist.txt");
  write_distribution(dpath, header, dist.samples);
  const std::string hpath = path_join(cfg.out_dir, "limit_hist.csv");
  write_histogram_csv(hpath, histogram(dist, 64));
  std::printf("limit A=%s m_max=%d  draws=%zu  -> %s, %s\n", format_decimal(lcfg.A).c_str(),
              lcfg.m_max, dist.size(), dpath.c_str(), hpath.c_str());

  if (dist.size() >= 1000) {
    const MomentReport mr = moment_diagnostics(dist, {1.2, 2.0});
    json mj;
    mj["config"] = config_json(cfg);
    mj["moments"] = moment_report_json(mr);
    const std::string mpath = path_join(cfg.out_dir, "limit_moments.json");
    write_text(mpath, mj.dump(2) + "\n");
    std::printf("limit moments: mean=%s (se %s)  -> %s\n", format_decimal(mr.mean).c_str(),
                format_decimal(mr.mean_se).c_str(), mpath.c_str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// run_converge
// ---------------------------------------------------------------------------

struct ConvergeInputs {
  std::vector<std::string> count_paths;
  std::string limit_path;
};

int run_converge(const Runtime& rt, const ConvergeInputs& in) {
  const ExperimentConfig& cfg = rt.cfg;

  // the limit-law reference sample
  std::vector<double> limit_values;
  if (!in.limit_path.empty()) {
    limit_values = read_distribution(in.limit_path).second;
  } else {
    LimitConfig lcfg;
    lcfg.A = cfg.A_grid.empty() ? 40.0 : cfg.A_grid.front();
    lcfg.m_max = resolve_m_max(rt, lcfg.A);
    lcfg.n_theta = cfg.n_theta;
    lcfg.n_lattice = cfg.n_lattice;
    lcfg.seed = cfg.seed;
    lcfg.min_norm = cfg.min_norm;
    limit_values = estimate_cdf(rt.curve, cfg.alpha, lcfg).samples;
  }
  if (limit_values.empty()) throw std::domain_error("run_converge: empty limit sample");
  const EmpiricalDistribution limit_dist(limit_values);

  // one counting distribution per t (from disk, or computed on the spot)
  struct Leg {
    std::string label;
    std::vector<double> normalized;
  };
  std::vector<Leg> legs;
  if (!in.count_paths.empty()) {
    for (const std::string& p : in.count_paths) {
      Leg leg;
      leg.normalized = read_jsonl_field(p, "normalized");
      const std::vector<double> ts = read_jsonl_field(p, "t");
      leg.label = ts.empty() ? p : format_decimal(ts.front());
      legs.push_back(std::move(leg));
    }
  } else {
    if (cfg.t_grid.empty()) throw std::domain_error("run_converge: need --t or --count-in");
    for (std::size_t j = 0; j < cfg.t_grid.size(); ++j) {
      const double t = cfg.t_grid[j];
      Leg leg;
      leg.label = format_decimal(t);
      leg.normalized.resize(cfg.n_lattice);
      run_indexed(cfg.n_lattice, cfg.workers, [&](std::uint64_t i) {
        Rng rng(derive_seed(cfg.seed, j * cfg.n_lattice + i));
        const UnimodularLattice L = rt.fixed ? *rt.fixed : draw_lattice(rng, cfg.min_norm);
        leg.normalized[i] = error_normalized(rt.curve, L, t, cfg.alpha).normalized;
      });
      legs.push_back(std::move(leg));
    }
  }

  json report;
  report["config"] = config_json(cfg);
  report["limit_n"] = limit_dist.size();
  report["rows"] = json::array();
  std::vector<double> ks_values;
  for (const Leg& leg : legs) {
    if (leg.normalized.empty()) throw std::domain_error("run_converge: empty counting sample");
    const double ks = ks_distance(EmpiricalDistribution(leg.normalized), limit_dist);
    json row;
    row["t"] = leg.label;
    row["n"] = leg.normalized.size();
    row["ks"] = format_decimal(ks);
    report["rows"].push_back(row);
    ks_values.push_back(ks);
    std::printf("converge t=%s  n=%zu  ks=%s\n", leg.label.c_str(), leg.normalized.size(),
                format_decimal(ks).c_str());
  }
  bool decreasing = true;
  for (std::size_t j = 1; j < ks_values.size(); ++j)
    decreasing = decreasing && ks_values[j] <= ks_values[j - 1];
  report["ks_decreasing"] = decreasing;

  const std::string rpath = path_join(cfg.out_dir, "convergence.json");
  write_text(rpath, report.dump(2) + "\n");
  std::printf("convergence report -> %s\n", rpath.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// run_siegel
// ---------------------------------------------------------------------------

int run_siegel(const Runtime& rt) {
  const ExperimentConfig& cfg = rt.cfg;
  if (rt.fixed) throw std::domain_error("run_siegel: --fixed-lattice is not meaningful here");
  const std::uint64_t n = cfg.n_lattice;

  const std::vector<TestFunction> funcs = {
      TestFunction::ball(0.5), TestFunction::ball(1.0), TestFunction::ball(2.0),
      TestFunction::smooth_bump(1.0), TestFunction::annulus(0.5, 1.0)};

  json report;
  report["config"] = config_json(cfg);
  report["means"] = json::array();
  for (const TestFunction& f : funcs)
    for (SiegelMode mode : {SiegelMode::Primitive, SiegelMode::AllNonzero}) {
      const SiegelReport r = validate_mean(f, n, cfg.seed, mode);
      report["means"].push_back(siegel_report_json(r));
      std::printf("siegel mean %-16s %-12s estimate=%-12s z=%-8s %s\n", r.formula.c_str(),
                  r.mode.c_str(), format_decimal(r.estimate).c_str(),
                  format_decimal(r.z).c_str(), r.verdict ? "ok" : "FAIL");
    }

  const VarianceReport vr = validate_variance(TestFunction::ball(1.0), n, cfg.seed);
  report["variance"] = {{"mode", vr.mode},
                        {"n", vr.n},
                        {"second_moment", format_decimal(vr.second_moment)},
                        {"c_hat", format_decimal(vr.c_hat)}};
  std::printf("siegel variance ball(1): E[S^2]=%s  C_hat=%s\n",
              format_decimal(vr.second_moment).c_str(), format_decimal(vr.c_hat).c_str());

  report["small_ball"] = json::array();
  for (const SmallBallRow& row : small_ball_probability({0.05, 0.1, 0.2}, n, cfg.seed)) {
    report["small_ball"].push_back({{"epsilon", format_decimal(row.epsilon)},
                                    {"hits", row.hits},
                                    {"probability", format_decimal(row.probability)},
                                    {"ratio", format_decimal(row.ratio)},
                                    {"wilson_lo", format_decimal(row.wilson_lo)},
                                    {"wilson_hi", format_decimal(row.wilson_hi)}});
    std::printf("siegel small-ball eps=%s  P=%s  P/eps^2=%s\n",
                format_decimal(row.epsilon).c_str(), format_decimal(row.probability).c_str(),
                format_decimal(row.ratio).c_str());
  }

  const std::string rpath = path_join(cfg.out_dir, "siegel_report.json");
  write_text(rpath, report.dump(2) + "\n");
  std::printf("siegel report -> %s\n", rpath.c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// run_equidist
// ---------------------------------------------------------------------------

int run_equidist(const Runtime& rt) {
  const ExperimentConfig& cfg = rt.cfg;
  if (rt.fixed) throw std::domain_error("run_equidist: --fixed-lattice is not meaningful here");
  if (cfg.t_grid.empty()) throw std::domain_error("run_equidist: need --t");
  if (cfg.n_lattice == 0) throw std::domain_error("run_equidist: need --n-lattice > 0");
  const double t = cfg.t_grid.back();

  std::vector<double> th10(cfg.n_lattice);
  std::vector<std::pair<double, double>> joint(cfg.n_lattice);
  run_indexed(cfg.n_lattice, cfg.workers, [&](std::uint64_t i) {
    Rng rng(derive_seed(cfg.seed, i));
    ReducedBasis rb;
    do {
      rb = reduce(sample_haar(rng));
    } while (rb.nongeneric || rb.norm1 < cfg.min_norm);
    const double a = theta_k(rt.curve, rb, PrimitiveIndex{1, 0}, t);
    const double b = theta_k(rt.curve, rb, PrimitiveIndex{1, 1}, t);
    th10[i] = a;
    joint[i] = {a, b};
  });

  const int bins_1d = 20, bins_2d = 5;
  const double p1 = chi_square_uniform(th10, bins_1d);
  const double p2 = chi_square_uniform_2d(joint, bins_2d);

  json report;
  report["config"] = config_json(cfg);
  report["t"] = format_decimal(t);
  report["n"] = cfg.n_lattice;
  report["theta_10"] = {{"bins", bins_1d}, {"p_value", format_decimal(p1)}};
  report["theta_10_theta_11"] = {{"bins_per_dim", bins_2d}, {"p_value", format_decimal(p2)}};

  const std::string rpath = path_join(cfg.out_dir, "equidist_report.json");
  write_text(rpath, report.dump(2) + "\n");
  std::printf("equidist t=%s  n=%llu  p(theta_10)=%s  p(joint)=%s  -> %s\n", t_tag(t).c_str(),
              static_cast<unsigned long long>(cfg.n_lattice), format_decimal(p1).c_str(),
              format_decimal(p2).c_str(), rpath.c_str());
  return 0;
}

}  // namespace

// ---------------------------------------------------------------------------
// argument wiring
// ---------------------------------------------------------------------------

int main(int argc, char** argv) {
  CLI::App app{"lattice point counting experiments for strictly convex ovals"};
  app.require_subcommand(1);

  ExperimentConfig cfg;
  std::vector<double> alpha_v;
  ConvergeInputs conv;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--curve", cfg.curve, "preset (disk, ellipse(a,b)) or spec-file path");
    sub->add_option("--t", cfg.t_grid, "comma-separated dilation grid")->delimiter(',');
    sub->add_option("--A", cfg.A_grid, "dual/primitive cutoff length(s)")->delimiter(',');
    sub->add_option("--m-max", cfg.m_max, "multiplicity series truncation");
    sub->add_option("--tolerance", cfg.tolerance,
                    "certified series tail bound; overrides --m-max when set");
    sub->add_option("--alpha", alpha_v, "translation vector x,y")->delimiter(',');
    sub->add_option("--n-lattice", cfg.n_lattice, "Monte Carlo lattice draws");
    sub->add_option("--n-theta", cfg.n_theta, "phase draws per lattice");
    sub->add_option("--seed", cfg.seed, "root seed");
    sub->add_option("--condition-min-norm", cfg.min_norm,
                    "resample lattices whose shortest vector is below this");
    sub->add_option("--workers", cfg.workers, "worker threads");
    sub->add_option("--out", cfg.out_dir, "output directory");
    sub->add_option("--fixed-lattice", cfg.fixed_lattice,
                    "basis dump file; replaces Haar sampling");
  };

  CLI::App* c_count = app.add_subcommand("run_count", "counting error over random lattices");
  CLI::App* c_gap = app.add_subcommand("run_gap", "gap to the truncated Fourier approximant");
  CLI::App* c_limit = app.add_subcommand("run_limit", "sample the limit series");
  CLI::App* c_conv = app.add_subcommand("run_converge", "KS distance of counting vs limit law");
  CLI::App* c_siegel = app.add_subcommand("run_siegel", "Siegel transform validations");
  CLI::App* c_equi = app.add_subcommand("run_equidist", "phase uniformity at large t");
  for (CLI::App* sub : {c_count, c_gap, c_limit, c_conv, c_siegel, c_equi}) add_common(sub);
  c_conv->add_option("--count-in", conv.count_paths, "counting sample files (skip recompute)");
  c_conv->add_option("--limit-in", conv.limit_path, "limit distribution file (skip recompute)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    app.exit(e);
    return 2;
  }

  try {
    if (!alpha_v.empty() && alpha_v.size() != 2)
      throw std::domain_error("--alpha needs exactly two components x,y");
    if (alpha_v.size() == 2) cfg.alpha = Vec2(alpha_v[0], alpha_v[1]);
    cfg.validate();

    Runtime rt;
    rt.cfg = cfg;
    rt.curve = resolve_curve(cfg.curve);
    if (!cfg.fixed_lattice.empty()) rt.fixed = load_lattice(cfg.fixed_lattice);
    ensure_dir(cfg.out_dir);

    if (c_count->parsed()) return run_count(rt);
    if (c_gap->parsed()) return run_gap(rt);
    if (c_limit->parsed()) return run_limit(rt);
    if (c_conv->parsed()) return run_converge(rt, conv);
    if (c_siegel->parsed()) return run_siegel(rt);
    if (c_equi->parsed()) return run_equidist(rt);
    return 2;  // unreachable: a subcommand is required
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource cap: %s\n", e.what());
    return 3;
  } catch (const CLI::Error&) {
    return 2;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
