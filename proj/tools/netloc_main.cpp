#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "netloc/analytic.hpp"
#include "netloc/config.hpp"
#include "netloc/errors.hpp"
#include "netloc/infoanalysis.hpp"
#include "netloc/localizability.hpp"
#include "netloc/params.hpp"
#include "netloc/simulator.hpp"

namespace {

using namespace netloc;

// Raised when a requested consistency assertion does not hold.
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::string fmt_exact(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

// Shared state for the network-parameter override flags.
struct ConfigFlags {
  std::string path;
  double alpha = 0, lambda = 0, shadow_db = 0, q = 0;
  double gamma = 0, gamma_db = 0, beta = 0, beta_db = 0;
  double sigma_r = 0, m_error = 0;
  int k_reuse = 0, n_max = 0;
  std::map<std::string, CLI::Option*> opts;

  void add_network(CLI::App* sc) {
    sc->add_option("--config", path, "parameter file (key = value lines)");
    opts["alpha"] = sc->add_option("--alpha", alpha, "pathloss exponent");
    opts["lambda"] = sc->add_option("--lambda", lambda, "anchor density per m^2");
    opts["shadow_sigma_db"] =
        sc->add_option("--shadow-db", shadow_db, "lognormal shadowing sigma, dB");
    opts["q"] = sc->add_option("--q", q, "network load probability");
    opts["gamma"] = sc->add_option("--gamma", gamma, "processing gain, linear");
    opts["gamma_db"] = sc->add_option("--gamma-db", gamma_db, "processing gain, dB");
    opts["beta"] = sc->add_option("--beta", beta, "SIR threshold, linear");
    opts["beta_db"] = sc->add_option("--beta-db", beta_db, "SIR threshold, dB");
    opts["k_reuse"] = sc->add_option("--k", k_reuse, "frequency reuse factor");
  }

  void add_marginal(CLI::App* sc) {
    opts["sigma_r"] = sc->add_option("--sigma-r", sigma_r, "ranging error sigma, m");
    opts["m_error"] =
        sc->add_option("--m-error", m_error, "unlocalizable placeholder error, m");
    opts["n_max"] = sc->add_option("--n-max", n_max, "max anchors tasked");
  }

  RunConfig load() const {
    RunConfig cfg;
    if (!path.empty()) cfg = RunConfig::from_file(path);
    std::map<std::string, std::string> kv;
    auto grab = [&](const char* key, double v) {
      auto it = opts.find(key);
      if (it != opts.end() && it->second->count() > 0) kv[key] = fmt_exact(v);
    };
    grab("alpha", alpha);
    grab("lambda", lambda);
    grab("shadow_sigma_db", shadow_db);
    grab("q", q);
    grab("gamma", gamma);
    grab("gamma_db", gamma_db);
    grab("beta", beta);
    grab("beta_db", beta_db);
    grab("sigma_r", sigma_r);
    grab("m_error", m_error);
    auto it = opts.find("k_reuse");
    if (it != opts.end() && it->second->count() > 0)
      kv["k_reuse"] = std::to_string(k_reuse);
    it = opts.find("n_max");
    if (it != opts.end() && it->second->count() > 0)
      kv["n_max"] = std::to_string(n_max);
    cfg.apply(kv);
    cfg.mp.validate();
    return cfg;
  }
};

void finish_outputs(RunManifest& man, const std::string& prefix,
                    const std::string& header,
                    const std::vector<std::string>& rows) {
  const std::string csv = prefix + ".csv";
  man.outputs.push_back(csv);
  write_csv(csv, man.hash_hex(), header, rows);
  man.write_sidecar(prefix + ".manifest");
}

double sup_norm(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

// ---------------------------------------------------------------- cond-cdf

struct CondCdfArgs {
  int l = 0;
  double sigma_r = 20.0;
  int grid_points = 2000;
  long mc_n = 0;
  std::uint64_t seed = 1;
  std::string out = "cond_cdf";
};

int run_cond_cdf(const CondCdfArgs& a) {
  if (a.l < 3)
    throw std::invalid_argument("cond-cdf requires --l >= 3 (the benchmark "
                                "is undefined for smaller sets)");
  if (a.sigma_r <= 0.0) throw std::invalid_argument("--sigma-r must be > 0");
  if (a.grid_points < 1) throw std::invalid_argument("--grid-points must be >= 1");

  const double support = a.sigma_r * std::sqrt(4.0 / a.l);
  std::vector<double> grid =
      a.grid_points == 1 ? std::vector<double>{support * 2.0}
                         : default_s_grid(support, 0.0, a.grid_points);
  CdfCurve curve = tabulate_cdf(
      [&](double s) { return cond_cdf_s(s, a.l, a.sigma_r); }, grid);

  std::vector<std::string> rows;
  rows.reserve(grid.size());
  if (a.mc_n > 0) {
    const McEstimate est = run_conditional_mc(a.l, a.sigma_r, a.mc_n, a.seed);
    const std::vector<double> emp = empirical_cdf(est, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(fmt(grid[i]) + "," + fmt(curve.p[i]) + "," + fmt(emp[i]));
    std::cout << "sup_norm=" << fmt(sup_norm(curve.p, emp)) << "\n";
    std::cout << "singular_draws=" << est.singular_count << "\n";
  } else {
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(fmt(grid[i]) + "," + fmt(curve.p[i]));
  }

  RunManifest man;
  man.command = "cond-cdf";
  man.seed = a.seed;
  std::ostringstream blob;
  blob << "grid_points=" << a.grid_points << "\nl=" << a.l
       << "\nmc_n=" << a.mc_n << "\nsigma_r=" << fmt_exact(a.sigma_r) << "\n";
  man.params_canonical = blob.str();
  finish_outputs(man, a.out, a.mc_n > 0 ? "s_meters,cdf,empirical" : "s_meters,cdf",
                 rows);
  return 0;
}

// --------------------------------------------------------------------- pmf

struct PmfArgs {
  ConfigFlags cf;
  int ell_max = -1;
  long validate_n = 0;
  std::uint64_t seed = 1;
  double mean_anchors = 1000.0;
  std::string out = "pmf_l";
};

int run_pmf(const PmfArgs& a) {
  const RunConfig cfg = a.cf.load();
  const int ell_max = a.ell_max >= 0 ? a.ell_max : cfg.mp.n_max + 25;
  if (ell_max < 3) throw std::invalid_argument("--ell-max must be >= 3");

  const Pmf pmf = pmf_with_reuse(cfg.mp.net, ell_max);

  std::vector<std::string> rows;
  std::string header = "ell,prob";
  if (a.validate_n > 0) {
    header = "ell,prob,mc_prob,abs_dev";
    SimConfig sim;
    sim.mp = cfg.mp;
    sim.seed = a.seed;
    sim.n_realizations = static_cast<int>(a.validate_n);
    sim.mean_anchors = a.mean_anchors;
    const McEstimate est = run_network_mc(sim);
    double max_dev = 0.0;
    for (int ell = 0; ell <= ell_max; ++ell) {
      const double mc =
          (static_cast<std::size_t>(ell) < est.l_histogram.size()
               ? static_cast<double>(est.l_histogram[ell]) : 0.0) /
          static_cast<double>(est.n);
      const double dev = std::fabs(pmf.probs[ell] - mc);
      max_dev = std::max(max_dev, dev);
      rows.push_back(std::to_string(ell) + "," + fmt(pmf.probs[ell]) + "," +
                     fmt(mc) + "," + fmt(dev));
    }
    const double mc_tail = est.empirical_p_l_geq(ell_max + 1);
    rows.push_back("tail_mass," + fmt(pmf.tail_mass) + "," + fmt(mc_tail) +
                   "," + fmt(std::fabs(pmf.tail_mass - mc_tail)));
    std::cout << "max_abs_dev=" << fmt(max_dev) << "\n";
  } else {
    for (int ell = 0; ell <= ell_max; ++ell)
      rows.push_back(std::to_string(ell) + "," + fmt(pmf.probs[ell]));
    rows.push_back("tail_mass," + fmt(pmf.tail_mass));
  }
  std::cout << "p_l_geq_3=" << fmt(pmf.p_geq(3)) << "\n";

  RunManifest man;
  man.command = "pmf";
  man.seed = a.seed;
  std::ostringstream blob;
  blob << cfg.canonical() << "ell_max=" << ell_max
       << "\nmean_anchors=" << fmt_exact(a.mean_anchors)
       << "\nvalidate_n=" << a.validate_n << "\n";
  man.params_canonical = blob.str();
  finish_outputs(man, a.out, header, rows);
  return 0;
}

// ---------------------------------------------------------------- marginal

struct MarginalArgs {
  ConfigFlags cf;
  int grid_points = 2000;
  long validate_n = 0;
  std::uint64_t seed = 1;
  double mean_anchors = 1000.0;
  std::string dump_samples;
  std::string dump_hist;
  std::string out = "marginal";
};

int run_marginal(const MarginalArgs& a) {
  const RunConfig cfg = a.cf.load();
  if (!cfg.has("m_error"))
    throw std::invalid_argument(
        "marginal requires m_error (config key or --m-error)");
  if (a.grid_points < 2) throw std::invalid_argument("--grid-points must be >= 2");

  const MarginalParams& mp = cfg.mp;
  const Pmf pmf = pmf_with_reuse(mp.net, mp.n_max + 25);
  const double support = mp.sigma_r * std::sqrt(4.0 / mp.n_max);
  const std::vector<double> grid =
      default_s_grid(support, mp.m_error, a.grid_points);
  const CdfCurve curve =
      tabulate_cdf([&](double s) { return marginal_cdf_s(s, mp, pmf); }, grid);

  const double atom = pmf.probs[0] + pmf.probs[1] + pmf.probs[2];
  std::cout << "atom_at_m=" << fmt(atom) << "\n";
  std::cout << "localizable_fraction=" << fmt(1.0 - atom) << "\n";

  RunManifest man;
  man.command = "marginal";
  man.seed = a.seed;
  std::ostringstream blob;
  blob << cfg.canonical() << "grid_points=" << a.grid_points
       << "\nmean_anchors=" << fmt_exact(a.mean_anchors)
       << "\nvalidate_n=" << a.validate_n << "\n";
  man.params_canonical = blob.str();

  std::vector<std::string> rows;
  rows.reserve(grid.size());
  std::string header = "s_meters,cdf";
  if (a.validate_n > 0) {
    header = "s_meters,cdf,empirical";
    SimConfig sim;
    sim.mp = mp;
    sim.seed = a.seed;
    sim.n_realizations = static_cast<int>(a.validate_n);
    sim.mean_anchors = a.mean_anchors;
    const McEstimate est = run_network_mc(sim);
    const std::vector<double> emp = empirical_cdf(est, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(fmt(grid[i]) + "," + fmt(curve.p[i]) + "," + fmt(emp[i]));
    std::cout << "sup_norm=" << fmt(sup_norm(curve.p, emp)) << "\n";

    const auto lo = std::lower_bound(est.sorted_s.begin(), est.sorted_s.end(),
                                     mp.m_error);
    const auto hi = std::upper_bound(est.sorted_s.begin(), est.sorted_s.end(),
                                     mp.m_error);
    const double emp_atom =
        static_cast<double>(hi - lo) / static_cast<double>(est.n);
    std::cout << "empirical_atom_at_m=" << fmt(emp_atom) << "\n";
    std::cout << "edge_flagged=" << est.edge_flagged << "\n";

    if (!a.dump_samples.empty()) {
      std::vector<std::string> sample_rows;
      sample_rows.reserve(static_cast<std::size_t>(est.n));
      for (long r = 0; r < est.n; ++r)
        sample_rows.push_back(std::to_string(r) + "," +
                              std::to_string(est.l_by_realization[r]) + "," +
                              fmt(est.s_by_realization[r]));
      man.outputs.push_back(a.dump_samples);
      write_csv(a.dump_samples, man.hash_hex(), "realization,l_heard,s_meters",
                sample_rows);
    }
    if (!a.dump_hist.empty()) {
      std::vector<std::string> hist_rows;
      for (std::size_t ell = 0; ell < est.l_histogram.size(); ++ell)
        hist_rows.push_back(std::to_string(ell) + "," +
                            std::to_string(est.l_histogram[ell]));
      man.outputs.push_back(a.dump_hist);
      write_csv(a.dump_hist, man.hash_hex(), "ell,count", hist_rows);
    }
  } else {
    if (!a.dump_samples.empty() || !a.dump_hist.empty())
      throw std::invalid_argument("sample dumps need --validate");
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(fmt(grid[i]) + "," + fmt(curve.p[i]));
  }

  finish_outputs(man, a.out, header, rows);
  return 0;
}

// ------------------------------------------------------------------- sweep

struct SweepArgs {
  ConfigFlags cf;
  std::string param;
  std::vector<double> values;
  int grid_points = 500;
  std::string out = "sweep";
};

double marginal_percentile(double target, const MarginalParams& mp,
                           const Pmf& pmf) {
  const double support = mp.sigma_r * std::sqrt(4.0 / mp.n_max);
  double lo = support;
  double hi = std::max(10.0 * mp.m_error, 50.0 * support);
  if (marginal_cdf_s(hi, mp, pmf) < target)
    return std::numeric_limits<double>::infinity();
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (marginal_cdf_s(mid, mp, pmf) >= target ? hi : lo) = mid;
  }
  return hi;
}

int run_sweep(const SweepArgs& a) {
  static const std::set<std::string> kIntKeys = {"k_reuse", "n_max"};
  static const std::set<std::string> kKeys = {
      "alpha",   "lambda", "shadow_sigma_db", "q",       "gamma", "gamma_db",
      "beta",    "beta_db", "k_reuse",        "sigma_r", "m_error", "n_max"};
  if (a.values.empty()) throw std::invalid_argument("sweep needs --values");
  if (!kKeys.count(a.param))
    throw std::invalid_argument("unknown sweep parameter '" + a.param + "'");

  const RunConfig base = a.cf.load();
  if (!base.has("m_error") && a.param != "m_error")
    throw std::invalid_argument(
        "sweep requires m_error (config key or --m-error)");

  RunManifest man;
  man.command = "sweep";
  std::ostringstream blob;
  blob << base.canonical() << "grid_points=" << a.grid_points
       << "\nparam=" << a.param << "\nvalues=";
  for (std::size_t i = 0; i < a.values.size(); ++i)
    blob << (i ? "," : "") << fmt_exact(a.values[i]);
  blob << "\n";
  man.params_canonical = blob.str();
  const std::string hash = man.hash_hex();

  std::vector<std::string> summary;
  for (double v : a.values) {
    std::string rendered;
    if (kIntKeys.count(a.param)) {
      const long iv = std::lround(v);
      if (std::fabs(v - static_cast<double>(iv)) > 1e-9)
        throw std::invalid_argument(a.param + " must take integer values");
      rendered = std::to_string(iv);
    } else {
      rendered = fmt_exact(v);
    }
    RunConfig cfg = base;
    cfg.apply({{a.param, rendered}});
    cfg.mp.validate();

    const MarginalParams& mp = cfg.mp;
    const Pmf pmf = pmf_with_reuse(mp.net, mp.n_max + 25);
    const double support = mp.sigma_r * std::sqrt(4.0 / mp.n_max);
    const std::vector<double> grid =
        default_s_grid(support, mp.m_error, a.grid_points);
    const CdfCurve curve = tabulate_cdf(
        [&](double s) { return marginal_cdf_s(s, mp, pmf); }, grid);

    std::vector<std::string> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
      rows.push_back(fmt(grid[i]) + "," + fmt(curve.p[i]));
    const std::string csv = a.out + "_" + a.param + "_" + fmt(v) + ".csv";
    man.outputs.push_back(csv);
    write_csv(csv, hash, "s_meters,cdf", rows);

    const double localizable = pmf.p_geq(3);
    const double s80 = marginal_percentile(0.8, mp, pmf);
    summary.push_back(fmt(v) + "," + fmt(localizable) + "," + fmt(s80));
    std::cout << a.param << "=" << fmt(v)
              << " localizable_fraction=" << fmt(localizable)
              << " s_p80=" << fmt(s80) << "\n";
  }

  const std::string summary_csv = a.out + "_summary.csv";
  man.outputs.push_back(summary_csv);
  write_csv(summary_csv, hash, "value,localizable_fraction,s_p80", summary);
  man.write_sidecar(a.out + ".manifest");
  return 0;
}

// ---------------------------------------------------------------------- mi

struct MiArgs {
  std::vector<int> ls;
  long samples = 1000000;
  std::uint64_t seed = 1;
  double bin_width = 0.01;
  bool no_assert = false;
  std::string out = "mi";
};

int run_mi(const MiArgs& a) {
  if (a.ls.empty()) throw std::invalid_argument("mi needs --l");
  for (int l : a.ls)
    if (l < 3) throw std::invalid_argument("mi requires every --l >= 3");
  if (a.samples < 1)
    throw std::invalid_argument("--samples must be positive");
  if (a.samples < 100000)
    std::cerr << "warning: fewer than 1e5 samples; estimates will be noisy\n";

  const std::vector<MiRow> rows = run_mi_study(a.ls, a.samples, a.seed, a.bin_width);

  std::vector<std::string> csv_rows;
  csv_rows.reserve(rows.size());
  std::map<int, std::map<std::string, double>> by_l;
  for (const MiRow& r : rows) {
    const int i = r.which == "top1" ? r.l : (r.which == "top2" ? r.l - 1 : r.l - 2);
    csv_rows.push_back(std::to_string(r.l) + "," + std::to_string(i) + "," +
                       fmt(r.mi_bits) + "," + std::to_string(r.n_samples) +
                       "," + fmt(r.bin_width));
    by_l[r.l][r.which] = r.mi_bits;
  }

  RunManifest man;
  man.command = "mi";
  man.seed = a.seed;
  std::ostringstream blob;
  blob << "bin_width=" << fmt_exact(a.bin_width) << "\nls=";
  std::vector<int> order(a.ls);
  std::sort(order.begin(), order.end());
  order.erase(std::unique(order.begin(), order.end()), order.end());
  for (std::size_t i = 0; i < order.size(); ++i)
    blob << (i ? "," : "") << order[i];
  blob << "\nsamples=" << a.samples << "\n";
  man.params_canonical = blob.str();
  finish_outputs(man, a.out, "L,i,mi_bits,n_samples,bin_width", csv_rows);

  if (!a.no_assert) {
    for (const auto& [l, mi] : by_l) {
      const double second = mi.at("top2");
      if (!(second > mi.at("top1") && second > mi.at("top3")))
        throw AssertionFailure(
            "second-largest-gap statistic is not the most informative at L=" +
            std::to_string(l) + " (use --no-assert to keep the table anyway)");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Localization-performance distributions for randomly deployed "
               "anchor networks"};
  app.require_subcommand(1);

  CondCdfArgs cond;
  CLI::App* sc_cond = app.add_subcommand(
      "cond-cdf", "CDF of the error benchmark conditioned on the anchor count");
  sc_cond->add_option("--l", cond.l, "participating anchor count")->required();
  sc_cond->add_option("--sigma-r", cond.sigma_r, "ranging error sigma, m");
  sc_cond->add_option("--grid-points", cond.grid_points, "evaluation grid size");
  sc_cond->add_option("--mc", cond.mc_n, "validation draws (0 = off)");
  sc_cond->add_option("--seed", cond.seed, "RNG seed");
  sc_cond->add_option("--out", cond.out, "output prefix");

  PmfArgs pmf;
  CLI::App* sc_pmf =
      app.add_subcommand("pmf", "distribution of the hearable-anchor count");
  pmf.cf.add_network(sc_pmf);
  pmf.cf.add_marginal(sc_pmf);
  sc_pmf->add_option("--ell-max", pmf.ell_max, "truncation point (default n_max+25)");
  sc_pmf->add_option("--validate", pmf.validate_n, "network MC realizations");
  sc_pmf->add_option("--seed", pmf.seed, "RNG seed");
  sc_pmf->add_option("--mean-anchors", pmf.mean_anchors, "mean anchors per realization");
  sc_pmf->add_option("--out", pmf.out, "output prefix");

  MarginalArgs marg;
  CLI::App* sc_marg =
      app.add_subcommand("marginal", "network-wide CDF of the error benchmark");
  marg.cf.add_network(sc_marg);
  marg.cf.add_marginal(sc_marg);
  sc_marg->add_option("--grid-points", marg.grid_points, "evaluation grid size");
  sc_marg->add_option("--validate", marg.validate_n, "network MC realizations");
  sc_marg->add_option("--seed", marg.seed, "RNG seed");
  sc_marg->add_option("--mean-anchors", marg.mean_anchors, "mean anchors per realization");
  sc_marg->add_option("--dump-samples", marg.dump_samples, "per-realization CSV path");
  sc_marg->add_option("--dump-hist", marg.dump_hist, "anchor-count histogram CSV path");
  sc_marg->add_option("--out", marg.out, "output prefix");

  SweepArgs sweep;
  CLI::App* sc_sweep =
      app.add_subcommand("sweep", "marginal CDF across one varying parameter");
  sweep.cf.add_network(sc_sweep);
  sweep.cf.add_marginal(sc_sweep);
  sc_sweep->add_option("--param", sweep.param, "parameter key to vary")->required();
  sc_sweep->add_option("--values", sweep.values, "values to sweep")
      ->required()
      ->delimiter(',');
  sc_sweep->add_option("--grid-points", sweep.grid_points, "evaluation grid size");
  sc_sweep->add_option("--out", sweep.out, "output prefix");

  MiArgs mi;
  CLI::App* sc_mi = app.add_subcommand(
      "mi", "mutual information between the benchmark denominator and the "
            "top gap statistics");
  sc_mi->add_option("--l", mi.ls, "anchor counts to analyze")
      ->required()
      ->delimiter(',');
  sc_mi->add_option("--samples", mi.samples, "draws per anchor count");
  sc_mi->add_option("--seed", mi.seed, "RNG seed");
  sc_mi->add_option("--bin-width", mi.bin_width, "histogram bin width fraction");
  sc_mi->add_flag("--no-assert", mi.no_assert, "emit the table without the ordering check");
  sc_mi->add_option("--out", mi.out, "output prefix");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (sc_cond->parsed()) return run_cond_cdf(cond);
    if (sc_pmf->parsed()) return run_pmf(pmf);
    if (sc_marg->parsed()) return run_marginal(marg);
    if (sc_sweep->parsed()) return run_sweep(sweep);
    if (sc_mi->parsed()) return run_mi(mi);
    std::cerr << "no subcommand given\n";
    return 2;
  } catch (const AssertionFailure& e) {
    std::cerr << "assertion failed: " << e.what() << "\n";
    return 4;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const SingularGeometryError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
