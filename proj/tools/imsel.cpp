// imsel: prior-free probabilistic variable selection for Gaussian linear
// regression, with post-selection regions, max-norm distribution dumps,
// information-criterion / lasso baselines and a simulation harness.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "imsel/baselines.hpp"
#include "imsel/csv.hpp"
#include "imsel/errors.hpp"
#include "imsel/im.hpp"
#include "imsel/maxnorm.hpp"
#include "imsel/rng.hpp"
#include "imsel/sim.hpp"
#include "imsel/student_t.hpp"

namespace {

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

// Writes to the named file, or stdout when the path is empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string join_names(const std::vector<int>& selected,
                       const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < selected.size(); ++i) {
    if (i > 0) out += " ";
    const int idx = selected[i] - 1;
    out += idx < static_cast<int>(names.size()) ? names[static_cast<std::size_t>(idx)]
                                                : ("x" + std::to_string(selected[i]));
  }
  return out.empty() ? "(none)" : out;
}

struct CommonOpts {
  std::string input;
  std::string response;
  std::string output;
  double alpha = 0.05;
  std::int64_t b = 100000;
  std::uint64_t seed = 0;
  int threads = 0;
};

void add_data_flags(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("--input", opt.input, "CSV file (header row, numeric cells)")->required();
  cmd->add_option("--response", opt.response, "name of the response column")->required();
}

void add_mc_flags(CLI::App* cmd, CommonOpts& opt) {
  cmd->add_option("--alpha", opt.alpha, "selection level in (0,1)")->default_val(0.05);
  cmd->add_option("--b", opt.b, "Monte Carlo sample count")->default_val(100000);
  cmd->add_option("--seed", opt.seed, "RNG seed")->default_val(0);
  cmd->add_option("--threads", opt.threads, "worker threads (0 = hardware default)")->default_val(0);
  cmd->add_option("--output", opt.output, "output file (default stdout)");
}

int cmd_select(const CommonOpts& opt) {
  const imsel::Dataset data = imsel::center(imsel::read_dataset_csv(opt.input, opt.response));
  const imsel::ThetaFit f = imsel::fit(data);
  const imsel::MaxNormDist dist =
      imsel::build_maxnorm(f.L, f.nu, opt.b, opt.seed, opt.threads);
  const imsel::PlausibilityTable table = imsel::plausibility_table(f, dist);
  const imsel::SelectionResult sel = imsel::select(table, opt.alpha);

  Output out(opt.output);
  out.stream() << "# imsel select alpha=" << fmt(opt.alpha) << " b=" << opt.b
               << " seed=" << opt.seed << " nu=" << f.nu << "\n";
  out.stream() << "order,name,abs_t,eta\n";
  for (Eigen::Index j = 0; j < table.eta.size(); ++j) {
    out.stream() << (j + 1) << "," << table.names_ordered[static_cast<std::size_t>(j)]
                 << "," << fmt(table.abs_t_sorted(j)) << "," << fmt(table.eta(j)) << "\n";
  }
  out.stream() << "selected,\"" << join_names(sel.selected, f.names)
               << "\",j_star," << sel.j_star << "\n";
  return 0;
}

int cmd_posi(const CommonOpts& opt) {
  const imsel::Dataset data = imsel::center(imsel::read_dataset_csv(opt.input, opt.response));
  const imsel::ThetaFit f = imsel::fit(data);
  const imsel::MaxNormDist dist =
      imsel::build_maxnorm(f.L, f.nu, opt.b, opt.seed, opt.threads);
  const imsel::PosiRegion region = imsel::posi_region(f, dist, opt.alpha);

  Output out(opt.output);
  out.stream() << "# imsel posi alpha=" << fmt(opt.alpha) << " b=" << opt.b
               << " seed=" << opt.seed << " k_alpha=" << fmt(region.k_alpha) << "\n";
  out.stream() << "name,beta_hat,lower,upper\n";
  for (Eigen::Index i = 0; i < f.beta_hat.size(); ++i) {
    out.stream() << f.names[static_cast<std::size_t>(i)] << ","
                 << fmt(f.beta_hat(i)) << "," << fmt(region.beta_intervals(i, 0))
                 << "," << fmt(region.beta_intervals(i, 1)) << "\n";
  }
  return 0;
}

struct FdistOpts {
  CommonOpts common;
  int p = 0;
  int nu = 0;
  double cmin = 0.0;
  double cmax = 5.0;
  int steps = 101;
  std::string quantiles = "0.9,0.95,0.99";
};

int cmd_fdist(const FdistOpts& opt) {
  Eigen::MatrixXd L;
  int nu = opt.nu;
  if (!opt.common.input.empty()) {
    const imsel::Dataset data =
        imsel::center(imsel::read_dataset_csv(opt.common.input, opt.common.response));
    const imsel::ThetaFit f = imsel::fit(data);
    L = f.L;
    nu = f.nu;
  } else {
    if (opt.p < 1 || opt.nu < 1) {
      throw CLI::ValidationError("fdist", "give --input/--response or both --p and --nu");
    }
    L = Eigen::MatrixXd::Identity(opt.p, opt.p);
  }
  const imsel::MaxNormDist dist =
      imsel::build_maxnorm(L, nu, opt.common.b, opt.common.seed, opt.common.threads);

  Output out(opt.common.output);
  out.stream() << "# imsel fdist p=" << L.rows() << " nu=" << nu
               << " b=" << opt.common.b << " seed=" << opt.common.seed << "\n";
  out.stream() << "c,F\n";
  for (int i = 0; i < opt.steps; ++i) {
    const double c = opt.steps == 1
                         ? opt.cmin
                         : opt.cmin + (opt.cmax - opt.cmin) * i / (opt.steps - 1);
    out.stream() << fmt(c) << "," << fmt(imsel::cdf(dist, c)) << "\n";
  }
  out.stream() << "q,quantile\n";
  for (const std::string& qs : split_list(opt.quantiles)) {
    const double q = std::stod(qs);
    out.stream() << fmt(q) << "," << fmt(imsel::quantile(dist, q)) << "\n";
  }
  return 0;
}

struct BaselineOpts {
  CommonOpts common;
  std::string methods = "aic,bic,lasso,alasso";
  int folds = 10;
};

int cmd_baseline(const BaselineOpts& opt) {
  const imsel::Dataset data =
      imsel::center(imsel::read_dataset_csv(opt.common.input, opt.common.response));

  Output out(opt.common.output);
  out.stream() << "# imsel baseline folds=" << opt.folds
               << " seed=" << opt.common.seed << " ic_search="
               << (data.p() <= 20 ? "exhaustive" : "stepwise") << "\n";
  out.stream() << "method,selected,score\n";
  for (const std::string& name : split_list(opt.methods)) {
    const imsel::Method method = imsel::parse_method(name);
    imsel::BaselineChoice choice;
    switch (method) {
      case imsel::Method::kAic:
        choice = imsel::ic_select(data, imsel::Criterion::kAic);
        break;
      case imsel::Method::kBic:
        choice = imsel::ic_select(data, imsel::Criterion::kBic);
        break;
      case imsel::Method::kLassoCv:
        choice = imsel::lasso_cv_select(data, opt.folds, false, opt.common.seed);
        break;
      case imsel::Method::kAdaptiveLassoCv:
        choice = imsel::lasso_cv_select(data, opt.folds, true, opt.common.seed);
        break;
      case imsel::Method::kIm:
        throw CLI::ValidationError("baseline", "use the select subcommand for the IM method");
    }
    out.stream() << imsel::method_name(method) << ",\""
                 << join_names(choice.selected, data.names) << "\","
                 << fmt(choice.score) << "\n";
  }
  return 0;
}

struct SimulateOpts {
  std::string scenario;
  std::string config_file;
  std::string ns = "50,100,200,500,1000,2000,5000";
  std::string methods = "im,aic,bic,lasso,alasso";
  std::string out_dir = ".";
  std::int64_t reps = 1000;
  double alpha = 0.05;
  std::int64_t b = 20000;
  std::uint64_t seed = 0;
  double sigma = 1.0;
  bool sigma_set = false;
  int folds = 10;
  int threads = 0;
  bool full_figures = false;
};

int cmd_simulate(const SimulateOpts& opt) {
  imsel::SimConfig config;
  if (opt.full_figures) {
    // Paper-scale campaign: all six scenarios, all methods, full n grid,
    // 1000 replicates. Hours of compute; not exercised by the test suite.
    config.scenarios = imsel::builtin_scenarios();
  } else if (!opt.config_file.empty()) {
    config.scenarios.push_back(imsel::scenario_from_json(opt.config_file));
  } else if (!opt.scenario.empty()) {
    config.scenarios.push_back(imsel::builtin_scenario(opt.scenario));
  } else {
    throw CLI::ValidationError("simulate", "give --scenario, --config, or --full-figures");
  }
  if (opt.sigma_set) {
    for (auto& sc : config.scenarios) sc.sigma = opt.sigma;
  }
  for (const std::string& name : split_list(opt.methods)) {
    config.methods.push_back(imsel::parse_method(name));
  }
  for (const std::string& s : split_list(opt.ns)) {
    config.ns.push_back(std::stoi(s));
  }
  config.reps = opt.reps;
  config.alpha = opt.alpha;
  config.B = opt.b;
  config.seed = opt.seed;
  config.folds = opt.folds;
  config.threads = opt.threads;

  const auto results = imsel::run(config);
  imsel::report(results, opt.out_dir, config);

  std::int64_t errors = 0;
  for (const auto& r : results) errors += r.errors;
  if (errors > 0) {
    std::cerr << "simulate: " << errors << " replicate fits failed and were excluded\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Prior-free probabilistic variable selection for Gaussian linear regression"};
  app.require_subcommand(1);

  CommonOpts sel_opt, posi_opt;
  FdistOpts fdist_opt;
  BaselineOpts base_opt;
  SimulateOpts sim_opt;

  CLI::App* sel = app.add_subcommand("select", "plausibility table and alpha-level selection");
  add_data_flags(sel, sel_opt);
  add_mc_flags(sel, sel_opt);

  CLI::App* posi = app.add_subcommand("posi", "simultaneous post-selection intervals");
  add_data_flags(posi, posi_opt);
  add_mc_flags(posi, posi_opt);

  CLI::App* fdist = app.add_subcommand("fdist", "max-norm distribution dump");
  fdist->add_option("--input", fdist_opt.common.input, "CSV file; builds F from its fit");
  fdist->add_option("--response", fdist_opt.common.response, "response column (with --input)");
  fdist->add_option("--p", fdist_opt.p, "dimension for an identity-L build");
  fdist->add_option("--nu", fdist_opt.nu, "degrees of freedom for an identity-L build");
  fdist->add_option("--cmin", fdist_opt.cmin)->default_val(0.0);
  fdist->add_option("--cmax", fdist_opt.cmax)->default_val(5.0);
  fdist->add_option("--steps", fdist_opt.steps)->default_val(101);
  fdist->add_option("--quantiles", fdist_opt.quantiles, "comma-separated q values");
  add_mc_flags(fdist, fdist_opt.common);

  CLI::App* base = app.add_subcommand("baseline", "AIC/BIC/lasso reference selections");
  add_data_flags(base, base_opt.common);
  base->add_option("--methods", base_opt.methods, "comma-separated: aic,bic,lasso,alasso");
  base->add_option("--folds", base_opt.folds)->default_val(10);
  add_mc_flags(base, base_opt.common);

  CLI::App* sim = app.add_subcommand("simulate", "selection-performance simulation campaign");
  sim->add_option("--scenario", sim_opt.scenario, "built-in scenario label (1..6)");
  sim->add_option("--config", sim_opt.config_file, "scenario JSON: {label,p,beta,rho,sigma}");
  sim->add_option("--reps", sim_opt.reps)->default_val(1000);
  sim->add_option("--ns", sim_opt.ns, "comma-separated sample sizes");
  sim->add_option("--alpha", sim_opt.alpha)->default_val(0.05);
  sim->add_option("--b", sim_opt.b, "per-replicate Monte Carlo sample count")->default_val(20000);
  sim->add_option("--seed", sim_opt.seed)->default_val(0);
  sim->add_option("--methods", sim_opt.methods, "comma-separated: im,aic,bic,lasso,alasso");
  sim->add_option("--sigma", sim_opt.sigma, "noise scale override")
      ->each([&](const std::string&) { sim_opt.sigma_set = true; });
  sim->add_option("--folds", sim_opt.folds)->default_val(10);
  sim->add_option("--threads", sim_opt.threads)->default_val(0);
  sim->add_option("--out", sim_opt.out_dir, "output directory")->default_val(".");
  sim->add_flag("--full-figures", sim_opt.full_figures,
                "paper-scale campaign over all scenarios (very long run)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (sel->parsed()) return cmd_select(sel_opt);
    if (posi->parsed()) return cmd_posi(posi_opt);
    if (fdist->parsed()) return cmd_fdist(fdist_opt);
    if (base->parsed()) return cmd_baseline(base_opt);
    if (sim->parsed()) return cmd_simulate(sim_opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const imsel::CsvError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 1;
  } catch (const imsel::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
