#include "imsel/sim.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "imsel/errors.hpp"
#include "imsel/im.hpp"
#include "imsel/maxnorm.hpp"
#include "imsel/rng.hpp"

namespace imsel {

std::vector<int> Scenario::truth() const {
  std::vector<int> t;
  for (int j = 0; j < p; ++j) {
    if (beta(j) != 0.0) t.push_back(j + 1);
  }
  return t;
}

std::vector<Scenario> builtin_scenarios() {
  const auto make = [](const char* label, std::vector<double> beta, double rho) {
    Scenario sc;
    sc.label = label;
    sc.p = static_cast<int>(beta.size());
    sc.beta = Eigen::Map<Eigen::VectorXd>(beta.data(), static_cast<Eigen::Index>(beta.size()));
    sc.rho = rho;
    sc.sigma = 1.0;
    return sc;
  };
  std::vector<double> strong = {3.0, 1.5, 0.0, 0.0, 2.0, 0.0, 0.0};
  std::vector<double> weak = {0.85, 0.85, 0.85, 0.0, 0.0, 0.0, 0.0};
  std::vector<double> wide(20, 0.0);
  for (int j = 0; j < 10; ++j) wide[static_cast<std::size_t>(j)] = 0.85;
  return {
      make("1", strong, 0.5), make("2", strong, 0.8),
      make("3", weak, 0.5),   make("4", weak, 0.8),
      make("5", wide, 0.5),   make("6", wide, 0.8),
  };
}

Scenario builtin_scenario(const std::string& label) {
  for (const auto& sc : builtin_scenarios()) {
    if (sc.label == label) return sc;
  }
  throw std::invalid_argument("unknown built-in scenario '" + label + "' (expected 1..6)");
}

Scenario scenario_from_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open scenario file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const std::exception& e) {
    throw std::invalid_argument("bad scenario JSON in '" + path + "': " + e.what());
  }
  Scenario sc;
  sc.label = doc.at("label").get<std::string>();
  sc.p = doc.at("p").get<int>();
  const auto beta = doc.at("beta").get<std::vector<double>>();
  if (static_cast<int>(beta.size()) != sc.p) {
    throw std::invalid_argument("scenario '" + sc.label + "': beta length != p");
  }
  sc.beta = Eigen::Map<const Eigen::VectorXd>(beta.data(), sc.p);
  sc.rho = doc.at("rho").get<double>();
  sc.sigma = doc.value("sigma", 1.0);
  if (sc.rho < 0.0 || sc.rho >= 1.0) throw std::invalid_argument("scenario rho must lie in [0,1)");
  if (sc.sigma <= 0.0) throw std::invalid_argument("scenario sigma must be positive");
  return sc;
}

Outcome classify(const std::vector<int>& selected, const std::vector<int>& truth) {
  std::vector<int> s = selected;
  std::vector<int> t = truth;
  std::sort(s.begin(), s.end());
  std::sort(t.begin(), t.end());
  if (s == t) return Outcome::kTrue;
  const bool s_in_t = std::includes(t.begin(), t.end(), s.begin(), s.end());
  const bool t_in_s = std::includes(s.begin(), s.end(), t.begin(), t.end());
  if (s_in_t) return Outcome::kParsimonious;
  if (t_in_s) return Outcome::kInclusive;
  return Outcome::kOther;
}

Dataset generate(const Scenario& scenario, int n, std::uint64_t seed) {
  const int p = scenario.p;
  if (n <= p + 1) throw TooFewRows("generate: need n > p + 1");

  Eigen::MatrixXd omega(p, p);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < p; ++k) {
      omega(j, k) = std::pow(scenario.rho, std::abs(j - k));
    }
  }
  Eigen::LLT<Eigen::MatrixXd> llt(omega);
  if (llt.info() != Eigen::Success) {
    throw CholeskyFailure("generate: AR(1) correlation matrix not positive definite");
  }
  const Eigen::MatrixXd chol = llt.matrixL();

  Rng rng(seed);
  Dataset data;
  data.X.resize(n, p);
  Eigen::VectorXd z(p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) z(j) = rng.normal();
    data.X.row(i) = (chol * z).transpose();
  }
  data.y = data.X * scenario.beta;
  for (int i = 0; i < n; ++i) data.y(i) += scenario.sigma * rng.normal();
  data.names.reserve(static_cast<std::size_t>(p));
  for (int j = 0; j < p; ++j) data.names.push_back("x" + std::to_string(j + 1));
  return data;
}

namespace {

struct CellCounts {
  std::int64_t true_count = 0;
  std::int64_t parsimonious = 0;
  std::int64_t inclusive = 0;
  std::int64_t other = 0;
  std::int64_t errors = 0;

  void add(Outcome o) {
    switch (o) {
      case Outcome::kTrue: ++true_count; break;
      case Outcome::kParsimonious: ++parsimonious; break;
      case Outcome::kInclusive: ++inclusive; break;
      case Outcome::kOther: ++other; break;
    }
  }
  void merge(const CellCounts& c) {
    true_count += c.true_count;
    parsimonious += c.parsimonious;
    inclusive += c.inclusive;
    other += c.other;
    errors += c.errors;
  }
};

std::vector<int> run_one_method(Method method, const Dataset& centered,
                                double alpha, std::int64_t B,
                                std::uint64_t rep_seed, int folds) {
  switch (method) {
    case Method::kIm: {
      const ThetaFit f = fit(centered);
      const MaxNormDist dist =
          build_maxnorm(f.L, f.nu, B, derive_seed(rep_seed, 2), 1);
      return select(plausibility_table(f, dist), alpha).selected;
    }
    case Method::kAic:
      return ic_select(centered, Criterion::kAic).selected;
    case Method::kBic:
      return ic_select(centered, Criterion::kBic).selected;
    case Method::kLassoCv:
      return lasso_cv_select(centered, folds, false, derive_seed(rep_seed, 3)).selected;
    case Method::kAdaptiveLassoCv:
      return lasso_cv_select(centered, folds, true, derive_seed(rep_seed, 3)).selected;
  }
  throw std::logic_error("run_one_method: unreachable");
}

}  // namespace

std::vector<SimResult> run(const SimConfig& config) {
  if (config.scenarios.empty()) throw std::invalid_argument("run: no scenarios");
  if (config.methods.empty()) throw std::invalid_argument("run: no methods");
  if (config.ns.empty()) throw std::invalid_argument("run: no sample sizes");
  if (config.reps < 1) throw std::invalid_argument("run: reps must be positive");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw std::invalid_argument("run: alpha must lie in (0, 1)");
  }

  const int nthreads = resolve_threads(config.threads);
  std::vector<SimResult> results;

  for (std::size_t si = 0; si < config.scenarios.size(); ++si) {
    const Scenario& sc = config.scenarios[si];
    const std::vector<int> truth = sc.truth();
    for (std::size_t ni = 0; ni < config.ns.size(); ++ni) {
      const int n = config.ns[ni];
      const std::size_t m = config.methods.size();

      const int workers = static_cast<int>(
          std::min<std::int64_t>(nthreads, config.reps));
      std::vector<std::vector<CellCounts>> partial(
          static_cast<std::size_t>(workers), std::vector<CellCounts>(m));

      auto work = [&](int w, std::int64_t r0, std::int64_t r1) {
        for (std::int64_t rep = r0; rep < r1; ++rep) {
          const std::uint64_t stream = (static_cast<std::uint64_t>(si) << 56) |
                                       (static_cast<std::uint64_t>(ni) << 48) |
                                       static_cast<std::uint64_t>(rep);
          const std::uint64_t rep_seed = derive_seed(config.seed, stream);
          Dataset centered;
          bool data_ok = true;
          try {
            centered = center(generate(sc, n, derive_seed(rep_seed, 1)));
          } catch (const Error&) {
            data_ok = false;
          }
          for (std::size_t mi = 0; mi < m; ++mi) {
            if (!data_ok) {
              ++partial[static_cast<std::size_t>(w)][mi].errors;
              continue;
            }
            try {
              const auto sel = run_one_method(config.methods[mi], centered,
                                              config.alpha, config.B, rep_seed,
                                              config.folds);
              partial[static_cast<std::size_t>(w)][mi].add(classify(sel, truth));
            } catch (const Error&) {
              ++partial[static_cast<std::size_t>(w)][mi].errors;
            }
          }
        }
      };

      if (workers <= 1) {
        work(0, 0, config.reps);
      } else {
        std::vector<std::thread> pool;
        const std::int64_t per = (config.reps + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
          const std::int64_t r0 = w * per;
          const std::int64_t r1 = std::min<std::int64_t>(config.reps, r0 + per);
          if (r0 >= r1) break;
          pool.emplace_back(work, w, r0, r1);
        }
        for (auto& th : pool) th.join();
      }

      for (std::size_t mi = 0; mi < m; ++mi) {
        SimResult res;
        res.scenario = sc.label;
        res.n = n;
        res.method = config.methods[mi];
        res.reps = config.reps;
        CellCounts total;
        for (int w = 0; w < workers; ++w) {
          total.merge(partial[static_cast<std::size_t>(w)][mi]);
        }
        res.true_count = total.true_count;
        res.parsimonious = total.parsimonious;
        res.inclusive = total.inclusive;
        res.other = total.other;
        res.errors = total.errors;
        results.push_back(std::move(res));
      }
    }
  }
  return results;
}

namespace {

std::string fmt(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

const char* method_color(Method m) {
  switch (m) {
    case Method::kIm: return "#1f77b4";
    case Method::kAic: return "#ff7f0e";
    case Method::kBic: return "#2ca02c";
    case Method::kLassoCv: return "#d62728";
    case Method::kAdaptiveLassoCv: return "#9467bd";
  }
  return "#000000";
}

struct Panel {
  const char* title;
  std::int64_t SimResult::*count;
};

void write_scenario_svg(std::ofstream& out,
                        const std::vector<const SimResult*>& rows,
                        const std::vector<Method>& methods,
                        const std::vector<int>& ns, double alpha) {
  constexpr double kWidth = 960, kHeight = 700;
  constexpr double kPanelW = 480, kPanelH = 330;
  constexpr double kLeft = 62, kRight = 18, kTop = 34, kBottom = 44;

  const Panel panels[4] = {
      {"True", &SimResult::true_count},
      {"Parsimonious", &SimResult::parsimonious},
      {"True or parsimonious", nullptr},
      {"Inclusive", &SimResult::inclusive},
  };

  const double lx0 = std::log10(static_cast<double>(ns.front()));
  const double lx1 = std::log10(static_cast<double>(ns.back()));
  const auto xpos = [&](int n, double plot_w) {
    if (ns.size() == 1 || lx1 == lx0) return 0.5 * plot_w;
    return (std::log10(static_cast<double>(n)) - lx0) / (lx1 - lx0) * plot_w;
  };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" font-family=\"sans-serif\">\n";

  for (int panel = 0; panel < 4; ++panel) {
    const double ox = (panel % 2) * kPanelW + kLeft;
    const double oy = (panel / 2) * kPanelH + kTop;
    const double pw = kPanelW - kLeft - kRight;
    const double ph = kPanelH - kTop - kBottom;
    const auto ypos = [&](double pct) { return oy + ph - pct / 100.0 * ph; };

    out << "<text x=\"" << ox + pw / 2 << "\" y=\"" << oy - 12
        << "\" text-anchor=\"middle\" font-size=\"14\">" << panels[panel].title
        << "</text>\n";
    out << "<rect x=\"" << ox << "\" y=\"" << oy << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int pct = 0; pct <= 100; pct += 25) {
      out << "<text x=\"" << ox - 6 << "\" y=\"" << ypos(pct) + 4
          << "\" text-anchor=\"end\" font-size=\"10\">" << pct << "</text>\n";
    }
    for (int n : ns) {
      out << "<text x=\"" << ox + xpos(n, pw) << "\" y=\"" << oy + ph + 14
          << "\" text-anchor=\"middle\" font-size=\"10\">" << n << "</text>\n";
    }

    if (panel == 2) {
      const double y = ypos(100.0 * (1.0 - alpha));
      out << "<line x1=\"" << ox << "\" y1=\"" << y << "\" x2=\"" << ox + pw
          << "\" y2=\"" << y
          << "\" stroke=\"#888\" stroke-dasharray=\"6 4\"/>\n";
    }

    for (Method method : methods) {
      out << "<polyline fill=\"none\" stroke=\"" << method_color(method)
          << "\" stroke-width=\"1.6\" points=\"";
      for (int n : ns) {
        const SimResult* row = nullptr;
        for (const SimResult* r : rows) {
          if (r->n == n && r->method == method) row = r;
        }
        if (row == nullptr) continue;
        const std::int64_t denom = row->reps;
        const std::int64_t count = panels[panel].count != nullptr
                                       ? row->*(panels[panel].count)
                                       : row->true_or_parsimonious();
        const double pct =
            100.0 * static_cast<double>(count) / static_cast<double>(denom);
        out << ox + xpos(n, pw) << "," << ypos(pct) << " ";
      }
      out << "\"/>\n";
    }
  }

  // legend
  double lx = kLeft;
  const double ly = kHeight - 16;
  for (Method method : methods) {
    out << "<rect x=\"" << lx << "\" y=\"" << ly - 9
        << "\" width=\"18\" height=\"4\" fill=\"" << method_color(method)
        << "\"/>\n";
    out << "<text x=\"" << lx + 24 << "\" y=\"" << ly
        << "\" font-size=\"12\">" << method_name(method) << "</text>\n";
    lx += 110;
  }
  out << "</svg>\n";
}

}  // namespace

void report(const std::vector<SimResult>& results, const std::string& out_dir,
            const SimConfig& config) {
  if (results.empty()) throw std::invalid_argument("report: no results");
  if (config.methods.empty()) throw std::invalid_argument("report: no methods");

  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);

  std::ofstream csv(dir / "results.csv");
  if (!csv) throw std::runtime_error("report: cannot write to '" + out_dir + "'");
  csv << "# imsel simulate alpha=" << fmt(config.alpha) << " B=" << config.B
      << " seed=" << config.seed << " reps=" << config.reps
      << " folds=" << config.folds << " ic_search="
      << (config.scenarios.front().p <= 20 ? "exhaustive" : "stepwise")
      << " sigma=" << fmt(config.scenarios.front().sigma) << "\n";
  csv << "scenario,n,method,reps,true,parsimonious,true_or_parsimonious,"
         "inclusive,other,fwer\n";
  for (const SimResult& r : results) {
    csv << r.scenario << "," << r.n << "," << method_name(r.method) << ","
        << r.reps << "," << r.true_count << "," << r.parsimonious << ","
        << r.true_or_parsimonious() << "," << r.inclusive << "," << r.other
        << "," << fmt(r.fwer()) << "\n";
  }
  csv.close();

  for (const Scenario& sc : config.scenarios) {
    std::vector<const SimResult*> rows;
    for (const SimResult& r : results) {
      if (r.scenario == sc.label) rows.push_back(&r);
    }
    if (rows.empty()) continue;
    std::ofstream svg(dir / ("scenario_" + sc.label + ".svg"));
    if (!svg) throw std::runtime_error("report: cannot write SVG in '" + out_dir + "'");
    write_scenario_svg(svg, rows, config.methods, config.ns, config.alpha);
  }
}

}  // namespace imsel
