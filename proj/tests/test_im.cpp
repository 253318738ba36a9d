#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

#include "brute_force.hpp"
#include "imsel/im.hpp"
#include "imsel/sim.hpp"
#include "test_util.hpp"

using imsel::build_maxnorm;
using imsel::MaxNormDist;
using imsel::PlausibilityTable;
using imsel::SelectionResult;
using imsel::ThetaFit;

namespace {

struct ProstateIm {
  ThetaFit fit;
  MaxNormDist dist;
};

const ProstateIm& prostate_im() {
  static const ProstateIm ctx = [] {
    ThetaFit f = imsel::fit(testutil::prostate_centered());
    MaxNormDist d = build_maxnorm(f.L, f.nu, 1000000, 1, 1);
    return ProstateIm{std::move(f), std::move(d)};
  }();
  return ctx;
}

int index_of(const std::vector<std::string>& names, const std::string& name) {
  return static_cast<int>(std::find(names.begin(), names.end(), name) - names.begin()) + 1;
}

// Fabricated two-variable fit with prescribed T, identity L.
ThetaFit toy_fit(std::initializer_list<double> ts) {
  ThetaFit f;
  const Eigen::Index p = static_cast<Eigen::Index>(ts.size());
  f.T = Eigen::Map<const Eigen::VectorXd>(std::data(ts), p);
  f.sigma_hat = 1.0;
  f.theta_hat = f.T;
  f.beta_hat = f.T;
  f.D = Eigen::VectorXd::Ones(p);
  f.L = Eigen::MatrixXd::Identity(p, p);
  f.M = f.L;
  f.nu = 10;
  for (Eigen::Index j = 0; j < p; ++j) f.names.push_back("v" + std::to_string(j + 1));
  return f;
}

}  // namespace

TEST_SUITE("im") {

TEST_CASE("prostate beliefs match the published plausibilities") {
  const auto& ctx = prostate_im();
  const int lcavol = index_of(ctx.fit.names, "lcavol");
  const int lweight = index_of(ctx.fit.names, "lweight");
  CHECK(imsel::assertion_belief(ctx.fit, ctx.dist, lcavol) > 0.999);
  CHECK(std::fabs(imsel::assertion_belief(ctx.fit, ctx.dist, lweight) -
                  (1.0 - 0.0646)) < 0.01);
}

TEST_CASE("zero t statistic has zero belief") {
  const ThetaFit f = toy_fit({0.0, 1.5});
  const MaxNormDist d = build_maxnorm(f.L, f.nu, 5000, 3, 1);
  CHECK(imsel::assertion_belief(f, d, 1) == 0.0);
  CHECK_THROWS_AS(imsel::assertion_belief(f, d, 0), std::invalid_argument);
  CHECK_THROWS_AS(imsel::assertion_belief(f, d, 3), std::invalid_argument);
}

TEST_CASE("model plausibility: full model and published sub-models") {
  const auto& ctx = prostate_im();
  std::vector<int> full(8);
  std::iota(full.begin(), full.end(), 1);
  CHECK(imsel::model_plausibility(ctx.fit, ctx.dist, full) == 1.0);

  // drop only gleason: plausibility ~ 1.0000
  std::vector<int> no_gleason;
  const int gleason = index_of(ctx.fit.names, "gleason");
  for (int j = 1; j <= 8; ++j) {
    if (j != gleason) no_gleason.push_back(j);
  }
  CHECK(std::fabs(imsel::model_plausibility(ctx.fit, ctx.dist, no_gleason) - 1.0) < 0.01);

  // lcavol alone: complement max |T| is svi's 3.154, eta = 0.0177
  const std::vector<int> only_lcavol = {index_of(ctx.fit.names, "lcavol")};
  CHECK(std::fabs(imsel::model_plausibility(ctx.fit, ctx.dist, only_lcavol) - 0.0177) < 0.01);
}

TEST_CASE("plausibility table reproduces the published analysis") {
  const auto& ctx = prostate_im();
  const PlausibilityTable table = imsel::plausibility_table(ctx.fit, ctx.dist);
  for (int j = 0; j < 8; ++j) {
    CHECK(table.names_ordered[static_cast<std::size_t>(j)] ==
          testutil::prostate_order()[static_cast<std::size_t>(j)]);
    CHECK(std::fabs(table.abs_t_sorted(j) -
                    testutil::prostate_abs_t()[static_cast<std::size_t>(j)]) < 5e-4);
    CHECK(std::fabs(table.eta(j) -
                    testutil::prostate_eta()[static_cast<std::size_t>(j)]) < 0.01);
  }
  for (int j = 1; j < 8; ++j) {
    CHECK(table.eta(j) <= table.eta(j - 1));
    CHECK(table.abs_t_sorted(j) >= table.abs_t_sorted(j - 1));
  }
}

TEST_CASE("single-variable table") {
  const ThetaFit f = toy_fit({2.0});
  const MaxNormDist d = build_maxnorm(f.L, f.nu, 20000, 11, 1);
  const PlausibilityTable table = imsel::plausibility_table(f, d);
  CHECK(table.eta.size() == 1);
  CHECK(table.eta(0) == doctest::Approx(1.0 - imsel::cdf(d, 2.0)));
}

TEST_CASE("selection at alpha = 0.05 keeps svi and lcavol") {
  const auto& ctx = prostate_im();
  const PlausibilityTable table = imsel::plausibility_table(ctx.fit, ctx.dist);
  const SelectionResult sel = imsel::select(table, 0.05);
  CHECK(sel.j_star == 6);
  std::vector<int> expect = {index_of(ctx.fit.names, "lcavol"),
                             index_of(ctx.fit.names, "svi")};
  std::sort(expect.begin(), expect.end());
  CHECK(sel.selected == expect);
  CHECK(sel.eta_at_boundary == doctest::Approx(table.eta(5)));
}

TEST_CASE("selection boundaries") {
  // tiny |T|: every sub-model is plausible, even the empty one
  const ThetaFit weak = toy_fit({0.05, -0.02, 0.07});
  const MaxNormDist dw = build_maxnorm(weak.L, weak.nu, 20000, 13, 1);
  const SelectionResult none = imsel::select(imsel::plausibility_table(weak, dw), 0.05);
  CHECK(none.j_star == 3);
  CHECK(none.selected.empty());

  // huge |T|: every eta is ~0, so even alpha near 1 keeps the full model
  const ThetaFit strong = toy_fit({50.0, -60.0, 70.0});
  const MaxNormDist ds = build_maxnorm(strong.L, strong.nu, 20000, 14, 1);
  const SelectionResult full = imsel::select(imsel::plausibility_table(strong, ds), 0.999);
  CHECK(full.j_star == 0);
  CHECK(full.selected == std::vector<int>{1, 2, 3});
  CHECK(full.eta_at_boundary == 1.0);

  CHECK_THROWS_AS(imsel::select(imsel::plausibility_table(strong, ds), 0.0),
                  std::invalid_argument);
}

TEST_CASE("selections are nested across alpha") {
  // j_star is nonincreasing in alpha, so the selected set can only grow
  // as alpha grows: smaller-alpha selections sit inside larger-alpha ones.
  const auto& ctx = prostate_im();
  const PlausibilityTable table = imsel::plausibility_table(ctx.fit, ctx.dist);
  std::vector<int> prev;
  bool first = true;
  for (double alpha : {0.001, 0.01, 0.05, 0.1, 0.2, 0.5, 0.9}) {
    const auto sel = imsel::select(table, alpha).selected;
    if (!first) {
      CHECK(std::includes(sel.begin(), sel.end(), prev.begin(), prev.end()));
    }
    prev = sel;
    first = false;
  }
}

TEST_CASE("model plausibility is monotone in the model") {
  const auto& ctx = prostate_im();
  const int p = 8;
  std::vector<double> pl(1u << p);
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    std::vector<int> I;
    for (int j = 0; j < p; ++j) {
      if (mask & (1u << j)) I.push_back(j + 1);
    }
    pl[mask] = imsel::model_plausibility(ctx.fit, ctx.dist, I);
  }
  for (unsigned mask = 0; mask < (1u << p); ++mask) {
    for (int j = 0; j < p; ++j) {
      if (!(mask & (1u << j))) {
        CHECK(pl[mask] <= pl[mask | (1u << j)]);
      }
    }
  }
}

TEST_CASE("rank rule equals brute-force smallest plausible model") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const imsel::Dataset d = imsel::center(testutil::random_dataset(40, 8, 1000 + seed));
    const ThetaFit f = imsel::fit(d);
    const MaxNormDist dist = build_maxnorm(f.L, f.nu, 20000, seed, 1);
    const PlausibilityTable table = imsel::plausibility_table(f, dist);
    for (double alpha : {0.01, 0.05, 0.2}) {
      CHECK(imsel::select(table, alpha).selected ==
            testutil::brute_force_select(f, dist, alpha));
    }
  }
}

TEST_CASE("scaling y leaves the selection unchanged") {
  const imsel::Dataset d = testutil::prostate_centered();
  imsel::Dataset scaled = d;
  scaled.y *= 7.25;
  const ThetaFit f0 = imsel::fit(d);
  const ThetaFit f1 = imsel::fit(scaled);
  const MaxNormDist dist0 = build_maxnorm(f0.L, f0.nu, 100000, 4, 1);
  const MaxNormDist dist1 = build_maxnorm(f1.L, f1.nu, 100000, 4, 1);
  const PlausibilityTable t0 = imsel::plausibility_table(f0, dist0);
  const PlausibilityTable t1 = imsel::plausibility_table(f1, dist1);
  CHECK(t0.pi == t1.pi);
  CHECK((t0.eta - t1.eta).cwiseAbs().maxCoeff() <= 2.0 / 100000.0);
  for (double alpha : {0.01, 0.05, 0.2}) {
    CHECK(imsel::select(t0, alpha).selected == imsel::select(t1, alpha).selected);
  }
}

TEST_CASE("singleton plausibility") {
  const auto& ctx = prostate_im();
  CHECK(imsel::singleton_plausibility(ctx.fit, ctx.dist, ctx.fit.theta_hat) == 1.0);

  // push one coordinate to the 0.95 quantile of the max-norm
  const double k = imsel::quantile(ctx.dist, 0.95);
  Eigen::VectorXd theta = ctx.fit.theta_hat;
  theta(0) -= ctx.fit.sigma_hat * k;
  const double pl = imsel::singleton_plausibility(ctx.fit, ctx.dist, theta);
  CHECK(std::fabs(pl - 0.05) <= 1.0 / static_cast<double>(ctx.dist.B) + 1e-12);

  // linear-scan oracle against the binary-search cdf
  imsel::Rng rng(8);
  for (int rep = 0; rep < 5; ++rep) {
    Eigen::VectorXd probe = ctx.fit.theta_hat;
    for (Eigen::Index j = 0; j < probe.size(); ++j) {
      probe(j) += 0.3 * ctx.fit.sigma_hat * rng.normal();
    }
    const double dev =
        ((ctx.fit.theta_hat - probe) / ctx.fit.sigma_hat).cwiseAbs().maxCoeff();
    std::int64_t count = 0;
    for (double s : ctx.dist.samples) {
      if (s <= dev) ++count;
    }
    const double scan = 1.0 - static_cast<double>(count) / static_cast<double>(ctx.dist.B);
    CHECK(imsel::singleton_plausibility(ctx.fit, ctx.dist, probe) == scan);
  }
}

TEST_CASE("posi region geometry") {
  const auto& ctx = prostate_im();
  const imsel::PosiRegion region = imsel::posi_region(ctx.fit, ctx.dist, 0.05);
  CHECK(region.k_alpha == imsel::quantile(ctx.dist, 0.95));
  CHECK(region.theta_halfwidth == doctest::Approx(ctx.fit.sigma_hat * region.k_alpha));

  // center is inside for any alpha
  for (double alpha : {0.01, 0.05, 0.5}) {
    const auto r = imsel::posi_region(ctx.fit, ctx.dist, alpha);
    const Eigen::VectorXd c = ctx.fit.theta_hat;
    CHECK(((c - r.theta_center).cwiseAbs().maxCoeff()) <= r.theta_halfwidth);
  }

  // membership in the cube <=> every beta coordinate inside its interval
  imsel::Rng rng(21);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::VectorXd theta = ctx.fit.theta_hat;
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      theta(j) += 1.2 * region.theta_halfwidth * (rng.uniform() - 0.5) * 2.0;
    }
    const bool in_cube =
        ((ctx.fit.theta_hat - theta) / ctx.fit.sigma_hat).cwiseAbs().maxCoeff() <=
        region.k_alpha;
    bool in_boxes = true;
    for (Eigen::Index j = 0; j < theta.size(); ++j) {
      const double beta_j = std::sqrt(ctx.fit.D(j)) * theta(j);
      if (beta_j < region.beta_intervals(j, 0) || beta_j > region.beta_intervals(j, 1)) {
        in_boxes = false;
      }
    }
    CHECK(in_cube == in_boxes);
    // membership agrees with thresholding the singleton plausibility,
    // up to the empirical-CDF step at the boundary
    const double pl = imsel::singleton_plausibility(ctx.fit, ctx.dist, theta);
    if (std::fabs(pl - 0.05) > 2.0 / static_cast<double>(ctx.dist.B)) {
      CHECK(in_cube == (pl > 0.05));
    }
  }
}

TEST_CASE("posi constant matches the univariate t at p = 1") {
  const MaxNormDist d = build_maxnorm(Eigen::MatrixXd::Identity(1, 1), 95, 100000, 6, 1);
  ThetaFit f = toy_fit({1.0});
  f.nu = 95;
  const imsel::PosiRegion region = imsel::posi_region(f, d, 0.05);
  CHECK(std::fabs(region.k_alpha - 1.985) < 0.02);
}

TEST_CASE("null-coordinate beliefs are stochastically below uniform") {
  // Scenario 3 design, coordinate 4 truly zero
  const imsel::Scenario sc = imsel::builtin_scenario("3");
  const int reps = 300;
  const int n = 100;
  std::vector<double> beliefs;
  for (int rep = 0; rep < reps; ++rep) {
    const imsel::Dataset data =
        imsel::center(imsel::generate(sc, n, imsel::derive_seed(314, static_cast<std::uint64_t>(rep))));
    const ThetaFit f = imsel::fit(data);
    const MaxNormDist dist =
        build_maxnorm(f.L, f.nu, 10000, imsel::derive_seed(9000, static_cast<std::uint64_t>(rep)), 1);
    beliefs.push_back(imsel::assertion_belief(f, dist, 4));
  }
  for (double alpha : {0.05, 0.1, 0.2}) {
    int count = 0;
    for (double b : beliefs) {
      if (b >= 1.0 - alpha) ++count;
    }
    const double frac = static_cast<double>(count) / reps;
    CHECK(frac <= alpha + 3.0 * std::sqrt(alpha * (1.0 - alpha) / reps));
  }
}

}  // TEST_SUITE
