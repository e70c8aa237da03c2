// One line per acceptance criterion; the exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "specgap/constants.hpp"
#include "specgap/convexdomain.hpp"
#include "specgap/eigensolve1d.hpp"
#include "specgap/eigensolve2d.hpp"
#include "specgap/experiments.hpp"
#include "specgap/parallel.hpp"
#include "specgap/rearrange.hpp"
#include "specgap/sublevel.hpp"

using namespace specgap;

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

int failures = 0;

void criterion(int id, const char* name, double limit_seconds, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool in_time = seconds <= limit_seconds;
  const bool pass = o.pass && in_time;
  failures += !pass;
  std::printf("[%s] %2d %s: %s; %.3f s (limit %g s)%s\n", pass ? "PASS" : "FAIL", id, name, o.detail.c_str(), seconds,
              limit_seconds, in_time ? "" : ", over time");
  std::fflush(stdout);
}

struct SuiteRow {
  std::string name;
  double fStar, lambda1;
  bool nonnegative;
  LinftyCheck<double> linfty;
};

std::vector<SuiteRow> suite_rows;

struct ConeRow {
  double D, lambda1, halfMass;
};

std::vector<ConeRow> cone_rows;
std::vector<DomainAnalysis> vdberg_rows;

}  // namespace

int main() {
  const unsigned workers = default_workers();

  criterion(1, "discrete exactness, square well", 1.0, [] {
    const auto g = sample(PotentialSpec{PotentialKind::squareWell, {}, {0, 1}}, 1000);
    const double lambda = smallest_eigenpair(g).lambda1;
    const double s = std::sin(std::numbers::pi * g.dx() / 2);
    const double exact = 4 * s * s / (g.dx() * g.dx());
    const double rel = std::abs(lambda - exact) / exact;
    const double cont = std::abs(lambda - kPi2) / kPi2;
    return Outcome{rel <= 1e-10 && cont < 1e-5, fmt("lambda1 = %.15g, rel. to closed form %.2e, rel. to pi^2 %.2e", lambda, rel, cont)};
  });

  criterion(2, "harmonic oscillator", 2.0, [] {
    const auto g = sample(PotentialSpec{PotentialKind::harmonic, {1, 0}, {-12, 12}}, 4000);
    const double lambda = smallest_eigenpair(g).lambda1;
    return Outcome{std::abs(lambda - 1) <= 1e-4, fmt("lambda1 = %.10f", lambda)};
  });

  criterion(3, "two-sided bound on the convex suite", 30.0, [&] {
    const auto suite = convex_suite();
    suite_rows = parallel_map(suite.size(), workers, [&](std::size_t i) {
      const auto g = sample(suite[i].input.spec, suite[i].input.n, suite[i].input.cap);
      const auto pair = smallest_eigenpair(g);
      const bool nonneg = min_value(g) >= 0;
      return SuiteRow{suite[i].name, minimize_functional(g).fStar, pair.lambda1, nonneg,
                      nonneg ? check_linfty_bound(pair, g) : LinftyCheck<double>{0, 0, true}};
    });
    bool ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& r : suite_rows) {
      const double lower = r.fStar / 250 * 0.99, upper = kPi2 * r.fStar * 1.01;
      ok = ok && lower <= r.lambda1 && r.lambda1 <= upper;
      worst = std::min({worst, r.lambda1 / lower, upper / r.lambda1});
    }
    return Outcome{ok, fmt("%zu potentials, tightest margin factor %.4f", suite_rows.size(), worst)};
  });

  criterion(4, "constants reproduction", 1e-3, [] {
    const double v = objective(kReferenceTriple);
    return Outcome{std::abs(v - 0.0040782) <= 1e-6 && v >= 1.0 / 250, fmt("objective = %.8f, 1/objective = %.3f", v, 1 / v)};
  });

  criterion(5, "cone eigenvalue scaling", 120.0, [&] {
    const std::vector<double> Ds{16, 32, 64, 128, 256, 512, 1024};
    cone_rows = parallel_map(Ds.size(), workers, [&](std::size_t i) {
      const auto in = cone_model_input(Ds[i]);
      const auto g = sample(in.spec, in.n, in.cap);
      const auto pair = smallest_eigenpair(g);
      return ConeRow{Ds[i], pair.lambda1, shortest_mass_interval(pair.f, pair.dx, 0.5).length};
    });
    std::vector<double> lambdas;
    for (const auto& r : cone_rows) lambdas.push_back(r.lambda1);
    const double slope = fit_loglog(Ds, lambdas).slope;
    return Outcome{std::abs(slope + 2.0 / 3.0) <= 0.05, fmt("slope = %.4f (target -2/3 +- 0.05)", slope)};
  });

  criterion(6, "L-infinity bound on the convex suite", 30.0, [&] {
    bool ok = !suite_rows.empty();
    double worst = 0;
    for (const auto& r : suite_rows) {
      if (!r.nonnegative) continue;
      ok = ok && r.linfty.ratio <= r.linfty.bound * 1.01;
      worst = std::max(worst, r.linfty.ratio / r.linfty.bound);
    }
    return Outcome{ok, fmt("max ratio / (2 lambda1)^(1/4) = %.4f", worst)};
  });

  criterion(7, "rearrangement chain, 200 random potentials", 120.0, [&] {
    std::mt19937_64 rng(1);
    std::vector<PotentialInput> inputs;
    for (int i = 0; i < 200; ++i) inputs.push_back(random_piecewise_linear(rng, 8, 50.0, 800));
    const auto ok = parallel_map(inputs.size(), workers, [&](std::size_t i) {
      const auto g = sample(inputs[i].spec, inputs[i].n, inputs[i].cap);
      const auto r = verify_chain(g);
      const double eps = rearrangement_slack(g, r);
      return r.hlLeft >= r.hlRight - eps && r.psLeft <= r.psRight + eps && r.lambdaRearranged <= r.lambdaOriginal + eps;
    });
    int held = 0;
    for (bool b : ok) held += b;
    return Outcome{held == 200, fmt("%d of 200 satisfy all three inequalities", held)};
  });

  criterion(8, "localization of half the mass", 120.0, [&] {
    if (cone_rows.empty()) return Outcome{false, "cone family unavailable"};
    const double c = cone_rows.front().halfMass * std::sqrt(cone_rows.front().lambda1) / 2;
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const auto& r : cone_rows) {
      const double v = r.halfMass * std::sqrt(r.lambda1);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return Outcome{lo >= c && hi <= 4 * c, fmt("|J| sqrt(lambda1) in [%.4f, %.4f], band [%.4f, %.4f]", lo, hi, c, 4 * c)};
  });

  criterion(9, "van den Berg statistic, cone family 2D", 900.0, [&] {
    const std::vector<double> Ds{8, 16, 32, 64};
    vdberg_rows = parallel_map(Ds.size(), workers,
                               [&](std::size_t i) { return analyze_domain(generate_family(DomainFamily::cone, Ds[i]), 1.0 / 64); });
    std::vector<double> diam, sup, stat;
    bool rho_ok = true;
    for (const auto& r : vdberg_rows) {
      diam.push_back(r.diameter);
      sup.push_back(r.supRatio);
      stat.push_back(r.statistic);
      rho_ok = rho_ok && std::abs(r.rho - 1) <= 1e-3;
    }
    const double slope = fit_loglog(diam, sup).slope;
    const double spread = *std::max_element(stat.begin(), stat.end()) / *std::min_element(stat.begin(), stat.end());
    return Outcome{rho_ok && slope <= -1.0 / 6 + 0.05 && spread <= 2,
                   fmt("sup-ratio slope = %.4f (<= %.4f), statistic max/min = %.4f", slope, -1.0 / 6 + 0.05, spread)};
  });

  criterion(10, "balancing and 1D/2D consistency", 900.0, [&] {
    if (vdberg_rows.empty()) return Outcome{false, "2D family unavailable"};
    double blo = std::numeric_limits<double>::infinity(), bhi = 0, rlo = blo, rhi = 0, literal = 0;
    for (const auto& r : vdberg_rows) {
      blo = std::min(blo, r.balance);
      bhi = std::max(bhi, r.balance);
      const double ratio = r.lambdaNormalized / r.lambdaGJ;
      rlo = std::min(rlo, ratio);
      rhi = std::max(rhi, ratio);
      literal = std::max(literal, r.lambdaNormalized * r.L * r.L);
    }
    return Outcome{blo >= 1.0 / 20 && bhi <= 20 && rlo >= 0.5 && rhi <= 2,
                   fmt("(lambda1 - pi^2) L^2 in [%.3f, %.3f], lambda1(2D)/lambda1(GJ) in [%.4f, %.4f], full lambda1 L^2 up to %.2f",
                       blo, bhi, rlo, rhi, literal)};
  });

  criterion(11, "GJ profile on the 8 x 1 rectangle", 60.0, [] {
    const auto a = analyze_domain(rectangle(8, 1), 1.0 / 64);
    return Outcome{a.gjError <= 1e-2, fmt("sup error = %.3e", a.gjError)};
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
