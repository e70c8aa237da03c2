#include "specgap/constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "specgap/errors.hpp"
#include "specgap/parallel.hpp"

namespace specgap {

namespace {

constexpr double kPi2 = std::numbers::pi * std::numbers::pi;

double decay_margin(const ConstantTriple& t) {
  return std::sqrt(t.alpha) / 2.0 * (1.0 - t.beta / kPi2);
}

// Objective with infeasible triples mapped to -inf, for the search.
double score(const ConstantTriple& t) { return is_feasible(t) ? objective(t) : -std::numeric_limits<double>::infinity(); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

struct RestartResult {
  ConstantTriple best{};
  double value = -std::numeric_limits<double>::infinity();
  std::uint64_t evaluations = 0;
};

// Coordinate descent from `start` with multiplicative steps, spending at most
// `budget` evaluations.
RestartResult refine(ConstantTriple start, std::uint64_t budget) {
  RestartResult r;
  if (budget == 0) return r;
  r.best = start;
  r.value = score(start);
  r.evaluations = 1;
  std::array<double, 3> step{0.1, 0.1, 0.1};
  while (r.evaluations < budget && *std::max_element(step.begin(), step.end()) > 1e-12) {
    bool improved = false;
    for (int c = 0; c < 3 && r.evaluations < budget; ++c) {
      for (double sign : {1.0, -1.0}) {
        if (r.evaluations >= budget) break;
        ConstantTriple trial = r.best;
        double& coord = c == 0 ? trial.alpha : (c == 1 ? trial.beta : trial.gamma);
        coord *= 1.0 + sign * step[c];
        const double v = score(trial);
        ++r.evaluations;
        if (v > r.value) {
          r.value = v;
          r.best = trial;
          improved = true;
          break;
        }
      }
    }
    if (!improved)
      for (double& s : step) s *= 0.5;
  }
  return r;
}

}  // namespace

double case2_gradient_term(const ConstantTriple& t) {
  const double bracket = decay_margin(t) - 1.0 / std::sqrt(1.0 + t.gamma);
  return bracket * bracket / t.gamma;
}

bool is_feasible(const ConstantTriple& t) {
  if (!(t.alpha > 0 && t.alpha < 1)) return false;
  if (!(t.beta > 0 && t.beta < kPi2)) return false;
  if (!(t.gamma > 0)) return false;
  return decay_margin(t) >= 1.0 / std::sqrt(1.0 + t.gamma);
}

double objective(const ConstantTriple& t) {
  if (!is_feasible(t)) throw PreconditionError("objective: infeasible constant triple");
  return std::min({case2_gradient_term(t), 1.0 - t.alpha, t.alpha * t.beta});
}

double minimal_feasible_gamma(double alpha, double beta) {
  const double m = 1.0 - beta / kPi2;
  return 4.0 / (alpha * m * m) - 1.0;
}

double optimal_gamma(double alpha, double beta, double gamma_max) {
  double lo = std::max(minimal_feasible_gamma(alpha, beta), 1e-12);
  double hi = std::max(gamma_max, lo);
  const auto f = [&](double g) { return case2_gradient_term({alpha, beta, g}); };
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double u = hi - inv_phi * (hi - lo);
  double v = lo + inv_phi * (hi - lo);
  double fu = f(u), fv = f(v);
  while (hi - lo > 1e-10 * std::max(1.0, hi)) {
    if (fu < fv) {
      lo = u;
      u = v;
      fu = fv;
      v = lo + inv_phi * (hi - lo);
      fv = f(v);
    } else {
      hi = v;
      v = u;
      fv = fu;
      u = hi - inv_phi * (hi - lo);
      fu = f(u);
    }
  }
  return (lo + hi) / 2.0;
}

SearchResult search(std::uint64_t budget, std::uint64_t seed, unsigned workers) {
  if (budget < 1) throw ParameterError("search requires budget >= 1");
  SearchResult result{kReferenceTriple, objective(kReferenceTriple), 1};
  std::uint64_t remaining = budget - 1;
  if (remaining == 0) return result;

  constexpr std::uint64_t kChunk = 2000;
  const std::uint64_t restarts = (remaining + kChunk - 1) / kChunk;
  const auto runs = parallel_map(static_cast<std::size_t>(restarts), workers, [&](std::size_t r) {
    const std::uint64_t share = std::min<std::uint64_t>(kChunk, remaining - r * kChunk);
    if (r == 0) return refine(kReferenceTriple, share);
    std::mt19937_64 rng(splitmix64(seed ^ splitmix64(r)));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double alpha = 0.5 + 0.5 * unit(rng);
    const double beta = kPi2 * std::pow(10.0, -4.0 + 4.0 * unit(rng));
    const double gamma_min = minimal_feasible_gamma(alpha, beta);
    const double gamma = gamma_min > 0 ? gamma_min * (1.0 + 20.0 * unit(rng)) : 1.0 + 20.0 * unit(rng);
    return refine({alpha, beta, gamma}, share);
  });
  for (const auto& run : runs) {
    result.evaluations += run.evaluations;
    if (run.value > result.value) {
      result.value = run.value;
      result.best = run.best;
    }
  }
  return result;
}

}  // namespace specgap
