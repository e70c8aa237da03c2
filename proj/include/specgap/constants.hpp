#pragma once

// The (alpha, beta, gamma) constant system behind the 1/250 lower bound.
//
//   alpha in (0, 1)       fraction of L^2 mass on the shortest interval J
//   beta  in (0, pi^2)    oscillation threshold separating the two cases
//   gamma >= (4/alpha)(1 - beta/pi^2)^{-2} - 1   decay distance in units |J|
//
// The provable constant is min{ F(alpha, beta, gamma), 1 - alpha, alpha beta }.

#include <cstdint>

namespace specgap {

struct ConstantTriple {
  double alpha;
  double beta;
  double gamma;
};

inline constexpr ConstantTriple kReferenceTriple{0.99, 0.007, 14.1327};

/// (1/gamma) [ sqrt(alpha)/2 (1 - beta/pi^2) - (1 + gamma)^{-1/2} ]^2
double case2_gradient_term(const ConstantTriple& t);

bool is_feasible(const ConstantTriple& t);

/// Throws PreconditionError for infeasible triples.
double objective(const ConstantTriple& t);

/// Smallest gamma satisfying the decay constraint for the given alpha, beta.
double minimal_feasible_gamma(double alpha, double beta);

/// gamma maximizing case2_gradient_term over the feasible range, by golden
/// section on [minimal_feasible_gamma, gamma_max].
double optimal_gamma(double alpha, double beta, double gamma_max = 1e4);

struct SearchResult {
  ConstantTriple best;
  double value;
  std::uint64_t evaluations;
};

/// Heuristic maximization of objective() using seeded random restarts
/// refined by coordinate descent. budget counts objective evaluations; the
/// reference triple is always the first one evaluated.
SearchResult search(std::uint64_t budget, std::uint64_t seed, unsigned workers = 1);

}  // namespace specgap
