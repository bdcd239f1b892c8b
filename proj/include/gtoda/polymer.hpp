#pragma once

#include <cstdint>
#include <iosfwd>

#include "gtoda/paths.hpp"

namespace gtoda {

/// log Z^k(t_m) for k = 1..N as coordinates 0..N-1, environment order (B_1, ..., B_N).
/// Level k is defined from grid index k-1 (fewer panels cannot host k-1 ordered jumps).
/// Recursion: log Z^1 = beta*B_1 and
///   log Z^k(t_m) = beta*B_k(t_m) + log sum_{j<=m} dt * exp(log Z^{k-1}(t_{j-1}) - beta*B_k(t_j)).
VectorPath log_partition(const VectorPath& env, double beta);

/// Ground-state energy M^k(t_m): the max-plus version of the same recursion.
VectorPath ground_state(const VectorPath& env);

struct FreeEnergyReport {
  std::size_t n = 0;
  double beta = 1.0;
  double estimate = 0.0;     ///< mean of (1/N) log Z^N_N over replicas
  double std_error = 0.0;
  double variational = 0.0;  ///< inf_t [beta^2 t - Psi(t)] - log beta^2
  double t_star = 0.0;
  double relative_gap = 0.0;
  std::size_t replicas = 0;
};

/// Minimizer of beta^2 t - Psi(t): the root of trigamma(t) = beta^2.
double free_energy_minimizer(double beta);
double variational_free_energy(double beta);

FreeEnergyReport free_energy_check(std::size_t n, double beta, double dt, std::size_t reps,
                                   std::uint64_t seed);

/// CSV `t,logZ_1,...,logZ_N`, or `t,M` for a single column ground state.
void write_log_partition_csv(std::ostream& os, const VectorPath& logz);
void write_ground_state_csv(std::ostream& os, const VectorPath& ground);

}  // namespace gtoda
