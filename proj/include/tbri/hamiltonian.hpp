#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "tbri/fock_basis.hpp"
#include "tbri/model.hpp"

namespace tbri {

struct Triplet {
  std::uint32_t row = 0;  // row < col
  std::uint32_t col = 0;
  double value = 0.0;
};

/// H = H0 + H_I in the Fock basis, upper triangle only.
///
/// off_diagonal holds every structurally allowed coupling (states connected by
/// moving at most two particles), sorted by (row, col), even when the random
/// value happens to be zero (V = 0 included); connectivity counts are
/// therefore exact and seed-independent.
struct SparseHamiltonian {
  std::uint64_t dimension = 0;
  std::vector<double> diagonal;     // H_kk = E0_k + diagonal part of H_I
  std::vector<double> h0_diagonal;  // E0_k = sum_s eps_s n_s
  std::vector<Triplet> off_diagonal;
};

/// Assembles H for one disorder realization. Matrix elements come from
/// normal-ordered application of a†_{s1} a†_{s2} a_{s3} a_{s4} with the
/// standard sqrt(n) bosonic amplitudes, summed over all ordered pairs (P, Q)
/// of sorted level pairs with the symmetric coefficient table.
///
/// The interaction sum carries the structural normalization gamma(N, M) =
/// 1/sqrt(<sum of squared amplitudes per coupled pair>), so the generated
/// off-diagonal elements have mean square V^2. Without it the bosonic
/// amplitude factors inflate the effective coupling variance by roughly
/// (N+1) and the interaction strength loses its meaning of
/// coupling-per-spacing that the crossover analysis relies on.
SparseHamiltonian assemble(const TbriModel& model, const FockBasis& basis);

struct StructuralMoments {
  /// E[(Delta E_k)^2] / V^2 per basis state, normalization included.
  std::vector<double> width_sq_per_v_sq;
  /// gamma(N, M): the factor multiplying the two-body operator sum.
  double coupling_norm = 1.0;
  /// mean over structurally coupled pairs of the squared amplitude sum
  /// (= 1/gamma^2).
  double mean_amp_sq = 1.0;
};

/// Pure function of (N, M); used by assemble() and to scale ensemble grids
/// a priori.
StructuralMoments structural_moments(const FockBasis& basis);

/// Per-row count of structurally allowed off-diagonal couplings.
std::vector<std::uint32_t> row_connectivity(const SparseHamiltonian& h);

struct ConnectivityBounds {
  std::uint64_t m_min = 0;
  std::uint64_t m_max = 0;
};

/// Closed-form bounds on the row connectivity: M_min = (M-1)(M+2)/2 for a
/// fully stacked state, M_max = N(M-1)[1 + (N-1)(M-2)/4] for a singly/null
/// occupied state. The formulas are returned for any (N, M) >= (2, 2); the
/// M_max pattern only exists when M > N, and neither bound is attained at
/// N = 1 where the two-body operator annihilates every state.
ConnectivityBounds connectivity_bounds(int n_particles, int n_levels);

/// Matrix export: <prefix>.header.json (N, M, V, seed, sp_mode, eps list,
/// dimension) plus <prefix>.triplets.csv with rows "row,col,value", the
/// diagonal first and then the sorted upper triangle. Values carry 17
/// significant digits, so the round-trip is bit-exact.
void save_matrix(const SparseHamiltonian& h, const TbriModel& model,
                 const std::filesystem::path& prefix);

struct LoadedMatrix {
  TbriParams params;
  std::vector<double> sp_energies;
  SparseHamiltonian hamiltonian;
};

LoadedMatrix load_matrix(const std::filesystem::path& prefix);

}  // namespace tbri
