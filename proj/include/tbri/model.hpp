#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace tbri {

enum class SpMode { UniformRandom, PicketFence };

std::string to_string(SpMode mode);
SpMode sp_mode_from_string(const std::string& s);

struct TbriParams {
  int n_particles = 0;
  int n_levels = 0;
  double interaction_strength = 0.0;  // V, in units of the mean sp spacing d
  SpMode sp_mode = SpMode::UniformRandom;
  std::uint64_t rng_seed = 0;

  void validate() const;  // throws ValidationError
};

/// One disorder realization: single-particle energies plus the symmetric
/// two-body coefficient table V_{PQ} over sorted level pairs P=(s1<=s2).
///
/// Conventions (fixed for reproducibility):
///  - uniform-random mode draws M energies from U[0, M] and relabels the
///    levels so sp_energies is ascending; picket-fence sets eps_s = s-1.
///  - one Gaussian N(0, V^2) is drawn per unordered pair class {P, Q},
///    row-major over P <= Q, then mirrored (V_PQ = V_QP). The draw is V times
///    a unit-variance deviate, so the same seed at two interaction strengths
///    yields proportional tables.
///  - substreams: sp_energies from derive_stream(seed, 1), two_body from
///    derive_stream(seed, 2).
class TbriModel {
 public:
  TbriParams params;
  std::vector<double> sp_energies;  // size M
  std::vector<double> two_body;     // n_pairs^2, row-major symmetric

  int n_pairs() const { return params.n_levels * (params.n_levels + 1) / 2; }

  /// Index of the sorted pair (a <= b) in the canonical pair list
  /// (0,0),(0,1),...,(0,M-1),(1,1),...
  int pair_index(int a, int b) const {
    return a * params.n_levels - a * (a - 1) / 2 + (b - a);
  }

  double coefficient(int p, int q) const {
    return two_body[static_cast<std::size_t>(p) * n_pairs() + q];
  }

  /// Copy with the single-particle part removed (eps = 0): the H_I-only
  /// reference Hamiltonian used for the V -> infinity limit.
  TbriModel interaction_only() const;
};

TbriModel draw_disorder(const TbriParams& params);

}  // namespace tbri
