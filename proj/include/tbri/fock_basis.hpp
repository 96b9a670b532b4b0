#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tbri {

/// Occupation-number vector: one entry per single-particle level, entries sum
/// to the particle number. Entries are stored as uint8, so N <= 255.
using Occupation = std::vector<std::uint8_t>;

/// Hilbert-space dimension for n_particles bosons on n_levels levels,
/// (N+M-1)! / (N! (M-1)!). Throws ComputationError if the result (or an
/// intermediate) does not fit in 64 bits; never wraps silently.
std::uint64_t basis_dimension(int n_particles, int n_levels);

/// The many-boson Fock basis of N particles on M levels.
///
/// Canonical order: lexicographically decreasing occupation vectors, so
/// (N,0,...,0) is state 0 and (0,...,0,N) is the last. The order is a pure
/// function of (N, M) and is what every serialized index refers to.
/// Immutable after construction; safe to share across threads.
class FockBasis {
 public:
  static FockBasis enumerate(int n_particles, int n_levels);

  int particles() const { return n_; }
  int levels() const { return m_; }
  std::size_t size() const { return size_; }

  /// Occupations of basis state i, a view of length levels().
  std::span<const std::uint8_t> state(std::size_t i) const {
    return {flat_.data() + i * static_cast<std::size_t>(m_),
            static_cast<std::size_t>(m_)};
  }

  Occupation occupation(std::size_t i) const {
    auto s = state(i);
    return Occupation(s.begin(), s.end());
  }

  /// Index of an occupation vector via combinatorial ranking, O(M*N) table
  /// lookups. Throws ValidationError if the vector does not belong to this
  /// basis (wrong length or wrong particle count).
  std::size_t lookup(std::span<const std::uint8_t> occ) const;

  /// Ranking without validation; occ must have length M and sum N.
  std::size_t rank(std::span<const std::uint8_t> occ) const;

  /// Debug text listing, one occupation vector per line, space-separated.
  /// Not a stability-guaranteed format.
  std::string to_text() const;

 private:
  FockBasis() = default;

  int n_ = 0;
  int m_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint8_t> flat_;          // size_ * m_
  std::vector<std::uint64_t> dim_table_;    // dim(n, m), (n_+1) x (m_+1), row-major
  std::uint64_t dim(int n, int m) const {
    return dim_table_[static_cast<std::size_t>(n) * (m_ + 1) + m];
  }
};

}  // namespace tbri
