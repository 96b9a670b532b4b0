#include "tbri/fock_basis.hpp"

#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "tbri/errors.hpp"

namespace tbri {

std::uint64_t basis_dimension(int n_particles, int n_levels) {
  if (n_particles < 1 || n_levels < 1) {
    throw ValidationError("basis_dimension: need n_particles >= 1 and n_levels >= 1");
  }
  // C(N+M-1, min(N, M-1)), multiplicative form; each step keeps an exact
  // binomial, the transient product is checked in 128-bit.
  const std::uint64_t n = static_cast<std::uint64_t>(n_particles) + n_levels - 1;
  std::uint64_t k = std::min<std::uint64_t>(n_particles, n_levels - 1);
  unsigned __int128 result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result = result * (n - i);
    result /= (i + 1);
    if (result > std::numeric_limits<std::uint64_t>::max()) {
      throw ComputationError("basis_dimension: overflow for N=" +
                             std::to_string(n_particles) + ", M=" +
                             std::to_string(n_levels));
    }
  }
  return static_cast<std::uint64_t>(result);
}

FockBasis FockBasis::enumerate(int n_particles, int n_levels) {
  const std::uint64_t dim64 = basis_dimension(n_particles, n_levels);
  if (n_particles > 255) {
    throw ValidationError("FockBasis: occupations stored as uint8, N <= 255");
  }
  if (dim64 > (std::uint64_t{1} << 40)) {
    throw ComputationError("FockBasis: dimension " + std::to_string(dim64) +
                           " too large to enumerate");
  }

  FockBasis b;
  b.n_ = n_particles;
  b.m_ = n_levels;
  b.size_ = static_cast<std::size_t>(dim64);

  // dim(n, m) table via dim(n,m) = dim(n-1,m) + dim(n,m-1),
  // dim(0,m) = 1, dim(n>0, 0) = 0. All entries <= dim64, so no overflow.
  b.dim_table_.assign(static_cast<std::size_t>(n_particles + 1) * (n_levels + 1), 0);
  for (int m = 0; m <= n_levels; ++m) b.dim_table_[m] = 1;
  for (int n = 1; n <= n_particles; ++n) {
    for (int m = 1; m <= n_levels; ++m) {
      b.dim_table_[static_cast<std::size_t>(n) * (n_levels + 1) + m] =
          b.dim_table_[static_cast<std::size_t>(n - 1) * (n_levels + 1) + m] +
          b.dim_table_[static_cast<std::size_t>(n) * (n_levels + 1) + m - 1];
    }
  }

  b.flat_.resize(b.size_ * static_cast<std::size_t>(n_levels));
  Occupation state(n_levels, 0);
  state[0] = static_cast<std::uint8_t>(n_particles);
  std::size_t row = 0;
  while (true) {
    std::copy(state.begin(), state.end(),
              b.flat_.begin() + row * static_cast<std::size_t>(n_levels));
    ++row;
    // next state in decreasing lexicographic order
    int k = n_levels - 2;
    for (; k >= 0; --k) {
      if (state[k] != 0) break;
    }
    if (k < 0) break;
    state[k] -= 1;
    int carried = 0;
    for (int i = 0; i <= k; ++i) carried += state[i];
    state[k + 1] = static_cast<std::uint8_t>(n_particles - carried);
    for (int i = k + 2; i < n_levels; ++i) state[i] = 0;
  }
  if (row != b.size_) {
    throw ComputationError("FockBasis: enumeration produced " + std::to_string(row) +
                           " states, expected " + std::to_string(b.size_));
  }
  return b;
}

std::size_t FockBasis::rank(std::span<const std::uint8_t> occ) const {
  // Number of vectors lexicographically greater than occ: at position i with
  // R particles left, any larger entry c, times the dim of the remainder.
  std::uint64_t r = 0;
  int remaining = n_;
  for (int i = 0; i < m_; ++i) {
    const int vi = occ[i];
    for (int c = vi + 1; c <= remaining; ++c) {
      r += dim(remaining - c, m_ - 1 - i);
    }
    remaining -= vi;
  }
  return static_cast<std::size_t>(r);
}

std::size_t FockBasis::lookup(std::span<const std::uint8_t> occ) const {
  if (static_cast<int>(occ.size()) != m_) {
    throw ValidationError("lookup: state has " + std::to_string(occ.size()) +
                          " levels, basis has " + std::to_string(m_));
  }
  int sum = 0;
  for (auto v : occ) sum += v;
  if (sum != n_) {
    throw ValidationError("lookup: state holds " + std::to_string(sum) +
                          " particles, basis has " + std::to_string(n_));
  }
  return rank(occ);
}

std::string FockBasis::to_text() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < size_; ++i) {
    auto s = state(i);
    for (int j = 0; j < m_; ++j) {
      if (j) out << ' ';
      out << static_cast<int>(s[j]);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace tbri
