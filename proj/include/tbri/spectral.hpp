#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "tbri/hamiltonian.hpp"

namespace tbri {

/// Full eigendecomposition H |alpha> = E^alpha |alpha> in the Fock basis.
/// coefficients(k, alpha) = C_k^alpha = <k|alpha>; eigenvalues ascending.
/// Sign convention: the largest-magnitude component of each column positive.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  Eigen::MatrixXd coefficients;
  std::string basis_ref;
};

struct DiagonalizeOptions {
  std::size_t dimension_cap = 20000;
};

/// Dense symmetric solve of the full matrix (every analysis needs all
/// eigenvectors). Refuses dimensions over the cap.
SpectralDecomposition diagonalize(const SparseHamiltonian& h,
                                  const DiagonalizeOptions& options = {});

struct DosHistogram {
  std::vector<double> bin_edges;  // n_bins + 1
  std::vector<double> counts;
  std::vector<double> density;    // integrates to 1
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
};

DosHistogram dos(std::span<const double> eigenvalues, int n_bins);

}  // namespace tbri
