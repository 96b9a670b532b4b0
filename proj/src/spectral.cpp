#include "tbri/spectral.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

#include "tbri/errors.hpp"
#include "tbri/numerics.hpp"

namespace tbri {

namespace {

/// Cheap backend sanity check: column norms plus sparse residuals on a few
/// sampled columns. This image's OpenBLAS silently corrupts eigenvectors for
/// some CPU kernels (info = 0, valid eigenvalues), so trust is not an option.
void verify_decomposition(const SparseHamiltonian& h, const SpectralDecomposition& spec) {
  const std::size_t dim = h.dimension;
  for (std::size_t a = 0; a < dim; ++a) {
    if (std::abs(spec.coefficients.col(a).squaredNorm() - 1.0) > 1e-8) {
      throw ComputationError(
          "diagonalize: eigensolver backend returned a non-normalized "
          "eigenvector (broken BLAS/LAPACK kernel?)");
    }
  }
  double e_scale = 1e-300;
  for (double e : spec.eigenvalues) e_scale = std::max(e_scale, std::abs(e));
  const std::size_t stride = std::max<std::size_t>(1, dim / 7);
  for (std::size_t a = 0; a < dim; a += stride) {
    Eigen::VectorXd hv = Eigen::VectorXd::Zero(dim);
    const auto col = spec.coefficients.col(a);
    for (std::size_t k = 0; k < dim; ++k) hv(k) = h.diagonal[k] * col(k);
    for (const auto& t : h.off_diagonal) {
      hv(t.row) += t.value * col(t.col);
      hv(t.col) += t.value * col(t.row);
    }
    hv -= spec.eigenvalues[a] * col;
    if (hv.norm() > 1e-9 * e_scale) {
      throw ComputationError(
          "diagonalize: eigenpair residual " + std::to_string(hv.norm()) +
          " exceeds 1e-9 * " + std::to_string(e_scale) +
          " (broken BLAS/LAPACK kernel?)");
    }
  }
}

bool use_lapack_backend() {
  const char* env = std::getenv("TBRI_EIGENSOLVER");
  return env != nullptr && std::strcmp(env, "lapack") == 0;
}

}  // namespace

SpectralDecomposition diagonalize(const SparseHamiltonian& h,
                                  const DiagonalizeOptions& options) {
  const std::size_t dim = h.dimension;
  if (dim == 0) throw ValidationError("diagonalize: empty Hamiltonian");
  if (dim > options.dimension_cap) {
    throw ValidationError(
        "diagonalize: dimension " + std::to_string(dim) + " exceeds the cap " +
        std::to_string(options.dimension_cap) +
        "; raise DiagonalizeOptions::dimension_cap if the memory (O(8*dim^2) "
        "bytes) and runtime are acceptable");
  }

  SpectralDecomposition spec;
  spec.coefficients.setZero(dim, dim);
  for (std::size_t k = 0; k < dim; ++k) spec.coefficients(k, k) = h.diagonal[k];
  for (const auto& t : h.off_diagonal) {
    spec.coefficients(t.row, t.col) = t.value;
    spec.coefficients(t.col, t.row) = t.value;
  }
  spec.eigenvalues.resize(dim);

  if (use_lapack_backend()) {
    const int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<int>(dim),
                                    spec.coefficients.data(), static_cast<int>(dim),
                                    spec.eigenvalues.data());
    if (info != 0) {
      throw ComputationError("dsyevd failed with info=" + std::to_string(info));
    }
  } else {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(spec.coefficients);
    if (solver.info() != Eigen::Success) {
      throw ComputationError("SelfAdjointEigenSolver did not converge");
    }
    Eigen::Map<Eigen::VectorXd>(spec.eigenvalues.data(), dim) = solver.eigenvalues();
    spec.coefficients = solver.eigenvectors();
  }

  verify_decomposition(h, spec);

  // sign convention: largest-|component| entry positive, first index on ties
  for (std::size_t a = 0; a < dim; ++a) {
    auto col = spec.coefficients.col(a);
    std::size_t arg = 0;
    double best = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double mag = std::abs(col(k));
      if (mag > best) {
        best = mag;
        arg = k;
      }
    }
    if (col(arg) < 0.0) col = -col;
  }
  return spec;
}

DosHistogram dos(std::span<const double> eigenvalues, int n_bins) {
  if (n_bins < 2) throw ValidationError("dos: need n_bins >= 2");
  if (eigenvalues.empty()) throw ValidationError("dos: empty spectrum");

  DosHistogram hist;
  double lo = *std::min_element(eigenvalues.begin(), eigenvalues.end());
  double hi = *std::max_element(eigenvalues.begin(), eigenvalues.end());
  if (hi - lo < 1e-300) {  // degenerate spectrum: widen so the mass is binnable
    lo -= 0.5;
    hi += 0.5;
  }
  const double width = (hi - lo) / n_bins;
  hist.bin_edges.resize(n_bins + 1);
  for (int i = 0; i <= n_bins; ++i) hist.bin_edges[i] = lo + width * i;
  hist.counts.assign(n_bins, 0.0);
  for (double e : eigenvalues) {
    int bin = static_cast<int>((e - lo) / width);
    bin = std::clamp(bin, 0, n_bins - 1);
    hist.counts[bin] += 1.0;
  }
  const double total = static_cast<double>(eigenvalues.size());
  hist.density.resize(n_bins);
  for (int i = 0; i < n_bins; ++i) hist.density[i] = hist.counts[i] / (total * width);

  const auto st = compute_moments(eigenvalues);
  hist.mean = st.mean;
  hist.variance = st.variance;
  hist.skewness = st.skewness;
  return hist;
}

}  // namespace tbri
