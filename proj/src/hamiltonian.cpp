#include "tbri/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include <json.hpp>

#include "tbri/errors.hpp"
#include "tbri/text_io.hpp"

namespace tbri {

namespace {

struct LevelPair {
  int a = 0;  // a <= b
  int b = 0;
};

std::vector<LevelPair> sorted_pairs(int m) {
  std::vector<LevelPair> pairs;
  pairs.reserve(m * (m + 1) / 2);
  for (int a = 0; a < m; ++a) {
    for (int b = a; b < m; ++b) pairs.push_back({a, b});
  }
  return pairs;
}

/// Visits every (column k, target j, annihilation pair Q, creation pair P)
/// with the bosonic amplitude of a†_{p1} a†_{p2} a_{q1} a_{q2} acting on |k>.
/// fn(k, j, pair index p, pair index q, amplitude).
template <typename Fn>
void for_each_coupling(const FockBasis& basis, Fn&& fn) {
  const int m = basis.levels();
  const auto pairs = sorted_pairs(m);
  const int np = static_cast<int>(pairs.size());
  Occupation work(m);

  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto n = basis.state(k);
    for (int q = 0; q < np; ++q) {
      const auto [q1, q2] = pairs[q];
      double amp_a;
      if (q1 == q2) {
        if (n[q1] < 2) continue;
        amp_a = std::sqrt(static_cast<double>(n[q1]) * (n[q1] - 1));
      } else {
        if (n[q1] < 1 || n[q2] < 1) continue;
        amp_a = std::sqrt(static_cast<double>(n[q1]) * n[q2]);
      }
      std::copy(n.begin(), n.end(), work.begin());
      --work[q1];
      --work[q2];
      for (int p = 0; p < np; ++p) {
        const auto [p1, p2] = pairs[p];
        double amp_c;
        if (p1 == p2) {
          amp_c = std::sqrt(static_cast<double>(work[p1] + 1) * (work[p1] + 2));
        } else {
          amp_c = std::sqrt(static_cast<double>(work[p1] + 1) * (work[p2] + 1));
        }
        ++work[p1];
        ++work[p2];
        const std::size_t j = basis.rank(work);
        fn(k, j, p, q, amp_a * amp_c);
        --work[p1];
        --work[p2];
      }
    }
  }
}

}  // namespace

SparseHamiltonian assemble(const TbriModel& model, const FockBasis& basis) {
  if (basis.particles() != model.params.n_particles ||
      basis.levels() != model.params.n_levels) {
    throw ValidationError("assemble: basis (N=" + std::to_string(basis.particles()) +
                          ",M=" + std::to_string(basis.levels()) +
                          ") does not match model (N=" +
                          std::to_string(model.params.n_particles) + ",M=" +
                          std::to_string(model.params.n_levels) + ")");
  }
  const std::size_t dim = basis.size();
  const int m = basis.levels();

  SparseHamiltonian h;
  h.dimension = dim;
  h.h0_diagonal.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto n = basis.state(k);
    double e0 = 0.0;
    for (int s = 0; s < m; ++s) e0 += model.sp_energies[s] * n[s];
    h.h0_diagonal[k] = e0;
  }
  h.diagonal = h.h0_diagonal;
  std::vector<double> hi_diagonal(dim, 0.0);

  std::vector<double> column(dim, 0.0);
  std::vector<double> col_amp_sq(dim, 0.0);
  std::vector<char> seen(dim, 0);
  std::vector<std::uint32_t> touched;
  touched.reserve(1024);
  std::size_t current = 0;
  double amp_sq_sum = 0.0;
  std::uint64_t coupled_pairs = 0;

  auto flush_column = [&](std::size_t k) {
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      if (j == k) {
        hi_diagonal[k] = column[j];
      } else {
        if (j < k) {
          h.off_diagonal.push_back({j, static_cast<std::uint32_t>(k), column[j]});
        }
        amp_sq_sum += col_amp_sq[j];
        ++coupled_pairs;
      }
      column[j] = 0.0;
      col_amp_sq[j] = 0.0;
      seen[j] = 0;
    }
    touched.clear();
  };

  for_each_coupling(basis, [&](std::size_t k, std::size_t j, int p, int q, double amp) {
    if (k != current) {
      flush_column(current);
      current = k;
    }
    if (!seen[j]) {
      seen[j] = 1;
      touched.push_back(static_cast<std::uint32_t>(j));
    }
    column[j] += model.coefficient(p, q) * amp;
    col_amp_sq[j] += amp * amp;
  });
  flush_column(current);

  const double gamma =
      coupled_pairs ? 1.0 / std::sqrt(amp_sq_sum / static_cast<double>(coupled_pairs))
                    : 1.0;
  for (auto& t : h.off_diagonal) t.value *= gamma;
  for (std::size_t k = 0; k < dim; ++k) h.diagonal[k] += gamma * hi_diagonal[k];

  std::sort(h.off_diagonal.begin(), h.off_diagonal.end(),
            [](const Triplet& x, const Triplet& y) {
              return x.row != y.row ? x.row < y.row : x.col < y.col;
            });
  return h;
}

std::vector<std::uint32_t> row_connectivity(const SparseHamiltonian& h) {
  std::vector<std::uint32_t> counts(h.dimension, 0);
  for (const auto& t : h.off_diagonal) {
    ++counts[t.row];
    ++counts[t.col];
  }
  return counts;
}

ConnectivityBounds connectivity_bounds(int n_particles, int n_levels) {
  if (n_particles < 1 || n_levels < 2) {
    throw ValidationError("connectivity_bounds: need N >= 1, M >= 2");
  }
  const std::uint64_t n = n_particles;
  const std::uint64_t m = n_levels;
  ConnectivityBounds b;
  b.m_min = (m - 1) * (m + 2) / 2;
  // N(M-1)(N-1)(M-2) is divisible by 4, so this is exact.
  b.m_max = n * (m - 1) * (4 + (n - 1) * (m - 2)) / 4;
  return b;
}

StructuralMoments structural_moments(const FockBasis& basis) {
  // Coefficient classes are unordered {P, Q}; for j != k exactly one ordered
  // visit lands on j, so summing amp^2 over visits gives Var(H_kj)/V^2
  // before normalization.
  const std::size_t dim = basis.size();
  StructuralMoments out;
  out.width_sq_per_v_sq.assign(dim, 0.0);
  std::vector<double> pair_amp_sq(dim, 0.0);
  std::vector<char> seen(dim, 0);
  std::vector<std::uint32_t> touched;
  std::size_t current = 0;
  double amp_sq_sum = 0.0;
  std::uint64_t coupled_pairs = 0;

  auto flush = [&](std::size_t k) {
    std::sort(touched.begin(), touched.end());
    for (auto j : touched) {
      if (j != k) {
        out.width_sq_per_v_sq[k] += pair_amp_sq[j];
        amp_sq_sum += pair_amp_sq[j];
        ++coupled_pairs;
      }
      pair_amp_sq[j] = 0.0;
      seen[j] = 0;
    }
    touched.clear();
  };
  for_each_coupling(basis, [&](std::size_t k, std::size_t j, int, int, double amp) {
    if (k != current) {
      flush(current);
      current = k;
    }
    if (!seen[j]) {
      seen[j] = 1;
      touched.push_back(static_cast<std::uint32_t>(j));
    }
    pair_amp_sq[j] += amp * amp;
  });
  flush(current);

  if (coupled_pairs) {
    out.mean_amp_sq = amp_sq_sum / static_cast<double>(coupled_pairs);
    out.coupling_norm = 1.0 / std::sqrt(out.mean_amp_sq);
  }
  const double g2 = out.coupling_norm * out.coupling_norm;
  for (auto& w : out.width_sq_per_v_sq) w *= g2;
  return out;
}

void save_matrix(const SparseHamiltonian& h, const TbriModel& model,
                 const std::filesystem::path& prefix) {
  nlohmann::json header;
  header["format_version"] = 1;
  header["n_particles"] = model.params.n_particles;
  header["n_levels"] = model.params.n_levels;
  header["interaction_strength"] = model.params.interaction_strength;
  header["rng_seed"] = model.params.rng_seed;
  header["sp_mode"] = to_string(model.params.sp_mode);
  header["sp_energies"] = model.sp_energies;
  header["dimension"] = h.dimension;
  write_text_file(prefix.string() + ".header.json", header.dump(2) + "\n");

  std::ostringstream csv;
  csv << "row,col,value\n";
  for (std::size_t k = 0; k < h.dimension; ++k) {
    csv << k << ',' << k << ',' << fmt17(h.diagonal[k]) << '\n';
  }
  for (const auto& t : h.off_diagonal) {
    csv << t.row << ',' << t.col << ',' << fmt17(t.value) << '\n';
  }
  write_text_file(prefix.string() + ".triplets.csv", csv.str());
}

LoadedMatrix load_matrix(const std::filesystem::path& prefix) {
  LoadedMatrix out;
  const auto header = nlohmann::json::parse(read_text_file(prefix.string() + ".header.json"));
  out.params.n_particles = header.at("n_particles").get<int>();
  out.params.n_levels = header.at("n_levels").get<int>();
  out.params.interaction_strength = header.at("interaction_strength").get<double>();
  out.params.rng_seed = header.at("rng_seed").get<std::uint64_t>();
  out.params.sp_mode = sp_mode_from_string(header.at("sp_mode").get<std::string>());
  out.sp_energies = header.at("sp_energies").get<std::vector<double>>();
  const auto dim = header.at("dimension").get<std::uint64_t>();

  auto& h = out.hamiltonian;
  h.dimension = dim;
  h.diagonal.assign(dim, 0.0);

  const auto basis = FockBasis::enumerate(out.params.n_particles, out.params.n_levels);
  h.h0_diagonal.resize(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    const auto n = basis.state(k);
    double e0 = 0.0;
    for (int s = 0; s < basis.levels(); ++s) e0 += out.sp_energies[s] * n[s];
    h.h0_diagonal[k] = e0;
  }

  const std::string csv = read_text_file(prefix.string() + ".triplets.csv");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header row
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = line.find(',', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos) {
      throw ComputationError("malformed triplet line: " + line);
    }
    const auto row = static_cast<std::uint32_t>(std::stoul(line.substr(0, c1)));
    const auto col = static_cast<std::uint32_t>(std::stoul(line.substr(c1 + 1, c2 - c1 - 1)));
    const double value = std::strtod(line.c_str() + c2 + 1, nullptr);
    if (row == col) {
      h.diagonal[row] = value;
    } else {
      h.off_diagonal.push_back({row, col, value});
    }
  }
  return out;
}

}  // namespace tbri
