#include "tbri/model.hpp"

#include <algorithm>

#include "tbri/errors.hpp"
#include "tbri/rng.hpp"

namespace tbri {

std::string to_string(SpMode mode) {
  return mode == SpMode::UniformRandom ? "uniform-random" : "picket-fence";
}

SpMode sp_mode_from_string(const std::string& s) {
  if (s == "uniform-random" || s == "uniform") return SpMode::UniformRandom;
  if (s == "picket-fence" || s == "picket") return SpMode::PicketFence;
  throw ValidationError("unknown sp_mode '" + s +
                        "' (expected uniform-random or picket-fence)");
}

void TbriParams::validate() const {
  if (n_particles < 1) throw ValidationError("n_particles must be >= 1");
  if (n_levels < 2) throw ValidationError("n_levels must be >= 2");
  if (n_particles > 255) throw ValidationError("n_particles must be <= 255");
  if (!(interaction_strength >= 0.0)) {
    throw ValidationError("interaction_strength must be >= 0");
  }
}

TbriModel draw_disorder(const TbriParams& params) {
  params.validate();
  TbriModel model;
  model.params = params;
  const int m = params.n_levels;

  rng::Xoshiro256 sp_stream(rng::derive_stream(params.rng_seed, 1));
  model.sp_energies.resize(m);
  if (params.sp_mode == SpMode::PicketFence) {
    for (int s = 0; s < m; ++s) model.sp_energies[s] = static_cast<double>(s);
  } else {
    for (int s = 0; s < m; ++s) model.sp_energies[s] = sp_stream.uniform(0.0, m);
    std::sort(model.sp_energies.begin(), model.sp_energies.end());
  }

  rng::Xoshiro256 tb_stream(rng::derive_stream(params.rng_seed, 2));
  const int np = model.n_pairs();
  model.two_body.assign(static_cast<std::size_t>(np) * np, 0.0);
  const double v = params.interaction_strength;
  for (int p = 0; p < np; ++p) {
    for (int q = p; q < np; ++q) {
      const double value = v * tb_stream.gaussian();
      model.two_body[static_cast<std::size_t>(p) * np + q] = value;
      model.two_body[static_cast<std::size_t>(q) * np + p] = value;
    }
  }
  return model;
}

TbriModel TbriModel::interaction_only() const {
  TbriModel ref = *this;
  std::fill(ref.sp_energies.begin(), ref.sp_energies.end(), 0.0);
  return ref;
}

}  // namespace tbri
