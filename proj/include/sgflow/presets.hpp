#pragma once

// Named initial data.

#include "sgflow/spectral_domain.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sgflow {

enum class Preset { first_mode, mixed, bump, positive_random };

/// Throws std::invalid_argument for an unknown name.
Preset parse_preset(const std::string& name);
std::string to_string(Preset preset);
const std::vector<std::string>& preset_names();

/// Unit L2 mass in every case.
///  first_mode       w_1
///  mixed            (w_1 + w_2) / sqrt(2)
///  bump             smooth bump exp(-1/(1-r^2)) off-center, analyzed on the grid
///  positive_random  FieldSampler::sample_positive with the given seed
Field make_initial(Preset preset, BasisPtr basis, std::uint64_t seed = 0);

/// True when every grid sample is strictly positive.
bool is_positive_on_grid(const Field& u);

}  // namespace sgflow
