#pragma once

#include <cstdint>
#include <string>

#include "geoclust/geometry.hpp"

namespace geoclust {

enum class Generator { uniform_box, gaussian_mixture, grid_plus_noise };

struct InstanceSpec {
    Generator generator = Generator::uniform_box;
    std::size_t n = 0;
    std::size_t d = 0;
    double box_size = 1.0;       // uniform_box / grid extent per axis
    std::size_t components = 3;  // gaussian_mixture
    double spread = 0.05;        // mixture stddev / grid noise amplitude
    std::uint64_t seed = 0;

    void validate() const;
};

Generator parse_generator(const std::string& name);
std::string generator_name(Generator g);

/// Deterministic point set for the spec; same seed, same bytes.
PointSet gen_instance(const InstanceSpec& spec);

}  // namespace geoclust
