#include "geoclust/instance.hpp"

#include <cmath>

#include "geoclust/rng.hpp"

namespace geoclust {

void InstanceSpec::validate() const {
    if (n < 1) throw InvalidInput("instance needs n >= 1");
    if (d < 1) throw InvalidInput("instance needs d >= 1");
    if (!(box_size > 0.0)) throw InvalidInput("box_size must be positive");
    if (components < 1) throw InvalidInput("gaussian mixture needs >= 1 component");
    if (spread < 0.0) throw InvalidInput("spread must be >= 0");
}

Generator parse_generator(const std::string& name) {
    if (name == "uniform_box") return Generator::uniform_box;
    if (name == "gaussian_mixture") return Generator::gaussian_mixture;
    if (name == "grid_plus_noise") return Generator::grid_plus_noise;
    throw InvalidInput("unknown generator: " + name);
}

std::string generator_name(Generator g) {
    switch (g) {
        case Generator::uniform_box: return "uniform_box";
        case Generator::gaussian_mixture: return "gaussian_mixture";
        case Generator::grid_plus_noise: return "grid_plus_noise";
    }
    return "?";
}

PointSet gen_instance(const InstanceSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    PointSet pts(spec.d);
    Point p(spec.d);
    switch (spec.generator) {
        case Generator::uniform_box: {
            for (std::size_t i = 0; i < spec.n; ++i) {
                for (std::size_t j = 0; j < spec.d; ++j) {
                    p[j] = rng.uniform(0.0, spec.box_size);
                }
                pts.push_back(p);
            }
            break;
        }
        case Generator::gaussian_mixture: {
            PointSet means(spec.d);
            for (std::size_t c = 0; c < spec.components; ++c) {
                for (std::size_t j = 0; j < spec.d; ++j) {
                    p[j] = rng.uniform(0.0, spec.box_size);
                }
                means.push_back(p);
            }
            for (std::size_t i = 0; i < spec.n; ++i) {
                PointView m = means[rng.below(spec.components)];
                for (std::size_t j = 0; j < spec.d; ++j) {
                    p[j] = m[j] + spec.spread * spec.box_size * rng.normal();
                }
                pts.push_back(p);
            }
            break;
        }
        case Generator::grid_plus_noise: {
            const auto side = static_cast<std::size_t>(
                std::ceil(std::pow(static_cast<double>(spec.n),
                                   1.0 / static_cast<double>(spec.d))));
            const double step =
                side > 1 ? spec.box_size / static_cast<double>(side - 1) : 0.0;
            std::vector<std::size_t> ix(spec.d, 0);
            for (std::size_t i = 0; i < spec.n; ++i) {
                for (std::size_t j = 0; j < spec.d; ++j) {
                    const double base =
                        side > 1 ? step * static_cast<double>(ix[j]) : 0.5 * spec.box_size;
                    p[j] = base + spec.spread * spec.box_size * (rng.uniform01() - 0.5);
                }
                pts.push_back(p);
                std::size_t j = 0;
                while (j < spec.d && ++ix[j] == side) {
                    ix[j] = 0;
                    ++j;
                }
            }
            break;
        }
    }
    return pts;
}

}  // namespace geoclust
