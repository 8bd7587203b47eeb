#include "fitstar/sampling.hpp"

#include <cmath>
#include <random>

namespace fitstar {

State sample_uniform(const Bounds& bounds, Rng& rng) {
    const std::size_t n = bounds.dimension();
    State x(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::uniform_real_distribution<double> dist(bounds.lower[i], bounds.upper[i]);
        x[i] = dist(rng);
    }
    return x;
}

State sample_unit_ball(std::size_t n, Rng& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    State x(n);
    double norm = 0.0;
    do {
        norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = gauss(rng);
            norm += x[i] * x[i];
        }
        norm = std::sqrt(norm);
    } while (norm <= 0.0);
    const double radius = std::pow(unif(rng), 1.0 / static_cast<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        x[i] *= radius / norm;
    }
    return x;
}

State sample_informed(const ProlateHyperspheroid& phs, const Bounds& bounds, Rng& rng,
                      int max_attempts) {
    const std::size_t n = phs.dimension();
    const double a = phs.semi_major();
    const double b = phs.semi_minor();
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        State ball = sample_unit_ball(n, rng);
        ball[0] *= a;
        for (std::size_t i = 1; i < n; ++i) ball[i] *= b;
        State x = phs.to_world_frame(ball);
        if (bounds.contains(x)) return x;
    }
    throw SamplingStarvedError(
        "informed sampler exhausted its rejection budget; the informed set barely "
        "intersects the bounds");
}

}  // namespace fitstar
