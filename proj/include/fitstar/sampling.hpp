#pragma once

#include "fitstar/geometry.hpp"
#include "fitstar/phs.hpp"

namespace fitstar {

/// One state with every coordinate i.i.d. uniform inside the bounds.
State sample_uniform(const Bounds& bounds, Rng& rng);

/// Uniform sample from the unit n-ball (Gaussian direction, radius U^(1/n)).
State sample_unit_ball(std::size_t n, Rng& rng);

/// Uniform sample from the intersection of the informed set with the bounds.
/// Rejection-samples against the bounds; throws SamplingStarvedError after
/// max_attempts rejections.
State sample_informed(const ProlateHyperspheroid& phs, const Bounds& bounds, Rng& rng,
                      int max_attempts = 10000);

}  // namespace fitstar
