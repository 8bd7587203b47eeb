#include "fitstar/state.hpp"

#include <cmath>

namespace fitstar {

double distance(const State& a, const State& b) {
    if (a.size() != b.size() || a.empty()) {
        throw ContractViolation("distance: dimension mismatch");
    }
    double sq = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        sq += d * d;
    }
    return std::sqrt(sq);
}

State interpolate(const State& a, const State& b, double t) {
    if (a.size() != b.size()) {
        throw ContractViolation("interpolate: dimension mismatch");
    }
    State out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
    return out;
}

bool all_finite(const State& x) {
    for (double v : x) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

void require_state(const State& x, const char* what) {
    if (x.empty()) {
        throw ContractViolation(std::string(what) + " state is empty");
    }
    if (!all_finite(x)) {
        throw ContractViolation(std::string(what) + " state has non-finite coordinates");
    }
}

}  // namespace fitstar
