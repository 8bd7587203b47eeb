#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace fitstar {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Base type for all errors thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition or an internal invariant failed.
struct ContractViolation : Error {
    using Error::Error;
};

/// User-supplied configuration is invalid (bad flag value, unknown name, ...).
struct ConfigError : Error {
    using Error::Error;
};

/// Solution cost below the theoretical minimum between the foci.
struct InfeasibleCostError : Error {
    using Error::Error;
};

/// Start and goal coincide; the informed set has no orientation.
struct DegenerateFociError : Error {
    using Error::Error;
};

/// Rejection sampling exhausted its attempt budget.
struct SamplingStarvedError : Error {
    using Error::Error;
};

/// A benchmark scenario cannot be generated with the given parameters.
struct ScenarioError : Error {
    using Error::Error;
};

/// Random stream used throughout. Single-owner; never shared across threads.
using Rng = std::mt19937_64;

/// FNV-1a over a byte string. Stable across platforms and runs.
constexpr std::uint64_t fnv1a(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

/// splitmix64 finalizer; decorrelates structured inputs.
constexpr std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

/// Deterministic per-trial seed from (master seed, planner id, scenario id, trial index).
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view planner,
                                 std::string_view scenario, std::uint64_t trial) {
    std::uint64_t h = mix64(master);
    h = mix64(h ^ fnv1a(planner));
    h = mix64(h ^ fnv1a(scenario));
    h = mix64(h ^ trial);
    return h;
}

}  // namespace fitstar
