#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace syzygy {

// ---- error types -----------------------------------------------------------

/// Pointwise input has coincident (or effectively coincident) bodies.
struct CollisionInput : std::runtime_error {
    explicit CollisionInput(const std::string& what) : std::runtime_error(what) {}
};

/// A pairwise distance dropped below the configured collision threshold.
struct CollisionApproach : std::runtime_error {
    explicit CollisionApproach(const std::string& what) : std::runtime_error(what) {}
};

/// An operation that needs H < 0 was handed a non-negative energy.
struct NotNegativeEnergy : std::runtime_error {
    explicit NotNegativeEnergy(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfRange : std::runtime_error {
    explicit OutOfRange(const std::string& what) : std::runtime_error(what) {}
};

struct NoSignChange : std::runtime_error {
    explicit NoSignChange(const std::string& what) : std::runtime_error(what) {}
};

struct NotASyzygy : std::runtime_error {
    explicit NotASyzygy(const std::string& what) : std::runtime_error(what) {}
};

struct NotPeriodic : std::runtime_error {
    explicit NotPeriodic(const std::string& what) : std::runtime_error(what) {}
};

struct HypothesisNotMet : std::runtime_error {
    explicit HypothesisNotMet(const std::string& what) : std::runtime_error(what) {}
};

struct SamplerExhausted : std::runtime_error {
    explicit SamplerExhausted(const std::string& what) : std::runtime_error(what) {}
};

struct WindowInvalid : std::runtime_error {
    explicit WindowInvalid(const std::string& what) : std::runtime_error(what) {}
};

/// The integrator could not finish for a reason that is not a modelled
/// termination (step underflow far from collision, step budget exhausted).
struct IntegrationFailure : std::runtime_error {
    explicit IntegrationFailure(const std::string& what) : std::runtime_error(what) {}
};

// ---- deterministic random numbers ------------------------------------------

/// mt19937_64 with explicit uniform mappings. std::*_distribution is
/// implementation-defined; mapping the raw 64-bit stream ourselves keeps
/// every sampled value bit-identical across platforms and worker counts.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return gen_() % n; }

    std::uint64_t raw() { return gen_(); }

    /// Stream derivation for parallel batches: (seed, index) -> child seed.
    /// SplitMix64 finalizer, so neighbouring indices decorrelate fully.
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace syzygy
