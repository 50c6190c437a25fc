#pragma once

// Seeded random CNC instances. Every draw goes through Rng so that a seed
// yields the same document on every platform.

#include <cnc/network.hpp>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>

namespace cnc {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, n); n > 0. Rejection sampling, no library distributions.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    /// True with probability `p`, using 53 random bits.
    bool chance(double p);
    Elem element(const Field& f) { return static_cast<Elem>(below(f.order())); }
    Elem nonzero(const Field& f) { return static_cast<Elem>(1 + below(f.order() - 1)); }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

struct RandomSpec {
    Field field = Field::gf2();
    std::size_t nodes = 5;      // including the source
    std::size_t channels = 8;   // at least omega + nodes - 1
    std::size_t omega = 2;
    std::size_t sinks = 1;      // the last `sinks` nodes
    /// Probability that a free channel runs backwards in node order.
    double cycle_density = 0.3;
    /// Probability that a kernel leaving a backward channel keeps a nonzero
    /// constant term (the only way ET w.r.t. K_0 can close a cycle).
    double k0_cycle_probability = 0.0;
    double zero_kernel_probability = 0.25;
    double rational_probability = 0.25;
    std::size_t max_degree = 2;
};

/// Node 0 is the source S, the others are N1..N{k-1}. Channels 0..omega-1
/// leave S, every other node gets at least one incoming channel from an
/// earlier node, and the rest are drawn forward or (with cycle_density)
/// backward. Throws Error for an unusable spec.
CncInstance draw_instance(const RandomSpec& spec, Rng& rng);

struct RandomDraw {
    CncInstance instance;
    std::size_t attempts;
};

/// Draws until an instance is practically feasible and every sink is
/// decodable within max_delay; probes the rank(F_0..F_L) condition before the
/// Toeplitz rank difference. nullopt after max_attempts failures.
std::optional<RandomDraw> random_decodable_instance(const RandomSpec& spec, std::uint64_t seed,
                                                    std::size_t max_delay, std::size_t max_attempts = 1000);

}  // namespace cnc
