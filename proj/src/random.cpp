#include <cnc/random.hpp>

#include <cnc/decoder.hpp>
#include <cnc/encoder.hpp>

#include <limits>
#include <string>
#include <vector>

namespace cnc {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) {
        throw Error("Rng::below(0)");
    }
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        const std::uint64_t v = engine_();
        if (v < limit) {
            return v % n;
        }
    }
}

bool Rng::chance(double p) {
    const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    return u < p;
}

namespace {

Polynomial random_polynomial(const Field& f, Rng& rng, std::size_t degree) {
    std::vector<Elem> c(degree + 1);
    for (Elem& e : c) {
        e = rng.element(f);
    }
    return Polynomial(f, std::move(c));
}

}  // namespace

CncInstance draw_instance(const RandomSpec& spec, Rng& rng) {
    const std::size_t k = spec.nodes;
    if (k < 2 || spec.omega == 0 || spec.sinks == 0 || spec.sinks >= k) {
        throw Error("random instance needs >= 2 nodes, omega >= 1 and 1 <= sinks < nodes");
    }
    if (spec.channels < spec.omega + k - 1) {
        throw Error("random instance needs at least omega + nodes - 1 = " + std::to_string(spec.omega + k - 1) +
                    " channels");
    }
    const Field& f = spec.field;

    std::vector<std::string> names{"S"};
    for (std::size_t v = 1; v < k; ++v) {
        names.push_back("N" + std::to_string(v));
    }
    std::vector<Channel> channels;
    std::vector<bool> has_in(k, false);
    auto add = [&](std::size_t tail, std::size_t head) {
        channels.push_back({"e" + std::to_string(channels.size() + 1), tail, head});
        has_in[head] = true;
    };
    for (std::size_t i = 0; i < spec.omega; ++i) {
        add(0, rng.between(1, k - 1));
    }
    for (std::size_t v = 1; v < k; ++v) {
        if (!has_in[v]) {
            add(rng.below(v), v);
        }
    }
    while (channels.size() < spec.channels) {
        if (k > 2 && rng.chance(spec.cycle_density)) {
            const std::size_t tail = rng.between(2, k - 1);
            add(tail, rng.between(1, tail - 1));
        } else {
            const std::size_t tail = rng.below(k - 1);
            add(tail, rng.between(tail + 1, k - 1));
        }
    }

    std::map<ChannelPair, RationalSeries> leks;
    for (std::size_t d = 0; d < channels.size(); ++d) {
        const bool backward = channels[d].head < channels[d].tail;
        for (std::size_t e = 0; e < channels.size(); ++e) {
            if (channels[d].head != channels[e].tail || rng.chance(spec.zero_kernel_probability)) {
                continue;
            }
            Polynomial num = random_polynomial(f, rng, rng.below(spec.max_degree + 1));
            if (backward && !rng.chance(spec.k0_cycle_probability)) {
                std::vector<Elem> c = num.coeffs();
                if (!c.empty()) {
                    c[0] = 0;
                }
                num = Polynomial(f, std::move(c));
            }
            Polynomial den = Polynomial::constant(f, 1);
            if (rng.chance(spec.rational_probability)) {
                den = den + random_polynomial(f, rng, rng.below(spec.max_degree)).shifted_up(1);
            }
            if (!num.is_zero()) {
                leks.emplace(ChannelPair{d, e}, RationalSeries(num, den));
            }
        }
    }

    std::vector<std::size_t> sinks;
    for (std::size_t v = k - spec.sinks; v < k; ++v) {
        sinks.push_back(v);
    }
    NetworkGraph g(std::move(names), std::move(channels), 0, spec.omega, std::move(sinks));
    return CncInstance(std::move(g), f, std::move(leks));
}

std::optional<RandomDraw> random_decodable_instance(const RandomSpec& spec, std::uint64_t seed,
                                                    std::size_t max_delay, std::size_t max_attempts) {
    Rng rng(seed);
    for (std::size_t attempt = 1; attempt <= max_attempts; ++attempt) {
        CncInstance c = draw_instance(spec, rng);
        if (!classify(c).practically_feasible) {
            continue;
        }
        const GekMatrix full = derive_geks(c, max_delay);
        bool ok = true;
        for (std::size_t s : c.graph().sinks()) {
            const GekMatrix at = gek_at_sink(full, c, s);
            if (at.width() == 0 || !minimal_delay(at, max_delay)) {
                ok = false;
                break;
            }
        }
        if (ok) {
            return RandomDraw{std::move(c), attempt};
        }
    }
    return std::nullopt;
}

}  // namespace cnc
