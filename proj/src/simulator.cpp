#include <cnc/simulator.hpp>

#include <utility>
#include <vector>

namespace cnc {

SymbolStream simulate(const CncInstance& c, const FieldMatrix& source, std::size_t horizon,
                      const ReadObserver& observer) {
    const AcyclicityResult schedule = acyclicity(encoding_topology(c, TopologyMode::wrt_k0));
    if (!schedule.acyclic) {
        throw InfeasibleError("the encoding topology w.r.t. K_0 has a cycle: no causal per-slot schedule exists");
    }
    if (!(source.field() == c.field()) || source.cols() != c.omega() || source.rows() < horizon + 1) {
        throw DimensionError("source stream must hold " + std::to_string(horizon + 1) + " vectors of " +
                             std::to_string(c.omega()) + " symbols over " + c.field().name());
    }

    const Field& f = c.field();
    const std::size_t n = c.channel_count();

    // Expanded kernel taps per (d, e), indexed by the outgoing channel e.
    std::vector<std::vector<std::pair<std::size_t, std::vector<Elem>>>> taps(n);
    for (const auto& [pair, kernel] : c.leks()) {
        taps[pair.second].emplace_back(pair.first, kernel.expand(horizon));
    }

    SymbolStream s{source.block(0, 0, horizon + 1, c.omega()), FieldMatrix(f, horizon + 1, n)};
    for (std::size_t t = 0; t <= horizon; ++t) {
        for (std::size_t e : *schedule.order) {
            Elem v = 0;
            for (std::size_t i = 0; i < c.omega(); ++i) {
                v = f.add(v, f.mul(c.hs()(i, e), s.source(t, i)));
            }
            for (const auto& [d, k] : taps[e]) {
                for (std::size_t tau = 0; tau <= t; ++tau) {
                    if (k[tau] == 0) {
                        continue;
                    }
                    if (observer) {
                        observer({t, e, t - tau, d});
                    }
                    v = f.add(v, f.mul(k[tau], s.channels(t - tau, d)));
                }
            }
            s.channels(t, e) = v;
        }
    }
    return s;
}

FieldMatrix received_at(const SymbolStream& s, const CncInstance& c, const std::string& sink) {
    const std::size_t node = c.graph().sink(sink);
    return s.channels.select_columns(c.graph().in(node));
}

}  // namespace cnc
