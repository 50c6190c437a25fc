#pragma once

#include <cnc/network.hpp>

#include <cstddef>
#include <functional>
#include <string>

namespace cnc {

/// Symbols carried on every channel at slots 0..T, and the source messages
/// that produced them. Row t of `source` is x_t; entry (t, e) of `channels` is y_{e,t}.
struct SymbolStream {
    FieldMatrix source;
    FieldMatrix channels;

    std::size_t horizon() const noexcept { return channels.rows() - 1; }
    Elem symbol(std::size_t channel, std::size_t slot) const { return channels.at(slot, channel); }
};

/// One read of a channel value while computing y_{channel,slot}.
struct StreamRead {
    std::size_t slot;
    std::size_t channel;
    std::size_t read_slot;
    std::size_t read_channel;
};
using ReadObserver = std::function<void(const StreamRead&)>;

/// Slot-major, encoding-order-minor propagation:
///   y_{e,t} = (H_s column e)·x_t + sum_{d in In(tail e)} sum_{tau<=t} k_{d,e,tau} y_{d,t-tau}.
/// Channels inside a slot follow the topological order of ET w.r.t. K_0, so
/// every value read is already computed. `source` needs at least T+1 rows of
/// ω symbols. Throws InfeasibleError when ET w.r.t. K_0 has a cycle.
SymbolStream simulate(const CncInstance& c, const FieldMatrix& source, std::size_t horizon,
                      const ReadObserver& observer = {});

/// (T+1) × |In(r)| matrix of received vectors y_t, columns in channel order.
FieldMatrix received_at(const SymbolStream& s, const CncInstance& c, const std::string& sink);

}  // namespace cnc
