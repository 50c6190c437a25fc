#pragma once

#include <cnc/field.hpp>
#include <cnc/series.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cnc {

struct Channel {
    std::string id;
    std::size_t tail = 0;
    std::size_t head = 0;

    friend bool operator==(const Channel&, const Channel&) = default;
};

/// Directed multigraph with a single source. Cycles and parallel channels are
/// allowed, self-loops are not. The channel list order is the global channel
/// index used by every matrix.
class NetworkGraph {
public:
    NetworkGraph(std::vector<std::string> nodes, std::vector<Channel> channels, std::size_t source,
                 std::size_t omega, std::vector<std::size_t> sinks);

    const std::vector<std::string>& nodes() const noexcept { return nodes_; }
    const std::vector<Channel>& channels() const noexcept { return channels_; }
    std::size_t channel_count() const noexcept { return channels_.size(); }
    std::size_t source() const noexcept { return source_; }
    std::size_t omega() const noexcept { return omega_; }
    const std::vector<std::size_t>& sinks() const noexcept { return sinks_; }

    /// Incoming / outgoing channel indices of a node, ascending.
    const std::vector<std::size_t>& in(std::size_t node) const { return in_.at(node); }
    const std::vector<std::size_t>& out(std::size_t node) const { return out_.at(node); }

    std::optional<std::size_t> find_node(const std::string& name) const;
    std::optional<std::size_t> find_channel(const std::string& id) const;
    /// Throws LookupError for an undeclared sink name.
    std::size_t sink(const std::string& name) const;

    /// (d, e) is adjacent when head(d) = tail(e).
    bool adjacent(std::size_t d, std::size_t e) const;

    friend bool operator==(const NetworkGraph& a, const NetworkGraph& b) noexcept {
        return a.nodes_ == b.nodes_ && a.channels_ == b.channels_ && a.source_ == b.source_ &&
               a.omega_ == b.omega_ && a.sinks_ == b.sinks_;
    }

private:
    std::vector<std::string> nodes_;
    std::vector<Channel> channels_;
    std::size_t source_;
    std::size_t omega_;
    std::vector<std::size_t> sinks_;
    std::vector<std::vector<std::size_t>> in_;
    std::vector<std::vector<std::size_t>> out_;
};

using ChannelPair = std::pair<std::size_t, std::size_t>;

/// A network, its local encoding kernels k_{d,e}(z) and the constant ω×n
/// source injection matrix H_s.
class CncInstance {
public:
    /// H_s defaults to [I_ω 0]. Throws when a kernel key is not an adjacent
    /// pair, a kernel lives in another field, or rank(H_s) < ω.
    CncInstance(NetworkGraph graph, Field field, std::map<ChannelPair, RationalSeries> leks,
                std::optional<FieldMatrix> hs = std::nullopt);

    const NetworkGraph& graph() const noexcept { return graph_; }
    const Field& field() const noexcept { return field_; }
    const std::map<ChannelPair, RationalSeries>& leks() const noexcept { return leks_; }
    const FieldMatrix& hs() const noexcept { return hs_; }
    std::size_t omega() const noexcept { return graph_.omega(); }
    std::size_t channel_count() const noexcept { return graph_.channel_count(); }

    /// k_{d,e}(z), zero for pairs without a kernel.
    RationalSeries lek(std::size_t d, std::size_t e) const;

    friend bool operator==(const CncInstance& a, const CncInstance& b) noexcept {
        return a.graph_ == b.graph_ && a.field_ == b.field_ && a.leks_ == b.leks_ && a.hs_ == b.hs_;
    }

private:
    NetworkGraph graph_;
    Field field_;
    std::map<ChannelPair, RationalSeries> leks_;
    FieldMatrix hs_;
};

/// [I_ω 0] with n columns.
FieldMatrix default_injection(const Field& field, std::size_t omega, std::size_t n);

/// n×n K(z) truncated at z^T.
MatrixSeries lek_matrix(const CncInstance& c, std::size_t horizon);
/// Constant coefficient K_0.
FieldMatrix lek_constant(const CncInstance& c);

enum class TopologyMode { wrt_k0, wrt_kz };

/// Digraph on channels with an arc d -> e when k_{d,e,0} != 0 (wrt_k0) or
/// k_{d,e}(z) != 0 (wrt_kz).
struct EncodingTopology {
    std::size_t vertex_count = 0;
    std::vector<ChannelPair> arcs;
    TopologyMode mode = TopologyMode::wrt_k0;
};

EncodingTopology encoding_topology(const CncInstance& c, TopologyMode mode);

struct AcyclicityResult {
    bool acyclic = false;
    /// Topological channel order (smallest index first among ready channels).
    std::optional<std::vector<std::size_t>> order;
    /// Channels of one directed cycle, in arc order.
    std::optional<std::vector<std::size_t>> cycle;
};

AcyclicityResult acyclicity(const EncodingTopology& t);

}  // namespace cnc
