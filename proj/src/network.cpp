#include <cnc/network.hpp>

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace cnc {

NetworkGraph::NetworkGraph(std::vector<std::string> nodes, std::vector<Channel> channels, std::size_t source,
                           std::size_t omega, std::vector<std::size_t> sinks)
    : nodes_(std::move(nodes)),
      channels_(std::move(channels)),
      source_(source),
      omega_(omega),
      sinks_(std::move(sinks)),
      in_(nodes_.size()),
      out_(nodes_.size()) {
    if (omega_ < 1) {
        throw Error("source rate omega must be at least 1");
    }
    if (source_ >= nodes_.size()) {
        throw LookupError("source node index out of range");
    }
    std::set<std::string> names;
    for (const std::string& n : nodes_) {
        if (!names.insert(n).second) {
            throw Error("duplicate node '" + n + "'");
        }
    }
    std::set<std::string> ids;
    for (std::size_t i = 0; i < channels_.size(); ++i) {
        const Channel& ch = channels_[i];
        if (!ids.insert(ch.id).second) {
            throw Error("duplicate channel id '" + ch.id + "'");
        }
        if (ch.tail >= nodes_.size() || ch.head >= nodes_.size()) {
            throw LookupError("channel '" + ch.id + "' references an unknown node");
        }
        if (ch.tail == ch.head) {
            throw Error("channel '" + ch.id + "' is a self-loop");
        }
        out_[ch.tail].push_back(i);
        in_[ch.head].push_back(i);
    }
    if (out_[source_].empty()) {
        throw Error("source '" + nodes_[source_] + "' has no outgoing channel");
    }
    for (std::size_t s : sinks_) {
        if (s >= nodes_.size()) {
            throw LookupError("sink node index out of range");
        }
    }
}

std::optional<std::size_t> NetworkGraph::find_node(const std::string& name) const {
    const auto it = std::find(nodes_.begin(), nodes_.end(), name);
    if (it == nodes_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::optional<std::size_t> NetworkGraph::find_channel(const std::string& id) const {
    const auto it = std::find_if(channels_.begin(), channels_.end(), [&](const Channel& c) { return c.id == id; });
    if (it == channels_.end()) {
        return std::nullopt;
    }
    return static_cast<std::size_t>(it - channels_.begin());
}

std::size_t NetworkGraph::sink(const std::string& name) const {
    const auto node = find_node(name);
    if (!node || std::find(sinks_.begin(), sinks_.end(), *node) == sinks_.end()) {
        throw LookupError("unknown sink '" + name + "'");
    }
    return *node;
}

bool NetworkGraph::adjacent(std::size_t d, std::size_t e) const {
    return channels_.at(d).head == channels_.at(e).tail;
}

// ---------------------------------------------------------------------------

FieldMatrix default_injection(const Field& field, std::size_t omega, std::size_t n) {
    if (omega > n) {
        throw DimensionError("default injection [I_omega 0] needs at least omega channels");
    }
    FieldMatrix hs(field, omega, n);
    for (std::size_t i = 0; i < omega; ++i) {
        hs(i, i) = 1;
    }
    return hs;
}

CncInstance::CncInstance(NetworkGraph graph, Field field, std::map<ChannelPair, RationalSeries> leks,
                         std::optional<FieldMatrix> hs)
    : graph_(std::move(graph)),
      field_(std::move(field)),
      leks_(std::move(leks)),
      hs_(hs ? std::move(*hs) : default_injection(field_, graph_.omega(), graph_.channel_count())) {
    const auto& chans = graph_.channels();
    for (auto it = leks_.begin(); it != leks_.end();) {
        const auto [d, e] = it->first;
        if (d >= chans.size() || e >= chans.size()) {
            throw LookupError("local kernel references an unknown channel");
        }
        if (!graph_.adjacent(d, e)) {
            throw Error("(" + chans[d].id + ", " + chans[e].id + ") is not an adjacent pair");
        }
        if (!(it->second.field() == field_)) {
            throw FieldError("local kernel for (" + chans[d].id + ", " + chans[e].id + ") is over " +
                             it->second.field().name() + ", instance is over " + field_.name());
        }
        // Zero kernels are equivalent to absent ones.
        it = it->second.is_zero() ? leks_.erase(it) : std::next(it);
    }
    if (!(hs_.field() == field_) || hs_.rows() != graph_.omega() || hs_.cols() != graph_.channel_count()) {
        throw DimensionError("H_s must be an omega x n matrix over the instance field");
    }
    if (rank(hs_) != graph_.omega()) {
        throw Error("H_s has rank " + std::to_string(rank(hs_)) + " < omega = " + std::to_string(graph_.omega()));
    }
}

RationalSeries CncInstance::lek(std::size_t d, std::size_t e) const {
    const auto it = leks_.find({d, e});
    return it == leks_.end() ? RationalSeries::zero(field_) : it->second;
}

MatrixSeries lek_matrix(const CncInstance& c, std::size_t horizon) {
    const std::size_t n = c.channel_count();
    MatrixSeries k(c.field(), n, n, horizon);
    for (const auto& [pair, kernel] : c.leks()) {
        const std::vector<Elem> coeffs = kernel.expand(horizon);
        for (std::size_t t = 0; t <= horizon; ++t) {
            k.coeff(t)(pair.first, pair.second) = coeffs[t];
        }
    }
    return k;
}

FieldMatrix lek_constant(const CncInstance& c) {
    const std::size_t n = c.channel_count();
    FieldMatrix k0(c.field(), n, n);
    for (const auto& [pair, kernel] : c.leks()) {
        k0(pair.first, pair.second) = kernel.constant_term();
    }
    return k0;
}

EncodingTopology encoding_topology(const CncInstance& c, TopologyMode mode) {
    EncodingTopology t;
    t.vertex_count = c.channel_count();
    t.mode = mode;
    // std::map iteration is already (d, e) lexicographic.
    for (const auto& [pair, kernel] : c.leks()) {
        const bool arc = mode == TopologyMode::wrt_k0 ? kernel.constant_term() != 0 : !kernel.is_zero();
        if (arc) {
            t.arcs.push_back(pair);
        }
    }
    return t;
}

AcyclicityResult acyclicity(const EncodingTopology& t) {
    const std::size_t n = t.vertex_count;
    std::vector<std::vector<std::size_t>> succ(n);
    std::vector<std::vector<std::size_t>> pred(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& [d, e] : t.arcs) {
        succ.at(d).push_back(e);
        pred.at(e).push_back(d);
        ++indegree[e];
    }

    // Kahn's algorithm; the min-heap makes the order deterministic.
    std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
    for (std::size_t v = 0; v < n; ++v) {
        if (indegree[v] == 0) {
            ready.push(v);
        }
    }
    std::vector<std::size_t> order;
    order.reserve(n);
    while (!ready.empty()) {
        const std::size_t v = ready.top();
        ready.pop();
        order.push_back(v);
        for (std::size_t w : succ[v]) {
            if (--indegree[w] == 0) {
                ready.push(w);
            }
        }
    }
    if (order.size() == n) {
        return {true, std::move(order), std::nullopt};
    }

    // Every unordered vertex keeps an unordered predecessor; walking backwards
    // must revisit a vertex, and the revisited stretch is a cycle.
    std::vector<bool> placed(n, false);
    for (std::size_t v : order) {
        placed[v] = true;
    }
    std::size_t v = static_cast<std::size_t>(std::find(placed.begin(), placed.end(), false) - placed.begin());
    std::vector<std::size_t> walk;
    std::vector<std::size_t> seen_at(n, n);
    while (seen_at[v] == n) {
        seen_at[v] = walk.size();
        walk.push_back(v);
        std::size_t next = n;
        for (std::size_t p : pred[v]) {
            if (!placed[p] && p < next) {
                next = p;
            }
        }
        v = next;
    }
    std::vector<std::size_t> cycle(walk.begin() + static_cast<std::ptrdiff_t>(seen_at[v]), walk.end());
    std::reverse(cycle.begin(), cycle.end());
    return {false, std::nullopt, std::move(cycle)};
}

}  // namespace cnc
