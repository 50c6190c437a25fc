#include <cnc/report.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>

namespace cnc {

void RunReport::set(const std::string& key, std::string value) {
    const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
    if (it != entries_.end()) {
        it->second = std::move(value);
    } else {
        entries_.emplace_back(key, std::move(value));
    }
}

std::optional<std::string> RunReport::get(const std::string& key) const {
    const auto it = std::find_if(entries_.begin(), entries_.end(), [&](const auto& e) { return e.first == key; });
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::string RunReport::render(ReportFormat format) const {
    std::string out;
    if (format == ReportFormat::machine) {
        auto sorted = entries_;
        std::sort(sorted.begin(), sorted.end());
        for (const auto& [k, v] : sorted) {
            out += k + '=' + v + '\n';
        }
        return out;
    }
    std::size_t width = 0;
    for (const auto& e : entries_) {
        width = std::max(width, e.first.size());
    }
    for (const auto& [k, v] : entries_) {
        out += k + std::string(width - k.size(), ' ') + "  " + v + '\n';
    }
    return out;
}

std::string digest(const FieldMatrix& m) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&](std::uint64_t v) {
        for (int i = 0; i < 8; ++i) {
            h ^= (v >> (8 * i)) & 0xFF;
            h *= 0x100000001b3ULL;
        }
    };
    mix(m.rows());
    mix(m.cols());
    for (Elem e : m.entries()) {
        mix(e);
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string channel_list(const CncInstance& c, const std::vector<std::size_t>& channels) {
    if (channels.empty()) {
        return "-";
    }
    std::string out;
    for (std::size_t e : channels) {
        if (!out.empty()) {
            out += ' ';
        }
        out += c.graph().channels()[e].id;
    }
    return out;
}

void report_instance(RunReport& r, const CncInstance& c) {
    r.set("instance.field", c.field().name());
    r.set("instance.omega", c.omega());
    r.set("instance.nodes", c.graph().nodes().size());
    r.set("instance.channels", c.channel_count());
    r.set("instance.leks", c.leks().size());
}

void report_feasibility(RunReport& r, const CncInstance& c, const FeasibilityReport& f) {
    r.set("classify.et_k0_acyclic", f.et_k0_acyclic);
    r.set("classify.k0_nilpotent", f.k0_nilpotent);
    r.set("classify.nilpotency_index", f.nilpotency_index ? std::to_string(*f.nilpotency_index) : std::string("none"));
    r.set("classify.i_minus_k0_invertible", f.i_minus_k0_invertible);
    r.set("classify.normal", f.normal);
    r.set("classify.practically_feasible", f.practically_feasible);
    r.set("classify.et_kz_acyclic", f.et_kz_acyclic);
    r.set("classify.realizability", f.realizability());
    const AcyclicityResult k0 = acyclicity(encoding_topology(c, TopologyMode::wrt_k0));
    if (k0.order) {
        r.set("classify.encoding_order", channel_list(c, *k0.order));
    }
    if (k0.cycle) {
        r.set("classify.k0_cycle", channel_list(c, *k0.cycle));
    }
    const AcyclicityResult kz = acyclicity(encoding_topology(c, TopologyMode::wrt_kz));
    if (kz.cycle) {
        r.set("classify.kz_cycle", channel_list(c, *kz.cycle));
    }
}

void report_verdict(RunReport& r, const std::string& sink, const DecodabilityVerdict& v) {
    const std::string p = "sink." + sink + ".";
    r.set(p + "delay", v.delay);
    r.set(p + "necessary", v.necessary_ok);
    r.set(p + "rank_l", v.rank_l);
    r.set(p + "rank_l_minus_1", v.rank_l_minus_1);
    r.set(p + "rank_diff", v.rank_l - v.rank_l_minus_1);
    r.set(p + "decodable", v.decodable);
}

}  // namespace cnc
