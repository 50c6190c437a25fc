#pragma once

// Key/value run reports. Text form keeps insertion order; machine form is
// one key=value per line with keys sorted, for golden files.

#include <cnc/decoder.hpp>
#include <cnc/encoder.hpp>
#include <cnc/network.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cnc {

enum class ReportFormat { text, machine };

class RunReport {
public:
    /// Replaces an existing key in place.
    void set(const std::string& key, std::string value);
    void set(const std::string& key, bool value) { set(key, std::string(value ? "true" : "false")); }
    void set(const std::string& key, std::size_t value) { set(key, std::to_string(value)); }
    void set(const std::string& key, const char* value) { set(key, std::string(value)); }

    std::optional<std::string> get(const std::string& key) const;
    const std::vector<std::pair<std::string, std::string>>& entries() const noexcept { return entries_; }

    std::string render(ReportFormat format) const;

private:
    std::vector<std::pair<std::string, std::string>> entries_;
};

/// 16 hex digits of FNV-1a over the shape and entries.
std::string digest(const FieldMatrix& m);

/// "e1 e3 e4", or "-" for an empty list.
std::string channel_list(const CncInstance& c, const std::vector<std::size_t>& channels);

void report_instance(RunReport& r, const CncInstance& c);
void report_feasibility(RunReport& r, const CncInstance& c, const FeasibilityReport& f);
/// Keys under "sink.<name>.": delay, necessary, rank_l, rank_l_minus_1, rank_diff, decodable.
void report_verdict(RunReport& r, const std::string& sink, const DecodabilityVerdict& v);

}  // namespace cnc
