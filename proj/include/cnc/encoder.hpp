#pragma once

#include <cnc/network.hpp>
#include <cnc/series.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace cnc {

/// How far the local kernels go towards a usable code. The flags obey
///   practically_feasible == et_k0_acyclic,
///   et_k0_acyclic  => k0_nilpotent  => i_minus_k0_invertible == normal.
struct FeasibilityReport {
    bool et_k0_acyclic = false;
    bool k0_nilpotent = false;
    std::optional<std::size_t> nilpotency_index;
    bool i_minus_k0_invertible = false;
    bool normal = false;
    bool practically_feasible = false;
    /// Diagnostic only: acyclicity of the topology w.r.t. the full K(z).
    bool et_kz_acyclic = false;

    /// One of "practically-feasible", "normal-unrealizable" (nilpotent K_0 but
    /// cyclic ET(K_0): algebraically normal, physical realizability not
    /// guaranteed), "normal-non-nilpotent", "not-normal".
    std::string realizability() const;
};

FeasibilityReport classify(const CncInstance& c);

/// Truncated GEK matrix F(z) = sum_t F_t z^t. `columns` names the channel
/// index behind every column (all channels for a full derivation).
struct GekMatrix {
    std::vector<FieldMatrix> coefficients;
    std::vector<std::size_t> columns;

    std::size_t horizon() const noexcept { return coefficients.size() - 1; }
    std::size_t omega() const noexcept { return coefficients.front().rows(); }
    std::size_t width() const noexcept { return coefficients.front().cols(); }
    const Field& field() const noexcept { return coefficients.front().field(); }
    const FieldMatrix& coeff(std::size_t t) const { return coefficients.at(t); }
    MatrixSeries as_series() const { return MatrixSeries(coefficients); }

    friend bool operator==(const GekMatrix&, const GekMatrix&) = default;
};

/// F_0 = H_s (I - K_0)^-1 and F_t = (sum_{tau<t} F_tau K_{t-tau}) (I - K_0)^-1
/// for t = 1..T. Throws NotNormalError when I - K_0 is singular.
GekMatrix derive_geks(const CncInstance& c, std::size_t horizon);

/// Columns In(r) of a full GEK matrix, in channel index order. Throws
/// LookupError for an unknown sink or one without incoming channels.
GekMatrix gek_at_sink(const GekMatrix& full, const CncInstance& c, const std::string& sink);
GekMatrix gek_at_sink(const GekMatrix& full, const CncInstance& c, std::size_t sink_node);

/// Exact F(z) = H_s (I - K(z))^-1 over the rational power series, restricted
/// to `columns`. Throws NotNormalError when I - K_0 is singular.
RationalMatrix rational_geks(const CncInstance& c, const std::vector<std::size_t>& columns);

}  // namespace cnc
