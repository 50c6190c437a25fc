#pragma once

// Decodability with delay L at a sink, judged from the first L+1 GEK
// coefficients only, and field-based sequential decoding.

#include <cnc/encoder.hpp>
#include <cnc/series.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cnc {

struct DecodabilityVerdict {
    std::size_t delay = 0;
    /// rank(F_0 F_1 ... F_L) == ω; necessary, not sufficient.
    bool necessary_ok = false;
    /// rank(F̄_L) - rank(F̄_{L-1}) == ω.
    bool decodable = false;
    std::size_t rank_l = 0;
    /// rank(F̄_{-1}) is 0.
    std::size_t rank_l_minus_1 = 0;
};

/// rank of the horizontal concatenation (F_0 ... F_L) equals ω.
bool check_necessary(const GekMatrix& f, std::size_t delay);

/// Reads blocks F_0..F_L only.
DecodabilityVerdict check_decodable(const GekMatrix& f, std::size_t delay);

/// Smallest L <= max_delay at which the code is decodable. Scans the cheap
/// necessary condition first, then the rank difference from the first delay
/// where it holds. Throws HorizonError if F has fewer than max_delay+1 blocks.
std::optional<std::size_t> minimal_delay(const GekMatrix& f, std::size_t max_delay);

/// rank(F̄_0), rank(F̄_1), ... computed by extending one elimination. F̄_L
/// contains F̄_{L-1} as its lower-right corner, so only the ω new top rows
/// have to be reduced at every step.
class ToeplitzRankTracker {
public:
    explicit ToeplitzRankTracker(std::vector<FieldMatrix> blocks);

    /// Number of delays processed so far; the next extend() handles this delay.
    std::size_t next_delay() const noexcept { return next_delay_; }
    std::size_t rank() const noexcept { return basis_.size(); }
    /// Adds the rows of F̄_L for L = next_delay() and returns rank(F̄_L).
    std::size_t extend();

private:
    struct BasisRow {
        std::size_t pivot;
        std::vector<Elem> coords;  // indexed from the rightmost column
    };

    std::vector<FieldMatrix> blocks_;
    std::size_t next_delay_ = 0;
    std::vector<BasisRow> basis_;  // sorted by pivot, descending
};

/// Field-based decoding matrix D_0..D_L (each |In(r)| × ω).
struct DecodingMatrix {
    std::size_t delay = 0;
    std::vector<FieldMatrix> blocks;
    /// (D_L; D_{L-1}; ...; D_0), the solution of F̄_L · X = (I_ω; 0).
    FieldMatrix stacked;
    /// Block (i, j) = D_{j-i} for j >= i.
    FieldMatrix toeplitz;
};

/// ω(L+1) × ω(L+1) matrix with I_ω in the top-right block and zeros elsewhere.
FieldMatrix decoding_target(const Field& field, std::size_t omega, std::size_t delay);

/// Canonical (free variables zero) solution of the stacked system. Throws
/// NotDecodableError when the rank condition fails at this delay.
DecodingMatrix build_decoding_matrix(const GekMatrix& f, std::size_t delay);

/// Incremental decoder: after y_{k+L} arrives it emits x_k, having already
/// removed the contributions of x_0..x_{k-1} from the buffered outputs.
class SequentialDecoder {
public:
    SequentialDecoder(GekMatrix f, DecodingMatrix d);

    std::size_t delay() const noexcept { return d_.delay; }
    std::size_t received() const noexcept { return residual_.size(); }
    const std::vector<std::vector<Elem>>& decoded() const noexcept { return decoded_; }

    /// Feeds y_t. Returns x_{t-L} once t >= L. Throws HorizonError when
    /// F_t is not available.
    std::optional<std::vector<Elem>> push(std::span<const Elem> y);

private:
    GekMatrix f_;
    DecodingMatrix d_;
    std::vector<std::vector<Elem>> residual_;
    std::vector<std::vector<Elem>> decoded_;
};

/// Decodes every x_k with k + L inside the received stream (rows = slots).
/// Returns a (rows - L) × ω matrix.
FieldMatrix sequential_decode(const GekMatrix& f, const DecodingMatrix& d, const FieldMatrix& received);

/// D(z) = z^L F(z)^-1 for a square rational F(z), when every entry of it is
/// a rational power series; then F(z) D(z) = z^L I. nullopt otherwise.
/// Throws DimensionError for a non-square F.
std::optional<RationalMatrix> time_invariant_decoder(const RationalMatrix& f, std::size_t delay);

}  // namespace cnc
