#include <cnc/decoder.hpp>

#include <algorithm>

namespace cnc {

namespace {

void require_blocks(const GekMatrix& f, std::size_t delay) {
    if (f.coefficients.size() < delay + 1) {
        throw HorizonError("delay " + std::to_string(delay) + " needs GEK coefficients up to F_" +
                           std::to_string(delay) + ", have up to F_" + std::to_string(f.horizon()));
    }
}

std::size_t toeplitz_rank(const GekMatrix& f, long delay) {
    if (delay < 0) {
        return 0;
    }
    return rank(block_toeplitz(f.coefficients, delay).matrix);
}

}  // namespace

bool check_necessary(const GekMatrix& f, std::size_t delay) {
    require_blocks(f, delay);
    FieldMatrix row = f.coeff(0);
    for (std::size_t t = 1; t <= delay; ++t) {
        row = hconcat(row, f.coeff(t));
    }
    return rank(row) == f.omega();
}

DecodabilityVerdict check_decodable(const GekMatrix& f, std::size_t delay) {
    require_blocks(f, delay);
    DecodabilityVerdict v;
    v.delay = delay;
    v.necessary_ok = check_necessary(f, delay);
    v.rank_l = toeplitz_rank(f, static_cast<long>(delay));
    v.rank_l_minus_1 = toeplitz_rank(f, static_cast<long>(delay) - 1);
    v.decodable = v.rank_l - v.rank_l_minus_1 == f.omega();
    return v;
}

std::optional<std::size_t> minimal_delay(const GekMatrix& f, std::size_t max_delay) {
    require_blocks(f, max_delay);
    std::optional<std::size_t> first_necessary;
    for (std::size_t l = 0; l <= max_delay; ++l) {
        if (check_necessary(f, l)) {
            first_necessary = l;
            break;
        }
    }
    if (!first_necessary) {
        return std::nullopt;
    }
    ToeplitzRankTracker tracker(f.coefficients);
    std::size_t previous = 0;
    while (tracker.next_delay() < *first_necessary) {
        previous = tracker.extend();
    }
    for (std::size_t l = *first_necessary; l <= max_delay; ++l) {
        const std::size_t current = tracker.extend();
        if (current - previous == f.omega()) {
            return l;
        }
        previous = current;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------

ToeplitzRankTracker::ToeplitzRankTracker(std::vector<FieldMatrix> blocks) : blocks_(std::move(blocks)) {
    if (blocks_.empty()) {
        throw HorizonError("rank tracking needs at least F_0");
    }
}

std::size_t ToeplitzRankTracker::extend() {
    const std::size_t l = next_delay_;
    if (l >= blocks_.size()) {
        throw HorizonError("rank tracking beyond the available GEK coefficients");
    }
    const Field& f = blocks_[0].field();
    const std::size_t omega = blocks_[0].rows();
    const std::size_t width = blocks_[0].cols();
    const std::size_t total = width * (l + 1);

    for (std::size_t i = 0; i < omega; ++i) {
        // Row i of (F_0 F_1 ... F_L), coordinates counted from the right end.
        std::vector<Elem> v(total, 0);
        for (std::size_t b = 0; b <= l; ++b) {
            for (std::size_t c = 0; c < width; ++c) {
                v[total - 1 - (b * width + c)] = blocks_[b](i, c);
            }
        }
        for (const BasisRow& row : basis_) {
            const Elem factor = v[row.pivot];
            if (factor == 0) {
                continue;
            }
            for (std::size_t k = 0; k <= row.pivot; ++k) {
                v[k] = f.sub(v[k], f.mul(factor, row.coords[k]));
            }
        }
        std::size_t pivot = total;
        while (pivot > 0 && v[pivot - 1] == 0) {
            --pivot;
        }
        if (pivot == 0) {
            continue;
        }
        --pivot;
        const Elem s = f.inv(v[pivot]);
        for (Elem& e : v) {
            e = f.mul(e, s);
        }
        v.resize(pivot + 1);
        const auto pos = std::find_if(basis_.begin(), basis_.end(), [&](const BasisRow& r) { return r.pivot < pivot; });
        basis_.insert(pos, BasisRow{pivot, std::move(v)});
    }
    ++next_delay_;
    return basis_.size();
}

// ---------------------------------------------------------------------------

FieldMatrix decoding_target(const Field& field, std::size_t omega, std::size_t delay) {
    FieldMatrix t(field, omega * (delay + 1), omega * (delay + 1));
    t.set_block(0, omega * delay, FieldMatrix::identity(field, omega));
    return t;
}

DecodingMatrix build_decoding_matrix(const GekMatrix& f, std::size_t delay) {
    const DecodabilityVerdict verdict = check_decodable(f, delay);
    if (!verdict.decodable) {
        throw NotDecodableError("not decodable with delay " + std::to_string(delay) + ": rank difference " +
                                std::to_string(verdict.rank_l - verdict.rank_l_minus_1) + " < omega = " +
                                std::to_string(f.omega()));
    }
    const Field& field = f.field();
    const std::size_t omega = f.omega();
    const std::size_t width = f.width();
    const ToeplitzExpansion fbar = block_toeplitz(f.coefficients, static_cast<long>(delay));
    FieldMatrix rhs(field, omega * (delay + 1), omega);
    rhs.set_block(0, 0, FieldMatrix::identity(field, omega));
    auto x = solve_right(fbar.matrix, rhs);
    if (!x) {
        // The rank condition guarantees a solution.
        throw NotDecodableError("decoding system is inconsistent at delay " + std::to_string(delay));
    }

    std::vector<FieldMatrix> blocks;
    blocks.reserve(delay + 1);
    for (std::size_t j = 0; j <= delay; ++j) {
        blocks.push_back(x->block((delay - j) * width, 0, width, omega));
    }
    FieldMatrix toeplitz(field, width * (delay + 1), omega * (delay + 1));
    for (std::size_t i = 0; i <= delay; ++i) {
        for (std::size_t j = i; j <= delay; ++j) {
            toeplitz.set_block(i * width, j * omega, blocks[j - i]);
        }
    }
    return DecodingMatrix{delay, std::move(blocks), std::move(*x), std::move(toeplitz)};
}

// ---------------------------------------------------------------------------

SequentialDecoder::SequentialDecoder(GekMatrix f, DecodingMatrix d) : f_(std::move(f)), d_(std::move(d)) {
    require_blocks(f_, d_.delay);
    if (d_.stacked.rows() != f_.width() * (d_.delay + 1) || d_.stacked.cols() != f_.omega()) {
        throw DimensionError("decoding matrix does not match the GEK matrix shape");
    }
}

std::optional<std::vector<Elem>> SequentialDecoder::push(std::span<const Elem> y) {
    const Field& field = f_.field();
    const std::size_t t = residual_.size();
    if (y.size() != f_.width()) {
        throw DimensionError("received vector has " + std::to_string(y.size()) + " symbols, sink has " +
                             std::to_string(f_.width()) + " incoming channels");
    }
    if (t > f_.horizon()) {
        throw HorizonError("decoding slot " + std::to_string(t) + " needs F_" + std::to_string(t) +
                           "; derive the GEKs with a larger horizon");
    }
    std::vector<Elem> r(y.begin(), y.end());
    for (std::size_t j = 0; j < decoded_.size(); ++j) {
        const std::vector<Elem> gain = f_.coeff(t - j).left_multiply(decoded_[j]);
        for (std::size_t c = 0; c < r.size(); ++c) {
            r[c] = field.sub(r[c], gain[c]);
        }
    }
    residual_.push_back(std::move(r));

    const std::size_t l = d_.delay;
    if (t < l) {
        return std::nullopt;
    }
    const std::size_t k = t - l;
    std::vector<Elem> window;
    window.reserve(f_.width() * (l + 1));
    for (std::size_t s = k; s <= t; ++s) {
        window.insert(window.end(), residual_[s].begin(), residual_[s].end());
    }
    std::vector<Elem> x = d_.stacked.left_multiply(window);
    for (std::size_t s = k + 1; s <= t; ++s) {
        const std::vector<Elem> gain = f_.coeff(s - k).left_multiply(x);
        for (std::size_t c = 0; c < gain.size(); ++c) {
            residual_[s][c] = field.sub(residual_[s][c], gain[c]);
        }
    }
    decoded_.push_back(x);
    return x;
}

FieldMatrix sequential_decode(const GekMatrix& f, const DecodingMatrix& d, const FieldMatrix& received) {
    if (received.rows() < d.delay + 1) {
        throw HorizonError("decoding with delay " + std::to_string(d.delay) + " needs at least " +
                           std::to_string(d.delay + 1) + " received vectors");
    }
    SequentialDecoder decoder(f, d);
    FieldMatrix out(f.field(), received.rows() - d.delay, f.omega());
    std::size_t k = 0;
    for (std::size_t t = 0; t < received.rows(); ++t) {
        if (auto x = decoder.push(received.row(t))) {
            std::copy(x->begin(), x->end(), out.row(k++).begin());
        }
    }
    return out;
}

std::optional<RationalMatrix> time_invariant_decoder(const RationalMatrix& f, std::size_t delay) {
    if (f.rows() != f.cols()) {
        throw DimensionError("a time-invariant inverse needs a square GEK matrix (|In(r)| = omega)");
    }
    const std::size_t n = f.rows();
    std::vector<RationalFunction> m;
    m.reserve(n * n);
    for (const RationalSeries& e : f.entries()) {
        m.push_back(e.as_function());
    }
    const auto inv = invert(n, std::move(m));
    if (!inv) {
        return std::nullopt;
    }
    const RationalFunction shift(Polynomial::monomial(f.field(), 1, delay));
    std::vector<RationalSeries> entries;
    entries.reserve(n * n);
    for (const RationalFunction& e : *inv) {
        auto s = RationalSeries::from_function(shift * e);
        if (!s) {
            return std::nullopt;
        }
        entries.push_back(std::move(*s));
    }
    return RationalMatrix(n, n, std::move(entries));
}

}  // namespace cnc
