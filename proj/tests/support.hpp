#pragma once

// Test-side oracles. Everything here is written independently of the
// library's elimination and series code so that comparisons mean something.

#include <cnc/decoder.hpp>
#include <cnc/encoder.hpp>
#include <cnc/field.hpp>
#include <cnc/io.hpp>
#include <cnc/network.hpp>
#include <cnc/random.hpp>
#include <cnc/series.hpp>

#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#ifndef CNC_DATA_DIR
#error "CNC_DATA_DIR must point at the fixture directory"
#endif

namespace oracle {

using cnc::Elem;
using cnc::Field;
using cnc::FieldMatrix;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline cnc::CncDocument fixture(const std::string& name) {
    return cnc::parse_document(read_file(std::string(CNC_DATA_DIR) + "/" + name));
}

// Polynomial product in GF(2)[x] followed by reduction; the multiplication
// table of GF(2^m) built the slow way.
inline std::uint32_t gf2m_mul_slow(std::uint32_t a, std::uint32_t b, unsigned m, std::uint32_t poly) {
    std::uint64_t prod = 0;
    for (unsigned i = 0; i < m; ++i) {
        if ((b >> i) & 1u) {
            prod ^= static_cast<std::uint64_t>(a) << i;
        }
    }
    for (int bit = 2 * static_cast<int>(m) - 2; bit >= static_cast<int>(m); --bit) {
        if ((prod >> bit) & 1u) {
            prod ^= static_cast<std::uint64_t>(poly) << (bit - static_cast<int>(m));
        }
    }
    return static_cast<std::uint32_t>(prod);
}

inline FieldMatrix random_matrix(const Field& f, cnc::Rng& rng, std::size_t rows, std::size_t cols,
                                 double density = 1.0) {
    FieldMatrix m(f, rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (rng.chance(density)) {
                m(r, c) = rng.element(f);
            }
        }
    }
    return m;
}

inline std::vector<Elem> linear_combination(const Field& f, const FieldMatrix& m, const std::vector<Elem>& coeffs) {
    std::vector<Elem> out(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out[c] = f.add(out[c], f.mul(coeffs[r], m(r, c)));
        }
    }
    return out;
}

// Advances a base-q counter; false after the last combination.
inline bool next_counter(std::vector<Elem>& v, std::uint32_t q) {
    for (Elem& d : v) {
        if (++d < q) {
            return true;
        }
        d = 0;
    }
    return false;
}

// |row space| = q^rank, counted by enumerating every combination of rows.
inline std::size_t rank_by_enumeration(const FieldMatrix& m) {
    const Field& f = m.field();
    std::set<std::vector<Elem>> span;
    std::vector<Elem> coeffs(m.rows(), 0);
    do {
        span.insert(linear_combination(f, m, coeffs));
    } while (next_counter(coeffs, f.order()));
    std::size_t rank = 0;
    for (std::size_t size = 1; size < span.size(); size *= f.order()) {
        ++rank;
    }
    return rank;
}

inline std::vector<Elem> poly_mul_truncated(const Field& f, const std::vector<Elem>& a, const std::vector<Elem>& b,
                                            std::size_t horizon) {
    std::vector<Elem> out(horizon + 1, 0);
    for (std::size_t i = 0; i < a.size() && i <= horizon; ++i) {
        for (std::size_t j = 0; j < b.size() && i + j <= horizon; ++j) {
            out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
        }
    }
    return out;
}

// Polynomial matrices as nested coefficient vectors: entry[r][c][t].
using PolyMatrix = std::vector<std::vector<std::vector<Elem>>>;

inline PolyMatrix poly_matrix_mul(const Field& f, const PolyMatrix& a, const PolyMatrix& b, std::size_t horizon) {
    PolyMatrix out(a.size(), std::vector<std::vector<Elem>>(b[0].size(), std::vector<Elem>(horizon + 1, 0)));
    for (std::size_t r = 0; r < a.size(); ++r) {
        for (std::size_t c = 0; c < b[0].size(); ++c) {
            for (std::size_t k = 0; k < b.size(); ++k) {
                const auto p = poly_mul_truncated(f, a[r][k], b[k][c], horizon);
                for (std::size_t t = 0; t <= horizon; ++t) {
                    out[r][c][t] = f.add(out[r][c][t], p[t]);
                }
            }
        }
    }
    return out;
}

inline PolyMatrix to_poly_matrix(const cnc::MatrixSeries& s) {
    PolyMatrix out(s.rows(), std::vector<std::vector<Elem>>(s.cols(), std::vector<Elem>(s.horizon() + 1)));
    for (std::size_t t = 0; t <= s.horizon(); ++t) {
        for (std::size_t r = 0; r < s.rows(); ++r) {
            for (std::size_t c = 0; c < s.cols(); ++c) {
                out[r][c][t] = s.coeff(t)(r, c);
            }
        }
    }
    return out;
}

// y_{e,t} = sum_{tau<=t} x_tau · f_{e,t-tau}.
inline Elem convolve(const Field& f, const FieldMatrix& x, const cnc::GekMatrix& geks, std::size_t e,
                     std::size_t t) {
    Elem v = 0;
    for (std::size_t tau = 0; tau <= t; ++tau) {
        for (std::size_t i = 0; i < x.cols(); ++i) {
            v = f.add(v, f.mul(x(tau, i), geks.coeff(t - tau)(i, e)));
        }
    }
    return v;
}

// F̄_L laid out block by block from the definition, without block_toeplitz.
inline FieldMatrix toeplitz_by_hand(const std::vector<FieldMatrix>& blocks, std::size_t delay) {
    const Field& f = blocks[0].field();
    const std::size_t w = blocks[0].rows();
    const std::size_t n = blocks[0].cols();
    FieldMatrix m(f, w * (delay + 1), n * (delay + 1));
    for (std::size_t i = 0; i <= delay; ++i) {
        for (std::size_t j = i; j <= delay; ++j) {
            for (std::size_t r = 0; r < w; ++r) {
                for (std::size_t c = 0; c < n; ++c) {
                    m(i * w + r, j * n + c) = blocks[j - i](r, c);
                }
            }
        }
    }
    return m;
}

// Basis of the left null space {v : v·M = 0}, by a textbook elimination on
// the transpose written out here rather than borrowed from the library.
inline std::vector<std::vector<Elem>> left_null_space(const FieldMatrix& m) {
    const Field& f = m.field();
    const std::size_t rows = m.cols();  // equations: one per column of M
    const std::size_t vars = m.rows();
    std::vector<std::vector<Elem>> a(rows, std::vector<Elem>(vars));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t v = 0; v < vars; ++v) {
            a[r][v] = m(v, r);
        }
    }
    std::vector<long> pivot_of_var(vars, -1);
    std::size_t row = 0;
    for (std::size_t v = 0; v < vars && row < rows; ++v) {
        std::size_t p = row;
        while (p < rows && a[p][v] == 0) {
            ++p;
        }
        if (p == rows) {
            continue;
        }
        std::swap(a[p], a[row]);
        const Elem s = f.inv(a[row][v]);
        for (Elem& e : a[row]) {
            e = f.mul(e, s);
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (r != row && a[r][v] != 0) {
                const Elem k = a[r][v];
                for (std::size_t c = 0; c < vars; ++c) {
                    a[r][c] = f.sub(a[r][c], f.mul(k, a[row][c]));
                }
            }
        }
        pivot_of_var[v] = static_cast<long>(row);
        ++row;
    }
    std::vector<std::vector<Elem>> basis;
    for (std::size_t free = 0; free < vars; ++free) {
        if (pivot_of_var[free] >= 0) {
            continue;
        }
        std::vector<Elem> v(vars, 0);
        v[free] = 1;
        for (std::size_t pv = 0; pv < vars; ++pv) {
            if (pivot_of_var[pv] >= 0) {
                v[pv] = f.neg(a[static_cast<std::size_t>(pivot_of_var[pv])][free]);
            }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

// x_0 is determined by ȳ_L = x̄_L F̄_L iff every x̄_L in the left null space
// of F̄_L has x_0 = 0; x_0 occupies the first ω coordinates.
inline bool x0_unique_by_null_space(const std::vector<FieldMatrix>& blocks, std::size_t delay) {
    const std::size_t omega = blocks[0].rows();
    for (const auto& v : left_null_space(toeplitz_by_hand(blocks, delay))) {
        for (std::size_t i = 0; i < omega; ++i) {
            if (v[i] != 0) {
                return false;
            }
        }
    }
    return true;
}

// Literal reading: enumerate every input prefix x̄_L, and fail if two of them
// with different x_0 give the same output prefix.
inline bool x0_unique_exhaustive(const std::vector<FieldMatrix>& blocks, std::size_t delay) {
    const FieldMatrix fbar = toeplitz_by_hand(blocks, delay);
    const Field& f = fbar.field();
    const std::size_t omega = blocks[0].rows();
    std::map<std::vector<Elem>, std::vector<Elem>> seen;
    std::vector<Elem> x(fbar.rows(), 0);
    do {
        std::vector<Elem> y = linear_combination(f, fbar, x);
        std::vector<Elem> x0(x.begin(), x.begin() + static_cast<long>(omega));
        const auto [it, fresh] = seen.emplace(std::move(y), x0);
        if (!fresh && it->second != x0) {
            return false;
        }
    } while (next_counter(x, f.order()));
    return true;
}

// Batch evaluation of the decoding formula for x_k:
//   [(y_k..y_{k+L}) - x̄_{k-1}(F_{k-j}..F_{k+L-j})_{j<k}] (D_L; ...; D_0).
inline std::vector<Elem> decode_batch(const cnc::GekMatrix& f, const cnc::DecodingMatrix& d, const FieldMatrix& y,
                                      const std::vector<std::vector<Elem>>& earlier, std::size_t k) {
    const Field& field = f.field();
    const std::size_t l = d.delay;
    const std::size_t w = f.width();
    std::vector<Elem> window(w * (l + 1), 0);
    for (std::size_t s = 0; s <= l; ++s) {
        for (std::size_t c = 0; c < w; ++c) {
            window[s * w + c] = y(k + s, c);
        }
    }
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t s = 0; s <= l; ++s) {
            const FieldMatrix& blk = f.coeff(k + s - j);
            for (std::size_t c = 0; c < w; ++c) {
                for (std::size_t i = 0; i < f.omega(); ++i) {
                    window[s * w + c] = field.sub(window[s * w + c], field.mul(earlier[j][i], blk(i, c)));
                }
            }
        }
    }
    std::vector<Elem> x(f.omega(), 0);
    for (std::size_t r = 0; r < window.size(); ++r) {
        for (std::size_t i = 0; i < f.omega(); ++i) {
            x[i] = field.add(x[i], field.mul(window[r], d.stacked(r, i)));
        }
    }
    return x;
}

inline cnc::GekMatrix gek_from_blocks(std::vector<FieldMatrix> blocks) {
    cnc::GekMatrix g;
    for (std::size_t c = 0; c < blocks[0].cols(); ++c) {
        g.columns.push_back(c);
    }
    g.coefficients = std::move(blocks);
    return g;
}

// Coefficients of a polynomial matrix given as rows of "c0 c1 c2 ..." lists.
inline cnc::GekMatrix gek_from_polys(const Field& f, const std::vector<std::vector<std::vector<Elem>>>& entries,
                                     std::size_t horizon) {
    std::vector<FieldMatrix> blocks;
    for (std::size_t t = 0; t <= horizon; ++t) {
        FieldMatrix m(f, entries.size(), entries[0].size());
        for (std::size_t r = 0; r < entries.size(); ++r) {
            for (std::size_t c = 0; c < entries[0].size(); ++c) {
                m(r, c) = t < entries[r][c].size() ? entries[r][c][t] : 0;
            }
        }
        blocks.push_back(std::move(m));
    }
    return gek_from_blocks(std::move(blocks));
}

inline cnc::RationalSeries series(const std::string& text, const Field& f = Field::gf2()) {
    return cnc::parse_series(text, f);
}

}  // namespace oracle
