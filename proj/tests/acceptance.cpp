// Acceptance run: one PASS/FAIL line per criterion. Exact arithmetic, no tolerance.
//   acceptance        all criteria, exit 1 if any fails
//   acceptance N      criterion N only

#include "support.hpp"

#include <cnc/simulator.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace cnc;
using oracle::series;

namespace {

const Field gf2 = Field::gf2();

struct Outcome {
    bool pass = true;
    std::string detail;

    // Failures accumulate in detail, in the order checked.
    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::vector<std::size_t> toeplitz_ranks(const GekMatrix& f, std::size_t max_delay) {
    std::vector<std::size_t> r;
    for (std::size_t l = 0; l <= max_delay; ++l) {
        r.push_back(rank(oracle::toeplitz_by_hand(f.coefficients, l)));
    }
    return r;
}

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t x : v) {
        s += (s.empty() ? "" : ",") + std::to_string(x);
    }
    return s;
}

// ---------------------------------------------------------------------------

Outcome example3_reproduction() {
    Outcome o;
    const CncInstance c = oracle::fixture("example3.cnc").instance;
    const FeasibilityReport r = classify(c);
    o.expect(!r.k0_nilpotent, "K_0 reported nilpotent");
    o.expect(r.i_minus_k0_invertible, "I - K_0 reported singular");
    FieldMatrix power = lek_constant(c);
    for (int i = 1; i < 6; ++i) {
        power = power * lek_constant(c);
    }
    o.expect(!power.is_zero(), "K_0^6 = 0");

    const GekMatrix g = derive_geks(c, 6);
    o.expect(g.coeff(0) == FieldMatrix(gf2, {{1, 0, 1, 1, 1, 1}, {0, 1, 1, 1, 0, 0}}),
             "F_0 = " + format_matrix(g.coeff(0)));
    // F(z) as printed: columns ch1..ch6.
    const RationalMatrix printed(2, 6,
                                 {series("1"), series("0"), series("1/(1-z)"), series("1"), series("1/(1-z)"),
                                  series("1/(1-z)"), series("0"), series("1"), series("1/(1-z)"), series("1"),
                                  series("z/(1-z)"), series("z/(1-z)")});
    const MatrixSeries expanded = printed.expand(6);
    for (std::size_t t = 0; t <= 6; ++t) {
        o.expect(g.coeff(t) == expanded.coeff(t), "F_" + std::to_string(t) + " = " + format_matrix(g.coeff(t)));
    }
    if (o.pass) {
        o.detail = "K_0 non-nilpotent, I-K_0 invertible, F_0..F_6 match the printed F(z)";
    }
    return o;
}

Outcome example4_pipeline() {
    Outcome o;
    const CncInstance c = oracle::fixture("example4.cnc").instance;
    const GekMatrix f = gek_at_sink(derive_geks(c, 10), c, "X");
    const GekMatrix printed_f = oracle::gek_from_polys(gf2, {{{1}, {0, 0, 1}}, {{0, 1}, {0, 0, 1}}}, 10);
    o.expect(f.coefficients == printed_f.coefficients, "GEK matrix at X differs from [[1,z^2],[z,z^2]]");

    const auto ranks = toeplitz_ranks(f, 2);
    o.expect(ranks == std::vector<std::size_t>{1, 2, 4}, "ranks " + join(ranks));
    o.expect(block_toeplitz(f.coefficients, 1).matrix ==
                 FieldMatrix(gf2, {{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}}),
             "F̄_1 differs from the printed display");
    const FieldMatrix fbar2 = block_toeplitz(f.coefficients, 2).matrix;
    o.expect(fbar2 == FieldMatrix(gf2, {{1, 0, 0, 0, 0, 1},
                                        {0, 0, 1, 0, 0, 1},
                                        {0, 0, 1, 0, 0, 0},
                                        {0, 0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 1, 0},
                                        {0, 0, 0, 0, 0, 0}}),
             "F̄_2 differs from the printed display");
    o.expect(!check_decodable(f, 1).decodable, "decodable at L=1");
    o.expect(check_decodable(f, 2).decodable, "not decodable at L=2");
    o.expect(minimal_delay(f, 8) == std::optional<std::size_t>{2}, "minimal delay is not 2");

    const FieldMatrix target = decoding_target(gf2, 2, 2);
    const DecodingMatrix d = build_decoding_matrix(f, 2);
    o.expect(fbar2 * d.toeplitz == target, "F̄_2 D̄_2 != [[0,I],[0,0]] for the computed D̄_2");

    // The printed grid is not block Toeplitz (its first block row and last
    // block column disagree on D_0). Its last block column (D_2; D_1; D_0) is
    // the part used for decoding x_0; rebuilt into D̄_2 it meets the relation.
    const FieldMatrix grid(gf2, {{1, 0, 0, 0, 1, 1},
                                 {0, 0, 1, 1, 0, 0},
                                 {0, 0, 0, 0, 0, 0},
                                 {0, 0, 0, 1, 1, 1},
                                 {0, 0, 0, 0, 0, 0},
                                 {0, 0, 0, 0, 0, 1}});
    const FieldMatrix column = grid.block(0, 4, 6, 2);
    const std::vector<FieldMatrix> blocks{column.block(4, 0, 2, 2), column.block(2, 0, 2, 2),
                                          column.block(0, 0, 2, 2)};
    const bool grid_literal = fbar2 * grid == target;
    o.expect(fbar2 * oracle::toeplitz_by_hand(blocks, 2) == target, "printed D̄_2 fails the relation");

    const auto dz = time_invariant_decoder(rational_geks(c, f.columns), 2);
    o.expect(dz.has_value(), "no time-invariant decoder at delay 2");
    if (dz) {
        const RationalMatrix expected(2, 2, {series("z^2/(1-z)"), series("-z^2/(1-z)"), series("-z/(1-z)"),
                                             series("1/(1-z)")});
        o.expect(*dz == expected, "D(z) differs from the printed matrix");
        MatrixSeries z2(gf2, 2, 2, 9);
        z2.coeff(2) = FieldMatrix::identity(gf2, 2);
        o.expect(rational_geks(c, f.columns).expand(9) * dz->expand(9) == z2, "F(z)D(z) != z^2 I to 10 terms");
    }
    if (o.pass) {
        o.detail = "ranks 1,2,4; minimal delay 2; D̄_2 and D(z) verified";
        o.detail += grid_literal ? "" : " (printed D̄_2 read through its last block column)";
    }
    return o;
}

Outcome example2_regression() {
    Outcome o;
    const CncInstance c = oracle::fixture("example2.cnc").instance;
    const FeasibilityReport r = classify(c);
    o.expect(r.k0_nilpotent, "K_0 not nilpotent");
    o.expect(r.nilpotency_index == std::optional<std::size_t>{4}, "nilpotency index is not 4");
    o.expect(!acyclicity(encoding_topology(c, TopologyMode::wrt_kz)).acyclic, "ET w.r.t. K(z) is acyclic");
    if (o.pass) {
        o.detail = "K_0 nilpotent with index 4, ET w.r.t. K(z) cyclic";
    }
    return o;
}

Outcome corollary_counterexample() {
    Outcome o;
    const GekMatrix full = oracle::gek_from_polys(gf2, {{{1, 1}, {1, 0, 1}}, {{1}, {1, 1}}}, 8);
    for (std::size_t l = 0; l <= 8; ++l) {
        o.expect(!check_decodable(full, l).decodable, "F(z) decodable at L=" + std::to_string(l));
    }
    const GekMatrix truncation = oracle::gek_from_polys(gf2, {{{1, 1}, {1}}, {{1}, {1, 1}}}, 2);
    const bool at_one = check_decodable(truncation, 1).decodable;
    // x_0 = (1,1), x_1 = (1,0) and the zero input give the same ȳ_1.
    const std::vector<Elem> witness{1, 1, 1, 0};
    const bool silent = oracle::toeplitz_by_hand(truncation.coefficients, 1).left_multiply(witness) ==
                        std::vector<Elem>(4, 0);
    o.expect(at_one, "truncation [[1+z,1],[1,1+z]] not decodable at L=1: ranks " +
                         join(toeplitz_ranks(truncation, 2)) + (silent ? ", x̄_1=(1,1,1,0) gives ȳ_1=0" : "") +
                         ", first decodable at L=" + std::to_string(minimal_delay(truncation, 2).value_or(99)));
    if (o.pass) {
        o.detail = "F(z) undecodable for L<=8, truncation decodable at L=1";
    }
    return o;
}

Outcome delay_zero_example() {
    Outcome o;
    const GekMatrix f = oracle::gek_from_polys(gf2, {{{1}, {0, 1}}, {{0}, {1, 1}}}, 1);
    const FieldMatrix y(gf2, {{1, 0}, {1, 0}});
    const FieldMatrix x = sequential_decode(f, build_decoding_matrix(f, 0), y);
    o.expect(x == FieldMatrix(gf2, {{1, 0}, {1, 1}}), "decoded " + format_matrix(x));

    // The same code realized on a network through a relay node.
    const CncInstance c = parse_document("field GF(2)\nomega 2\nnode S A R\nsource S\nchan a1 S A\nchan a2 S A\n"
                                         "chan e1 A R\nchan e2 A R\nsink R\nlek a1 e1 = 1\nlek a1 e2 = z\n"
                                         "lek a2 e2 = 1+z\n")
                              .instance;
    const FieldMatrix received = received_at(simulate(c, FieldMatrix(gf2, {{1, 0}, {1, 1}}), 1), c, "R");
    o.expect(received == y, "relay network receives " + format_matrix(received));
    const GekMatrix at = gek_at_sink(derive_geks(c, 1), c, "R");
    o.expect(sequential_decode(at, build_decoding_matrix(at, 0), received) == x, "network round trip");
    if (o.pass) {
        o.detail = "x_0=(1,0), x_1=(1,1) recovered";
    }
    return o;
}

// ---------------------------------------------------------------------------
// Random instances shared by the oracle and invariant criteria.

struct Pool {
    std::vector<CncInstance> instances;
};

const Pool& pool() {
    static const Pool p = [] {
        Pool out;
        Rng rng(20240611);
        const std::vector<Field> fields{gf2, gf2, Field::binary(2), Field::prime(3)};
        for (int i = 0; i < 1400; ++i) {
            RandomSpec spec;
            spec.field = fields[static_cast<std::size_t>(i) % fields.size()];
            spec.omega = 1 + rng.below(3);
            spec.nodes = 3 + rng.below(4);
            spec.sinks = 1 + rng.below(2);
            spec.channels = spec.omega + spec.nodes - 1 + rng.below(6);
            spec.cycle_density = 0.4;
            spec.k0_cycle_probability = i % 5 == 0 ? 0.5 : 0.0;
            spec.max_degree = 2;
            out.instances.push_back(draw_instance(spec, rng));
        }
        return out;
    }();
    return p;
}

// (I - K(z))^-1 mod z^{T+1} by the fixed-point iteration S <- I + S K, in
// plain polynomial matrices; K_0 nilpotent makes it stabilise.
oracle::PolyMatrix neumann_by_iteration(const Field& f, const MatrixSeries& k, std::size_t horizon) {
    const oracle::PolyMatrix kp = oracle::to_poly_matrix(k);
    const std::size_t n = k.rows();
    oracle::PolyMatrix identity(n, std::vector<std::vector<Elem>>(n, std::vector<Elem>(horizon + 1, 0)));
    for (std::size_t i = 0; i < n; ++i) {
        identity[i][i][0] = 1;
    }
    oracle::PolyMatrix s = identity;
    for (;;) {
        oracle::PolyMatrix next = oracle::poly_matrix_mul(f, s, kp, horizon);
        for (std::size_t i = 0; i < n; ++i) {
            next[i][i][0] = f.add(next[i][i][0], 1);
        }
        if (next == s) {
            return s;
        }
        s = std::move(next);
    }
}

bool nilpotent_by_powers(const FieldMatrix& k0) {
    FieldMatrix p = k0;
    for (std::size_t i = 1; i < k0.rows(); ++i) {
        p = p * k0;
    }
    return p.is_zero();
}

constexpr std::size_t kNeeded = 500;

Outcome oracle_equivalences() {
    Outcome o;
    std::size_t a = 0, b = 0, cnt_c = 0, d = 0, exhaustive = 0;
    std::size_t mismatches = 0;
    Rng rng(6);
    for (const CncInstance& c : pool().instances) {
        const Field& f = c.field();
        const FeasibilityReport r = classify(c);
        const std::size_t horizon = 8;

        // (a) recursion vs H_s times the Neumann series
        if (r.k0_nilpotent) {
            const GekMatrix g = derive_geks(c, horizon);
            const MatrixSeries k = lek_matrix(c, horizon);
            const MatrixSeries lib = neumann_expand(k, horizon);
            const oracle::PolyMatrix mine = neumann_by_iteration(f, k, horizon);
            bool ok = oracle::to_poly_matrix(lib) == mine;
            for (std::size_t t = 0; t <= horizon; ++t) {
                ok = ok && g.coeff(t) == c.hs() * lib.coeff(t);
            }
            mismatches += ok ? 0 : 1;
            ++a;
        }
        if (!r.practically_feasible) {
            continue;
        }

        // (b) simulated stream vs x(z) f_e(z)
        const GekMatrix g = derive_geks(c, horizon);
        const FieldMatrix x = oracle::random_matrix(f, rng, horizon + 1, c.omega());
        const SymbolStream s = simulate(c, x, horizon);
        bool ok = true;
        for (std::size_t e = 0; e < c.channel_count(); ++e) {
            for (std::size_t t = 0; t <= horizon; ++t) {
                ok = ok && s.symbol(e, t) == oracle::convolve(f, x, g, e, t);
            }
        }
        mismatches += ok ? 0 : 1;
        ++b;

        bool decoded_here = false;
        bool compared_here = false;
        for (std::size_t sink : c.graph().sinks()) {
            if (c.graph().in(sink).empty()) {
                continue;
            }
            const GekMatrix at = gek_at_sink(g, c, sink);
            // (c) rank test, decoding system, x_0 uniqueness
            if (c.omega() <= 3) {
                for (std::size_t l = 0; l <= 4; ++l) {
                    const bool by_rank = check_decodable(at, l).decodable;
                    FieldMatrix rhs(f, c.omega() * (l + 1), c.omega());
                    rhs.set_block(0, 0, FieldMatrix::identity(f, c.omega()));
                    const bool by_system =
                        solve_right(block_toeplitz(at.coefficients, static_cast<long>(l)).matrix, rhs).has_value();
                    const bool by_null = oracle::x0_unique_by_null_space(at.coefficients, l);
                    bool agree = by_rank == by_system && by_rank == by_null;
                    // Enumeration over every input prefix, where it stays small.
                    double space = 1;
                    for (std::size_t i = 0; i < c.omega() * (l + 1); ++i) {
                        space *= f.order();
                    }
                    if (space <= 1024) {
                        agree = agree && by_rank == oracle::x0_unique_exhaustive(at.coefficients, l);
                        ++exhaustive;
                    }
                    mismatches += agree ? 0 : 1;
                }
                compared_here = true;
            }
            // (d) simulate -> decode
            const auto l = minimal_delay(at, 4);
            if (!l) {
                continue;
            }
            const FieldMatrix y = received_at(s, c, c.graph().nodes()[sink]);
            const FieldMatrix back = sequential_decode(at, build_decoding_matrix(at, *l), y);
            mismatches += back == x.block(0, 0, horizon + 1 - *l, c.omega()) ? 0 : 1;
            decoded_here = true;
        }
        d += decoded_here ? 1 : 0;
        cnt_c += compared_here ? 1 : 0;
    }
    std::ostringstream msg;
    msg << "(a) " << a << " (b) " << b << " (c) " << cnt_c << " [" << exhaustive << " (sink, L) enumerated] (d) " << d
        << " instances, " << mismatches << " mismatches";
    o.expect(mismatches == 0, "mismatches");
    o.expect(a >= kNeeded && b >= kNeeded && cnt_c >= kNeeded && d >= kNeeded, "fewer than 500 instances");
    o.detail = msg.str() + (o.pass ? "" : " -- " + o.detail);
    return o;
}

Outcome structural_invariants() {
    Outcome o;
    std::size_t normal = 0, acyclic = 0, submatrix = 0;
    bool ok = true;
    for (const CncInstance& c : pool().instances) {
        const Field& f = c.field();
        const FeasibilityReport r = classify(c);
        // acyclic ET(K_0) => nilpotent K_0, nilpotency checked by powers
        const bool et_acyclic = acyclicity(encoding_topology(c, TopologyMode::wrt_k0)).acyclic;
        if (et_acyclic) {
            ++acyclic;
            if (!nilpotent_by_powers(lek_constant(c))) {
                ok = false;
                o.expect(false, "acyclic ET(K_0) with non-nilpotent K_0");
            }
        }
        if (!r.normal) {
            continue;
        }
        ++normal;
        const std::size_t horizon = 8;
        const GekMatrix g = derive_geks(c, horizon);
        const MatrixSeries lhs =
            g.as_series() * (MatrixSeries::identity(f, c.channel_count(), horizon) - lek_matrix(c, horizon));
        MatrixSeries rhs(f, c.omega(), c.channel_count(), horizon);
        rhs.coeff(0) = c.hs();
        if (!(lhs == rhs)) {
            ok = false;
            o.expect(false, "F(z)(I-K(z)) != H_s");
        }
        // F̄_{L-1} sits in the top-left and the bottom-right corners of F̄_L.
        for (std::size_t l = 1; l <= 5; ++l) {
            const FieldMatrix big = block_toeplitz(g.coefficients, static_cast<long>(l)).matrix;
            const FieldMatrix small = block_toeplitz(g.coefficients, static_cast<long>(l) - 1).matrix;
            const std::size_t w = c.omega();
            const std::size_t n = c.channel_count();
            const bool corner = big.block(0, 0, w * l, n * l) == small && big.block(w, n, w * l, n * l) == small &&
                                big.block(w * l, 0, w, n * l).is_zero();
            if (!corner) {
                ok = false;
                o.expect(false, "F̄_L submatrix property");
            }
            ++submatrix;
        }
    }
    std::ostringstream msg;
    msg << normal << " normal instances, " << submatrix << " F̄_L checks, " << acyclic << " acyclic ET(K_0) of "
        << pool().instances.size();
    o.expect(ok, "invariant violated");
    o.expect(normal >= kNeeded, "fewer than 500 normal instances");
    o.detail = msg.str() + (o.pass ? "" : " -- " + o.detail);
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Example 3 reproduction", example3_reproduction},
        {"Example 4 pipeline", example4_pipeline},
        {"Example 2 regression", example2_regression},
        {"truncated-GEK counterexample", corollary_counterexample},
        {"delay-0 worked example", delay_zero_example},
        {"oracle equivalences", oracle_equivalences},
        {"structural invariants", structural_invariants},
    };
    std::size_t only = 0;
    if (argc > 1) {
        only = static_cast<std::size_t>(std::strtoul(argv[1], nullptr, 10));
        if (only < 1 || only > criteria.size()) {
            std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
            return 2;
        }
    }
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && only != i + 1) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %zu: %s  %s: %s (%.2fs)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str(), secs);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
