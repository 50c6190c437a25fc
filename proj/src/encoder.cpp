#include <cnc/encoder.hpp>

#include <algorithm>

namespace cnc {

std::string FeasibilityReport::realizability() const {
    if (practically_feasible) {
        return "practically-feasible";
    }
    if (!normal) {
        return "not-normal";
    }
    return k0_nilpotent ? "normal-unrealizable" : "normal-non-nilpotent";
}

FeasibilityReport classify(const CncInstance& c) {
    FeasibilityReport r;
    r.et_k0_acyclic = acyclicity(encoding_topology(c, TopologyMode::wrt_k0)).acyclic;
    r.et_kz_acyclic = acyclicity(encoding_topology(c, TopologyMode::wrt_kz)).acyclic;
    const FieldMatrix k0 = lek_constant(c);
    const Nilpotency nil = nilpotency(k0);
    r.k0_nilpotent = nil.nilpotent;
    r.nilpotency_index = nil.index;
    const FieldMatrix i_minus_k0 = FieldMatrix::identity(c.field(), c.channel_count()) - k0;
    r.i_minus_k0_invertible = rank(i_minus_k0) == c.channel_count();
    r.normal = r.i_minus_k0_invertible;
    r.practically_feasible = r.et_k0_acyclic;
    return r;
}

GekMatrix derive_geks(const CncInstance& c, std::size_t horizon) {
    const std::size_t n = c.channel_count();
    const MatrixSeries k = lek_matrix(c, horizon);
    const FieldMatrix i_minus_k0 = FieldMatrix::identity(c.field(), n) - k.coeff(0);
    const auto resolvent = inverse(i_minus_k0);
    if (!resolvent) {
        throw NotNormalError("I - K_0 is singular over " + c.field().name() +
                             ": the local kernels do not determine unique global kernels");
    }

    GekMatrix f;
    f.columns.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        f.columns[i] = i;
    }
    f.coefficients.reserve(horizon + 1);
    f.coefficients.push_back(c.hs() * *resolvent);
    for (std::size_t t = 1; t <= horizon; ++t) {
        FieldMatrix acc(c.field(), c.omega(), n);
        for (std::size_t tau = 0; tau < t; ++tau) {
            const FieldMatrix& kt = k.coeff(t - tau);
            if (!kt.is_zero()) {
                acc += f.coefficients[tau] * kt;
            }
        }
        f.coefficients.push_back(acc * *resolvent);
    }
    return f;
}

GekMatrix gek_at_sink(const GekMatrix& full, const CncInstance& c, std::size_t sink_node) {
    const auto& sinks = c.graph().sinks();
    if (std::find(sinks.begin(), sinks.end(), sink_node) == sinks.end()) {
        throw LookupError("node is not a declared sink");
    }
    const std::vector<std::size_t>& in = c.graph().in(sink_node);
    if (in.empty()) {
        throw LookupError("sink '" + c.graph().nodes()[sink_node] + "' has no incoming channels");
    }
    GekMatrix out;
    out.columns = in;
    out.coefficients.reserve(full.coefficients.size());
    for (const FieldMatrix& ft : full.coefficients) {
        out.coefficients.push_back(ft.select_columns(in));
    }
    return out;
}

GekMatrix gek_at_sink(const GekMatrix& full, const CncInstance& c, const std::string& sink) {
    return gek_at_sink(full, c, c.graph().sink(sink));
}

RationalMatrix rational_geks(const CncInstance& c, const std::vector<std::size_t>& columns) {
    const std::size_t n = c.channel_count();
    const Field& field = c.field();
    std::vector<RationalFunction> m;
    m.reserve(n * n);
    for (std::size_t d = 0; d < n; ++d) {
        for (std::size_t e = 0; e < n; ++e) {
            RationalFunction entry = -c.lek(d, e).as_function();
            if (d == e) {
                entry = entry + RationalFunction(Polynomial::constant(field, 1));
            }
            m.push_back(std::move(entry));
        }
    }
    if (rank(FieldMatrix::identity(field, n) - lek_constant(c)) != n) {
        throw NotNormalError("I - K_0 is singular over " + field.name() +
                             ": the local kernels do not determine unique global kernels");
    }
    // Nonzero det(I - K_0) is the constant term of det(I - K(z)), so this succeeds.
    const auto inv = invert(n, std::move(m));
    std::vector<RationalSeries> entries;
    entries.reserve(c.omega() * columns.size());
    for (std::size_t i = 0; i < c.omega(); ++i) {
        for (std::size_t col : columns) {
            RationalFunction acc(field);
            for (std::size_t k = 0; k < n; ++k) {
                const Elem h = c.hs()(i, k);
                if (h != 0) {
                    acc = acc + RationalFunction(Polynomial::constant(field, h)) * (*inv)[k * n + col];
                }
            }
            // det(I - K(z)) has a nonzero constant term, so every entry is a power series.
            entries.push_back(*RationalSeries::from_function(acc));
        }
    }
    return RationalMatrix(c.omega(), columns.size(), std::move(entries));
}

}  // namespace cnc
