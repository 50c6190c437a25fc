#include <cnc/field.hpp>

#include <algorithm>
#include <array>
#include <bit>

namespace cnc {

namespace {

// Built-in reduction polynomials for GF(2^m), m = 1..16 (Conway polynomials).
constexpr std::array<std::uint32_t, 17> kDefaultPolys = {
    0,       0x3,    0x7,    0xB,    0x13,   0x25,   0x5B,   0x83,   0x11D,
    0x211,   0x46F,  0x805,  0x10EB, 0x201B, 0x40A9, 0x8003, 0x1002D,
};

bool is_prime(std::uint32_t p) {
    if (p < 2) {
        return false;
    }
    for (std::uint32_t d = 2; d * d <= p; ++d) {
        if (p % d == 0) {
            return false;
        }
    }
    return true;
}

int poly_degree(std::uint32_t a) { return a == 0 ? -1 : 31 - std::countl_zero(a); }

std::uint32_t gf2_poly_mod(std::uint32_t a, std::uint32_t b) {
    const int db = poly_degree(b);
    for (int da = poly_degree(a); da >= db; da = poly_degree(a)) {
        a ^= b << (da - db);
    }
    return a;
}

// Carry-less product of two residues reduced modulo `poly` of degree m.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly, unsigned m) {
    std::uint32_t result = 0;
    const std::uint32_t top = 1u << m;
    while (b != 0) {
        if (b & 1u) {
            result ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a & top) {
            a ^= poly;
        }
    }
    return result;
}

}  // namespace

std::uint32_t FieldSpec::order() const noexcept {
    return kind == FieldKind::prime ? modulus : (1u << degree);
}

std::string FieldSpec::name() const {
    if (kind == FieldKind::prime) {
        return "GF(" + std::to_string(modulus) + ")";
    }
    return "GF(2^" + std::to_string(degree) + ")";
}

std::uint32_t Field::default_polynomial(unsigned m) {
    if (m < 1 || m > 16) {
        throw FieldError("GF(2^m) requires 1 <= m <= 16, got m = " + std::to_string(m));
    }
    return kDefaultPolys[m];
}

bool Field::is_irreducible_gf2(std::uint32_t poly) {
    const int deg = poly_degree(poly);
    if (deg < 1) {
        return false;
    }
    // Trial division by every polynomial of degree 1..deg/2.
    for (std::uint32_t d = 2; poly_degree(d) <= deg / 2; ++d) {
        if (gf2_poly_mod(poly, d) == 0) {
            return false;
        }
    }
    return true;
}

Field Field::gf2() { return prime(2); }

Field Field::prime(std::uint32_t p) {
    if (p >= (1u << 16) || !is_prime(p)) {
        throw FieldError("GF(p) requires a prime p < 65536, got " + std::to_string(p));
    }
    return Field(FieldSpec{FieldKind::prime, 1, p});
}

Field Field::binary(unsigned m) { return binary(m, default_polynomial(m)); }

Field Field::binary(unsigned m, std::uint32_t poly) {
    if (m < 1 || m > 16) {
        throw FieldError("GF(2^m) requires 1 <= m <= 16, got m = " + std::to_string(m));
    }
    if (poly_degree(poly) != static_cast<int>(m)) {
        throw FieldError("reduction polynomial must have degree " + std::to_string(m));
    }
    if (!is_irreducible_gf2(poly)) {
        throw FieldError("reduction polynomial is reducible over GF(2)");
    }
    return Field(FieldSpec{FieldKind::binary_extension, m, poly});
}

Field Field::of_order(std::uint32_t q) {
    if (is_prime(q)) {
        return prime(q);
    }
    if (q >= 4 && std::has_single_bit(q)) {
        return binary(static_cast<unsigned>(std::countr_zero(q)));
    }
    throw FieldError("no finite field of order " + std::to_string(q) + " is supported");
}

Field::Field(FieldSpec spec) : spec_(spec) {
    auto tables = std::make_shared<Tables>();
    const std::uint32_t q = spec_.order();
    if (spec_.kind == FieldKind::prime) {
        // log doubles as the inverse table for prime fields.
        tables->log.assign(q, 0);
        if (q > 1) {
            tables->log[1] = 1;
        }
        for (std::uint32_t i = 2; i < q; ++i) {
            const std::uint64_t t = static_cast<std::uint64_t>(q - q / i) * tables->log[q % i];
            tables->log[i] = static_cast<std::uint32_t>(t % q);
        }
    } else {
        // The reduction polynomial need only be irreducible, so search for a
        // multiplicative generator instead of assuming x is primitive.
        const std::uint32_t group = q - 1;
        std::uint32_t generator = 1;
        for (std::uint32_t g = (q == 2 ? 1 : 2); g < q; ++g) {
            std::uint32_t v = g;
            std::uint32_t ord = 1;
            while (v != 1) {
                v = clmul_mod(v, g, spec_.modulus, spec_.degree);
                ++ord;
            }
            if (ord == group) {
                generator = g;
                break;
            }
        }
        tables->exp.assign(2 * static_cast<std::size_t>(group), 0);
        tables->log.assign(q, 0);
        std::uint32_t v = 1;
        for (std::uint32_t i = 0; i < group; ++i) {
            tables->exp[i] = v;
            tables->exp[i + group] = v;
            tables->log[v] = i;
            v = clmul_mod(v, generator, spec_.modulus, spec_.degree);
        }
    }
    tables_ = std::move(tables);
}

std::uint32_t Field::characteristic() const noexcept {
    return spec_.kind == FieldKind::prime ? spec_.modulus : 2;
}

Elem Field::add(Elem a, Elem b) const noexcept {
    if (spec_.kind == FieldKind::binary_extension) {
        return a ^ b;
    }
    const Elem s = a + b;
    return s >= spec_.modulus ? s - spec_.modulus : s;
}

Elem Field::sub(Elem a, Elem b) const noexcept {
    if (spec_.kind == FieldKind::binary_extension) {
        return a ^ b;
    }
    return a >= b ? a - b : a + spec_.modulus - b;
}

Elem Field::neg(Elem a) const noexcept {
    if (spec_.kind == FieldKind::binary_extension || a == 0) {
        return a;
    }
    return spec_.modulus - a;
}

Elem Field::mul(Elem a, Elem b) const noexcept {
    if (a == 0 || b == 0) {
        return 0;
    }
    if (spec_.kind == FieldKind::prime) {
        return static_cast<Elem>(static_cast<std::uint64_t>(a) * b % spec_.modulus);
    }
    return tables_->exp[tables_->log[a] + tables_->log[b]];
}

Elem Field::inv(Elem a) const {
    if (a == 0) {
        throw FieldError("inversion of zero in " + name());
    }
    if (spec_.kind == FieldKind::prime) {
        return tables_->log[a];
    }
    const std::uint32_t group = order() - 1;
    return tables_->exp[(group - tables_->log[a]) % group];
}

// ---------------------------------------------------------------------------

FieldElement::FieldElement(Field field, Elem value) : field_(std::move(field)), value_(value) {
    if (!field_.contains(value_)) {
        throw FieldError(std::to_string(value_) + " is not an element of " + field_.name());
    }
}

namespace {
const Field& common_field(const FieldElement& a, const FieldElement& b) {
    if (!(a.field() == b.field())) {
        throw FieldError("operands from different fields: " + a.field().name() + " and " + b.field().name());
    }
    return a.field();
}
}  // namespace

FieldElement FieldElement::inv() const { return {field_, field_.inv(value_)}; }
FieldElement FieldElement::operator-() const { return {field_, field_.neg(value_)}; }

FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.add(a.value_, b.value_)};
}
FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.sub(a.value_, b.value_)};
}
FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.mul(a.value_, b.value_)};
}
FieldElement operator/(const FieldElement& a, const FieldElement& b) {
    const Field& f = common_field(a, b);
    return {f, f.div(a.value_, b.value_)};
}

// ---------------------------------------------------------------------------

FieldMatrix::FieldMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("matrix entry count does not match its shape");
    }
    for (Elem e : entries_) {
        if (!field_.contains(e)) {
            throw FieldError(std::to_string(e) + " is not an element of " + field_.name());
        }
    }
}

FieldMatrix::FieldMatrix(Field field, std::initializer_list<std::initializer_list<Elem>> rows)
    : field_(std::move(field)), rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) {
            throw DimensionError("ragged matrix literal");
        }
        for (Elem e : r) {
            if (!field_.contains(e)) {
                throw FieldError(std::to_string(e) + " is not an element of " + field_.name());
            }
            entries_.push_back(e);
        }
    }
}

FieldMatrix FieldMatrix::identity(Field field, std::size_t n) {
    FieldMatrix m(std::move(field), n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1;
    }
    return m;
}

Elem FieldMatrix::at(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
        throw DimensionError("matrix index out of range");
    }
    return (*this)(r, c);
}

void FieldMatrix::set(std::size_t r, std::size_t c, Elem v) {
    if (r >= rows_ || c >= cols_) {
        throw DimensionError("matrix index out of range");
    }
    if (!field_.contains(v)) {
        throw FieldError(std::to_string(v) + " is not an element of " + field_.name());
    }
    (*this)(r, c) = v;
}

bool FieldMatrix::is_zero() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), [](Elem e) { return e == 0; });
}

FieldMatrix FieldMatrix::transpose() const {
    FieldMatrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            t(c, r) = (*this)(r, c);
        }
    }
    return t;
}

FieldMatrix FieldMatrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    if (r0 + nrows > rows_ || c0 + ncols > cols_) {
        throw DimensionError("block exceeds matrix bounds");
    }
    FieldMatrix b(field_, nrows, ncols);
    for (std::size_t r = 0; r < nrows; ++r) {
        std::copy_n(entries_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0), ncols,
                    b.entries_.begin() + static_cast<std::ptrdiff_t>(r * ncols));
    }
    return b;
}

void FieldMatrix::set_block(std::size_t r0, std::size_t c0, const FieldMatrix& m) {
    if (r0 + m.rows_ > rows_ || c0 + m.cols_ > cols_) {
        throw DimensionError("block exceeds matrix bounds");
    }
    if (!(m.field_ == field_)) {
        throw FieldError("block from a different field");
    }
    for (std::size_t r = 0; r < m.rows_; ++r) {
        std::copy_n(m.entries_.begin() + static_cast<std::ptrdiff_t>(r * m.cols_), m.cols_,
                    entries_.begin() + static_cast<std::ptrdiff_t>((r0 + r) * cols_ + c0));
    }
}

FieldMatrix FieldMatrix::select_columns(std::span<const std::size_t> columns) const {
    FieldMatrix s(field_, rows_, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j] >= cols_) {
            throw DimensionError("column index out of range");
        }
        for (std::size_t r = 0; r < rows_; ++r) {
            s(r, j) = (*this)(r, columns[j]);
        }
    }
    return s;
}

FieldMatrix FieldMatrix::scaled(Elem s) const {
    FieldMatrix out = *this;
    for (Elem& e : out.entries_) {
        e = field_.mul(e, s);
    }
    return out;
}

std::vector<Elem> FieldMatrix::left_multiply(std::span<const Elem> v) const {
    if (v.size() != rows_) {
        throw DimensionError("vector length does not match matrix rows");
    }
    std::vector<Elem> out(cols_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (v[r] == 0) {
            continue;
        }
        for (std::size_t c = 0; c < cols_; ++c) {
            out[c] = field_.add(out[c], field_.mul(v[r], (*this)(r, c)));
        }
    }
    return out;
}

FieldMatrix& FieldMatrix::operator+=(const FieldMatrix& o) {
    if (!(o.field_ == field_)) {
        throw FieldError("matrix operands from different fields");
    }
    if (o.rows_ != rows_ || o.cols_ != cols_) {
        throw DimensionError("matrix sum of mismatched shapes");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] = field_.add(entries_[i], o.entries_[i]);
    }
    return *this;
}

FieldMatrix& FieldMatrix::operator-=(const FieldMatrix& o) {
    if (!(o.field_ == field_)) {
        throw FieldError("matrix operands from different fields");
    }
    if (o.rows_ != rows_ || o.cols_ != cols_) {
        throw DimensionError("matrix difference of mismatched shapes");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] = field_.sub(entries_[i], o.entries_[i]);
    }
    return *this;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
    if (!(a.field_ == b.field_)) {
        throw FieldError("matrix operands from different fields");
    }
    if (a.cols_ != b.rows_) {
        throw DimensionError("matrix product of incompatible shapes " + std::to_string(a.rows_) + "x" +
                             std::to_string(a.cols_) + " and " + std::to_string(b.rows_) + "x" +
                             std::to_string(b.cols_));
    }
    const Field& f = a.field_;
    FieldMatrix out(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const Elem aik = a(i, k);
            if (aik == 0) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols_; ++j) {
                out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
            }
        }
    }
    return out;
}

FieldMatrix hconcat(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("hconcat of matrices with different row counts");
    }
    FieldMatrix out(a.field(), a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

FieldMatrix vconcat(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.cols() != b.cols()) {
        throw DimensionError("vconcat of matrices with different column counts");
    }
    FieldMatrix out(a.field(), a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

RowEchelon row_reduce(FieldMatrix m) {
    const Field f = m.field();
    std::vector<std::size_t> pivots;
    std::size_t lead = 0;
    for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
        std::size_t p = lead;
        while (p < m.rows() && m(p, c) == 0) {
            ++p;
        }
        if (p == m.rows()) {
            continue;
        }
        if (p != lead) {
            std::swap_ranges(m.row(p).begin(), m.row(p).end(), m.row(lead).begin());
        }
        const Elem s = f.inv(m(lead, c));
        for (Elem& e : m.row(lead)) {
            e = f.mul(e, s);
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            const Elem factor = m(r, c);
            if (r == lead || factor == 0) {
                continue;
            }
            auto dst = m.row(r);
            auto src = m.row(lead);
            for (std::size_t j = c; j < m.cols(); ++j) {
                dst[j] = f.sub(dst[j], f.mul(factor, src[j]));
            }
        }
        pivots.push_back(c);
        ++lead;
    }
    return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FieldMatrix& m) { return row_reduce(m).pivots.size(); }

std::optional<FieldMatrix> solve_right(const FieldMatrix& a, const FieldMatrix& b) {
    if (a.rows() != b.rows()) {
        throw DimensionError("solve_right requires A and B with equal row counts");
    }
    if (!(a.field() == b.field())) {
        throw FieldError("solve_right operands from different fields");
    }
    const std::size_t n = a.cols();
    const RowEchelon ech = row_reduce(hconcat(a, b));
    // A pivot inside the B block means a row 0 = nonzero.
    if (!ech.pivots.empty() && ech.pivots.back() >= n) {
        return std::nullopt;
    }
    FieldMatrix x(a.field(), n, b.cols());
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            x(ech.pivots[i], j) = ech.reduced(i, n + j);
        }
    }
    return x;
}

std::optional<FieldMatrix> inverse(const FieldMatrix& m) {
    if (m.rows() != m.cols()) {
        throw DimensionError("inverse of a non-square matrix");
    }
    if (rank(m) != m.rows()) {
        return std::nullopt;
    }
    return solve_right(m, FieldMatrix::identity(m.field(), m.rows()));
}

}  // namespace cnc
