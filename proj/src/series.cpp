#include <cnc/series.hpp>

#include <algorithm>

namespace cnc {

// ---------------------------------------------------------------------------
// RationalFunction

RationalFunction::RationalFunction(Field field) : num_(field), den_(Polynomial::constant(field, 1)) {}

RationalFunction::RationalFunction(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.field(), 1)) {}

RationalFunction::RationalFunction(Polynomial numerator, Polynomial denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) {
        throw FieldError("rational function with zero denominator");
    }
    if (num_.is_zero()) {
        den_ = Polynomial::constant(field(), 1);
        return;
    }
    const Polynomial g = gcd(num_, den_);
    num_ = divmod(num_, g).first;
    den_ = divmod(den_, g).first;
    const Elem s = field().inv(den_.leading());
    num_ = num_.scaled(s);
    den_ = den_.scaled(s);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) {
        throw FieldError("division by the zero rational function");
    }
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

// ---------------------------------------------------------------------------
// RationalSeries

RationalSeries::RationalSeries(Polynomial numerator, Polynomial denominator)
    : num_(numerator.field()), den_(denominator.field()) {
    const RationalFunction f(std::move(numerator), std::move(denominator));
    const Elem d0 = f.denominator().coeff(0);
    if (d0 == 0) {
        throw Error("not a rational power series: denominator has zero constant term");
    }
    const Elem s = f.field().inv(d0);
    num_ = f.numerator().scaled(s);
    den_ = f.denominator().scaled(s);
}

RationalSeries::RationalSeries(Polynomial numerator)
    : num_(std::move(numerator)), den_(Polynomial::constant(num_.field(), 1)) {}

RationalSeries RationalSeries::zero(Field field) { return RationalSeries(Polynomial(std::move(field))); }

RationalSeries RationalSeries::constant(Field field, Elem c) {
    return RationalSeries(Polynomial::constant(std::move(field), c));
}

std::optional<RationalSeries> RationalSeries::from_function(const RationalFunction& f) {
    if (f.denominator().coeff(0) == 0) {
        return std::nullopt;
    }
    return RationalSeries(f.numerator(), f.denominator());
}

std::vector<Elem> RationalSeries::expand(std::size_t horizon) const {
    const Field& f = field();
    std::vector<Elem> c(horizon + 1, 0);
    const std::size_t dd = static_cast<std::size_t>(std::max(den_.degree(), 0));
    for (std::size_t t = 0; t <= horizon; ++t) {
        Elem v = num_.coeff(t);
        for (std::size_t i = 1; i <= std::min(t, dd); ++i) {
            v = f.sub(v, f.mul(den_.coeff(i), c[t - i]));
        }
        c[t] = v;
    }
    return c;
}

RationalSeries RationalSeries::operator-() const { return RationalSeries(-num_, den_); }

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
    return RationalSeries(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) {
    return RationalSeries(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    return RationalSeries(a.num_ * b.num_, a.den_ * b.den_);
}

// ---------------------------------------------------------------------------
// MatrixSeries

MatrixSeries::MatrixSeries(Field field, std::size_t rows, std::size_t cols, std::size_t horizon)
    : field_(field), rows_(rows), cols_(cols), coeffs_(horizon + 1, FieldMatrix(field, rows, cols)) {}

MatrixSeries::MatrixSeries(std::vector<FieldMatrix> coefficients)
    : field_(coefficients.empty() ? Field::gf2() : coefficients.front().field()),
      rows_(coefficients.empty() ? 0 : coefficients.front().rows()),
      cols_(coefficients.empty() ? 0 : coefficients.front().cols()),
      coeffs_(std::move(coefficients)) {
    if (coeffs_.empty()) {
        throw HorizonError("a matrix series needs at least its constant coefficient");
    }
    for (const FieldMatrix& m : coeffs_) {
        if (m.rows() != rows_ || m.cols() != cols_) {
            throw DimensionError("matrix series coefficients of different shapes");
        }
        if (!(m.field() == field_)) {
            throw FieldError("matrix series coefficients over different fields");
        }
    }
}

MatrixSeries MatrixSeries::identity(Field field, std::size_t n, std::size_t horizon) {
    MatrixSeries s(field, n, n, horizon);
    s.coeffs_[0] = FieldMatrix::identity(field, n);
    return s;
}

MatrixSeries MatrixSeries::truncated(std::size_t horizon) const {
    if (horizon > this->horizon()) {
        throw HorizonError("cannot truncate a series to a longer horizon");
    }
    return MatrixSeries(std::vector<FieldMatrix>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(horizon + 1)));
}

bool MatrixSeries::is_zero() const noexcept {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const FieldMatrix& m) { return m.is_zero(); });
}

MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b) {
    if (!(a.field_ == b.field_)) {
        throw FieldError("matrix series over different fields");
    }
    if (a.cols_ != b.rows_) {
        throw DimensionError("matrix series product of incompatible shapes");
    }
    const std::size_t horizon = std::min(a.horizon(), b.horizon());
    MatrixSeries out(a.field_, a.rows_, b.cols_, horizon);
    for (std::size_t i = 0; i <= horizon; ++i) {
        if (a.coeffs_[i].is_zero()) {
            continue;
        }
        for (std::size_t j = 0; i + j <= horizon; ++j) {
            out.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return out;
}

MatrixSeries operator+(const MatrixSeries& a, const MatrixSeries& b) {
    const std::size_t horizon = std::min(a.horizon(), b.horizon());
    std::vector<FieldMatrix> out;
    out.reserve(horizon + 1);
    for (std::size_t t = 0; t <= horizon; ++t) {
        out.push_back(a.coeffs_[t] + b.coeffs_[t]);
    }
    return MatrixSeries(std::move(out));
}

MatrixSeries operator-(const MatrixSeries& a, const MatrixSeries& b) {
    const std::size_t horizon = std::min(a.horizon(), b.horizon());
    std::vector<FieldMatrix> out;
    out.reserve(horizon + 1);
    for (std::size_t t = 0; t <= horizon; ++t) {
        out.push_back(a.coeffs_[t] - b.coeffs_[t]);
    }
    return MatrixSeries(std::move(out));
}

bool operator==(const MatrixSeries& a, const MatrixSeries& b) noexcept {
    if (!(a.field_ == b.field_) || a.rows_ != b.rows_ || a.cols_ != b.cols_) {
        return false;
    }
    const std::size_t shared = std::min(a.coeffs_.size(), b.coeffs_.size());
    for (std::size_t t = 0; t < shared; ++t) {
        if (!(a.coeffs_[t] == b.coeffs_[t])) {
            return false;
        }
    }
    const auto& longer = a.coeffs_.size() > b.coeffs_.size() ? a.coeffs_ : b.coeffs_;
    return std::all_of(longer.begin() + static_cast<std::ptrdiff_t>(shared), longer.end(),
                       [](const FieldMatrix& m) { return m.is_zero(); });
}

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, RationalSeries::zero(field)) {}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols, std::vector<RationalSeries> entries)
    : field_(entries.empty() ? Field::gf2() : entries.front().field()),
      rows_(rows),
      cols_(cols),
      entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("rational matrix entry count does not match its shape");
    }
    for (const RationalSeries& e : entries_) {
        if (!(e.field() == field_)) {
            throw FieldError("rational matrix entries over different fields");
        }
    }
}

MatrixSeries RationalMatrix::expand(std::size_t horizon) const {
    MatrixSeries out(field_, rows_, cols_, horizon);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            const std::vector<Elem> coeffs = (*this)(r, c).expand(horizon);
            for (std::size_t t = 0; t <= horizon; ++t) {
                out.coeff(t)(r, c) = coeffs[t];
            }
        }
    }
    return out;
}

std::optional<std::vector<RationalFunction>> invert(std::size_t n, std::vector<RationalFunction> m) {
    if (m.size() != n * n) {
        throw DimensionError("invert expects an n×n matrix");
    }
    if (n == 0) {
        return m;
    }
    const Field field = m.front().field();
    std::vector<RationalFunction> inv;
    inv.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            inv.push_back(i == j ? RationalFunction(Polynomial::constant(field, 1)) : RationalFunction(field));
        }
    }
    auto at = [n](std::vector<RationalFunction>& v, std::size_t r, std::size_t c) -> RationalFunction& {
        return v[r * n + c];
    };
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && at(m, p, c).is_zero()) {
            ++p;
        }
        if (p == n) {
            return std::nullopt;
        }
        if (p != c) {
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(at(m, p, j), at(m, c, j));
                std::swap(at(inv, p, j), at(inv, c, j));
            }
        }
        const RationalFunction pivot = at(m, c, c);
        for (std::size_t j = 0; j < n; ++j) {
            at(m, c, j) = at(m, c, j) / pivot;
            at(inv, c, j) = at(inv, c, j) / pivot;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || at(m, r, c).is_zero()) {
                continue;
            }
            const RationalFunction factor = at(m, r, c);
            for (std::size_t j = 0; j < n; ++j) {
                at(m, r, j) = at(m, r, j) - factor * at(m, c, j);
                at(inv, r, j) = at(inv, r, j) - factor * at(inv, c, j);
            }
        }
    }
    return inv;
}

// ---------------------------------------------------------------------------

Nilpotency nilpotency(const FieldMatrix& k0) {
    if (k0.rows() != k0.cols()) {
        throw DimensionError("nilpotency test needs a square matrix");
    }
    const std::size_t n = k0.rows();
    if (n == 0 || k0.is_zero()) {
        return {true, 1};
    }
    FieldMatrix power = k0;
    for (std::size_t m = 2; m <= n; ++m) {
        power = power * k0;
        if (power.is_zero()) {
            return {true, m};
        }
    }
    return {false, std::nullopt};
}

MatrixSeries neumann_expand(const MatrixSeries& k, std::size_t horizon) {
    if (k.rows() != k.cols()) {
        throw DimensionError("neumann_expand needs a square matrix series");
    }
    if (k.horizon() < horizon) {
        throw HorizonError("K(z) is known only up to z^" + std::to_string(k.horizon()));
    }
    const Nilpotency nil = nilpotency(k.coeff(0));
    if (!nil.nilpotent) {
        throw NotExpandableError(
            "I + K(z) + K(z)^2 + ... is not expandable: the constant coefficient K_0 is not nilpotent");
    }
    const MatrixSeries kt = k.truncated(horizon);
    // A product of r factors K(z) contributes below z^(T+1) only if at most T
    // factors are non-constant, which splits the K_0 factors into at most T+1
    // runs of length < index. Hence K(z)^r vanishes mod z^(T+1) for r >= (T+1)·index.
    const std::size_t last_power = (horizon + 1) * *nil.index;
    MatrixSeries sum = MatrixSeries::identity(k.field(), k.rows(), horizon);
    MatrixSeries power = sum;
    for (std::size_t r = 1; r < last_power; ++r) {
        power = power * kt;
        if (power.is_zero()) {
            break;
        }
        sum = sum + power;
    }
    return sum;
}

ToeplitzExpansion block_toeplitz(std::span<const FieldMatrix> blocks, long delay) {
    if (delay < 0) {
        throw Error("block Toeplitz expansion needs delay >= 0, got " + std::to_string(delay));
    }
    const auto l = static_cast<std::size_t>(delay);
    if (blocks.size() < l + 1) {
        throw HorizonError("block Toeplitz expansion with delay " + std::to_string(l) + " needs " +
                           std::to_string(l + 1) + " coefficient blocks, got " + std::to_string(blocks.size()));
    }
    const std::size_t omega = blocks[0].rows();
    const std::size_t width = blocks[0].cols();
    FieldMatrix m(blocks[0].field(), omega * (l + 1), width * (l + 1));
    for (std::size_t i = 0; i <= l; ++i) {
        for (std::size_t j = i; j <= l; ++j) {
            m.set_block(i * omega, j * width, blocks[j - i]);
        }
    }
    return {l, omega, width, std::vector<FieldMatrix>(blocks.begin(), blocks.begin() + static_cast<std::ptrdiff_t>(l + 1)),
            std::move(m)};
}

}  // namespace cnc
