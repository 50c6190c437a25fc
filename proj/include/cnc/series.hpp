#pragma once

// Rational power series p(z)/(1 + z q(z)), truncated matrix power series
// sum_t M_t z^t, the Neumann expansion of (I - K(z))^-1 and the block
// Toeplitz expansion of a GEK coefficient sequence.

#include <cnc/field.hpp>
#include <cnc/polynomial.hpp>

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace cnc {

/// Element of the fraction field F(z): reduced p/q, q monic and nonzero.
class RationalFunction {
public:
    explicit RationalFunction(Field field);
    explicit RationalFunction(Polynomial numerator);
    RationalFunction(Polynomial numerator, Polynomial denominator);

    const Field& field() const noexcept { return num_.field(); }
    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }
    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    /// Throws FieldError for division by zero.
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    Polynomial num_;
    Polynomial den_;
};

/// Rational power series: a reduced fraction whose denominator has constant
/// term 1. Stored as a fraction; expand() produces coefficients.
class RationalSeries {
public:
    /// Throws Error when the reduced denominator has a zero constant term.
    RationalSeries(Polynomial numerator, Polynomial denominator);
    explicit RationalSeries(Polynomial numerator);

    static RationalSeries zero(Field field);
    static RationalSeries constant(Field field, Elem c);
    /// nullopt when f is not a power series (reduced denominator divisible by z).
    static std::optional<RationalSeries> from_function(const RationalFunction& f);

    const Field& field() const noexcept { return num_.field(); }
    const Polynomial& numerator() const noexcept { return num_; }
    const Polynomial& denominator() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_polynomial() const noexcept { return den_.degree() == 0; }
    Elem constant_term() const noexcept { return num_.coeff(0); }

    /// Coefficients c_0..c_T of the power series.
    std::vector<Elem> expand(std::size_t horizon) const;
    RationalFunction as_function() const { return RationalFunction(num_, den_); }

    RationalSeries operator-() const;
    friend RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
    friend RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
    friend RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
    friend bool operator==(const RationalSeries& a, const RationalSeries& b) noexcept {
        return a.num_ == b.num_ && a.den_ == b.den_;
    }

private:
    Polynomial num_;
    Polynomial den_;
};

/// Truncated matrix power series sum_{t=0..T} M_t z^t.
class MatrixSeries {
public:
    MatrixSeries(Field field, std::size_t rows, std::size_t cols, std::size_t horizon);
    explicit MatrixSeries(std::vector<FieldMatrix> coefficients);

    static MatrixSeries identity(Field field, std::size_t n, std::size_t horizon);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t horizon() const noexcept { return coeffs_.size() - 1; }
    const FieldMatrix& coeff(std::size_t t) const { return coeffs_.at(t); }
    FieldMatrix& coeff(std::size_t t) { return coeffs_.at(t); }
    const std::vector<FieldMatrix>& coefficients() const noexcept { return coeffs_; }

    MatrixSeries truncated(std::size_t horizon) const;
    bool is_zero() const noexcept;

    /// Cauchy product; the horizon is the smaller of the two.
    friend MatrixSeries operator*(const MatrixSeries& a, const MatrixSeries& b);
    friend MatrixSeries operator+(const MatrixSeries& a, const MatrixSeries& b);
    friend MatrixSeries operator-(const MatrixSeries& a, const MatrixSeries& b);
    /// Term-by-term on the shared prefix; the longer tail must be zero.
    friend bool operator==(const MatrixSeries& a, const MatrixSeries& b) noexcept;

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<FieldMatrix> coeffs_;
};

/// Row-major matrix whose entries are rational power series.
class RationalMatrix {
public:
    RationalMatrix(Field field, std::size_t rows, std::size_t cols);
    RationalMatrix(std::size_t rows, std::size_t cols, std::vector<RationalSeries> entries);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const RationalSeries& operator()(std::size_t r, std::size_t c) const { return entries_.at(r * cols_ + c); }
    RationalSeries& operator()(std::size_t r, std::size_t c) { return entries_.at(r * cols_ + c); }
    const std::vector<RationalSeries>& entries() const noexcept { return entries_; }

    MatrixSeries expand(std::size_t horizon) const;

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) noexcept {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<RationalSeries> entries_;
};

/// Square matrix over F(z), row-major. Gauss-Jordan inverse; nullopt if singular.
std::optional<std::vector<RationalFunction>> invert(std::size_t n, std::vector<RationalFunction> m);

struct Nilpotency {
    bool nilpotent = false;
    /// Smallest m with K^m = 0, when nilpotent.
    std::optional<std::size_t> index;
};

/// A square n×n matrix is nilpotent iff K^n = 0.
Nilpotency nilpotency(const FieldMatrix& k0);

/// Coefficients of I + K(z) + K(z)^2 + ... up to z^T, summed literally over
/// the finitely many powers that contribute below z^(T+1). Throws
/// NotExpandableError when K_0 is not nilpotent. The number of powers grows
/// like (T+1)·index(K_0), so this is meant for moderate T.
MatrixSeries neumann_expand(const MatrixSeries& k, std::size_t horizon);

/// The ω(L+1) × n(L+1) block upper-triangular Toeplitz matrix with block
/// (i, j) = F_{j-i} for j >= i.
struct ToeplitzExpansion {
    std::size_t delay = 0;
    std::size_t omega = 0;
    std::size_t width = 0;
    std::vector<FieldMatrix> blocks;
    FieldMatrix matrix;
};

/// Throws Error for delay < 0 and HorizonError for fewer than delay+1 blocks.
ToeplitzExpansion block_toeplitz(std::span<const FieldMatrix> blocks, long delay);

}  // namespace cnc
