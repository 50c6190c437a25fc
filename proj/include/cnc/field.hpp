#pragma once

// Finite fields GF(p) (p < 2^16) and GF(2^m) (m <= 16), and dense linear
// algebra over them. Everything is exact; there is no tolerance anywhere.

#include <cnc/error.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace cnc {

/// Canonical representation of a field element. For GF(p) it is the residue
/// 0..p-1; for GF(2^m) bit i is the coefficient of x^i.
using Elem = std::uint32_t;

enum class FieldKind { prime, binary_extension };

struct FieldSpec {
    FieldKind kind = FieldKind::prime;
    /// Extension degree m (1 for prime fields).
    unsigned degree = 1;
    /// p for prime fields; reduction polynomial bits (including x^m) otherwise.
    std::uint32_t modulus = 2;

    std::uint32_t order() const noexcept;
    std::string name() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

/// Immutable finite field. Copies share the arithmetic tables.
class Field {
public:
    /// GF(2) as the prime field of characteristic 2.
    static Field gf2();
    /// GF(p); throws FieldError unless p is a prime below 2^16.
    static Field prime(std::uint32_t p);
    /// GF(2^m) with the built-in reduction polynomial for m.
    static Field binary(unsigned m);
    /// GF(2^m) reduced by `poly` (bits include x^m); irreducibility is checked.
    static Field binary(unsigned m, std::uint32_t poly);
    /// GF(q) for q prime or q = 2^m, m >= 2.
    static Field of_order(std::uint32_t q);

    /// Built-in reduction polynomial for GF(2^m), 1 <= m <= 16.
    static std::uint32_t default_polynomial(unsigned m);
    static bool is_irreducible_gf2(std::uint32_t poly);

    const FieldSpec& spec() const noexcept { return spec_; }
    std::uint32_t order() const noexcept { return spec_.order(); }
    std::uint32_t characteristic() const noexcept;
    std::string name() const { return spec_.name(); }
    bool contains(Elem a) const noexcept { return a < order(); }

    Elem zero() const noexcept { return 0; }
    Elem one() const noexcept { return 1; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem mul(Elem a, Elem b) const noexcept;
    /// Throws FieldError for a == 0.
    Elem inv(Elem a) const;
    Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

    friend bool operator==(const Field& a, const Field& b) noexcept { return a.spec_ == b.spec_; }

private:
    struct Tables {
        std::vector<std::uint32_t> exp;  // length 2(q-1)
        std::vector<std::uint32_t> log;  // length q
    };

    explicit Field(FieldSpec spec);

    FieldSpec spec_;
    std::shared_ptr<const Tables> tables_;
};

/// A field element bound to its field; mixing fields is an error.
class FieldElement {
public:
    FieldElement(Field field, Elem value);

    const Field& field() const noexcept { return field_; }
    Elem value() const noexcept { return value_; }
    bool is_zero() const noexcept { return value_ == 0; }

    FieldElement inv() const;
    FieldElement operator-() const;

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);
    friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
        return a.field_ == b.field_ && a.value_ == b.value_;
    }

private:
    Field field_;
    Elem value_;
};

/// Dense row-major matrix over a finite field.
class FieldMatrix {
public:
    FieldMatrix(Field field, std::size_t rows, std::size_t cols);
    FieldMatrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);
    FieldMatrix(Field field, std::initializer_list<std::initializer_list<Elem>> rows);

    static FieldMatrix identity(Field field, std::size_t n);

    const Field& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    Elem operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
    Elem& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
    Elem at(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, Elem v);
    FieldElement element(std::size_t r, std::size_t c) const { return {field_, at(r, c)}; }

    std::span<const Elem> row(std::size_t r) const { return {entries_.data() + r * cols_, cols_}; }
    std::span<Elem> row(std::size_t r) { return {entries_.data() + r * cols_, cols_}; }
    const std::vector<Elem>& entries() const noexcept { return entries_; }

    bool is_zero() const noexcept;
    FieldMatrix transpose() const;
    FieldMatrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t r0, std::size_t c0, const FieldMatrix& m);
    FieldMatrix select_columns(std::span<const std::size_t> columns) const;
    FieldMatrix scaled(Elem s) const;

    /// Row vector times matrix: v (length rows()) · this.
    std::vector<Elem> left_multiply(std::span<const Elem> v) const;

    FieldMatrix& operator+=(const FieldMatrix& o);
    FieldMatrix& operator-=(const FieldMatrix& o);
    friend FieldMatrix operator+(FieldMatrix a, const FieldMatrix& b) { return a += b; }
    friend FieldMatrix operator-(FieldMatrix a, const FieldMatrix& b) { return a -= b; }
    friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
    friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) noexcept {
        return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.entries_ == b.entries_;
    }

private:
    Field field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Elem> entries_;
};

FieldMatrix hconcat(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix vconcat(const FieldMatrix& a, const FieldMatrix& b);

/// Dimension of the row space. Columns are scanned left to right; the pivot is
/// the first remaining row (top-down) with a nonzero entry in that column.
std::size_t rank(const FieldMatrix& m);

/// X with A·X = B, free variables fixed to zero; nullopt when inconsistent.
std::optional<FieldMatrix> solve_right(const FieldMatrix& a, const FieldMatrix& b);

/// Inverse of a square matrix; nullopt when singular.
std::optional<FieldMatrix> inverse(const FieldMatrix& m);

/// Reduced row echelon form together with its pivot columns.
struct RowEchelon {
    FieldMatrix reduced;
    std::vector<std::size_t> pivots;
};
RowEchelon row_reduce(FieldMatrix m);

}  // namespace cnc
