#pragma once

#include <cnc/field.hpp>

#include <cstddef>
#include <utility>
#include <vector>

namespace cnc {

/// Univariate polynomial in z over a finite field, coefficients ascending.
/// Trailing zeros are trimmed, so the zero polynomial has no coefficients.
class Polynomial {
public:
    explicit Polynomial(Field field);
    Polynomial(Field field, std::vector<Elem> coeffs);

    static Polynomial constant(Field field, Elem c);
    /// c·z^k
    static Polynomial monomial(Field field, Elem c, std::size_t k);

    const Field& field() const noexcept { return field_; }
    const std::vector<Elem>& coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    Elem coeff(std::size_t k) const noexcept { return k < coeffs_.size() ? coeffs_[k] : 0; }
    Elem leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }
    /// Largest t with z^t dividing this; 0 for the zero polynomial.
    std::size_t valuation() const noexcept;

    Polynomial operator-() const;
    Polynomial scaled(Elem s) const;
    /// this / z^k; the low k coefficients must be zero.
    Polynomial shifted_down(std::size_t k) const;
    Polynomial shifted_up(std::size_t k) const;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

private:
    void trim();

    Field field_;
    std::vector<Elem> coeffs_;
};

/// Quotient and remainder; throws FieldError for a zero divisor.
std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

/// Monic greatest common divisor (zero only when both inputs are zero).
Polynomial gcd(Polynomial a, Polynomial b);

}  // namespace cnc
