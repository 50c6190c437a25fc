#include <cnc/polynomial.hpp>

#include <algorithm>

namespace cnc {

Polynomial::Polynomial(Field field) : field_(std::move(field)) {}

Polynomial::Polynomial(Field field, std::vector<Elem> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    for (Elem c : coeffs_) {
        if (!field_.contains(c)) {
            throw FieldError(std::to_string(c) + " is not an element of " + field_.name());
        }
    }
    trim();
}

Polynomial Polynomial::constant(Field field, Elem c) { return Polynomial(std::move(field), {c}); }

Polynomial Polynomial::monomial(Field field, Elem c, std::size_t k) {
    std::vector<Elem> coeffs(k + 1, 0);
    coeffs[k] = c;
    return Polynomial(std::move(field), std::move(coeffs));
}

void Polynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) {
        coeffs_.pop_back();
    }
}

std::size_t Polynomial::valuation() const noexcept {
    std::size_t k = 0;
    while (k < coeffs_.size() && coeffs_[k] == 0) {
        ++k;
    }
    return k == coeffs_.size() ? 0 : k;
}

Polynomial Polynomial::operator-() const { return scaled(field_.neg(1)); }

Polynomial Polynomial::scaled(Elem s) const {
    std::vector<Elem> out(coeffs_.size());
    std::transform(coeffs_.begin(), coeffs_.end(), out.begin(), [&](Elem c) { return field_.mul(c, s); });
    return Polynomial(field_, std::move(out));
}

Polynomial Polynomial::shifted_down(std::size_t k) const {
    if (k > 0 && !is_zero() && valuation() < k) {
        throw FieldError("polynomial is not divisible by z^" + std::to_string(k));
    }
    if (k >= coeffs_.size()) {
        return Polynomial(field_);
    }
    return Polynomial(field_, std::vector<Elem>(coeffs_.begin() + static_cast<std::ptrdiff_t>(k), coeffs_.end()));
}

Polynomial Polynomial::shifted_up(std::size_t k) const {
    if (is_zero()) {
        return *this;
    }
    std::vector<Elem> out(k, 0);
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return Polynomial(field_, std::move(out));
}

namespace {
void require_same_field(const Polynomial& a, const Polynomial& b) {
    if (!(a.field() == b.field())) {
        throw FieldError("polynomials over different fields");
    }
}
}  // namespace

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    require_same_field(a, b);
    const Field& f = a.field_;
    std::vector<Elem> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f.add(a.coeff(i), b.coeff(i));
    }
    return Polynomial(f, std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    require_same_field(a, b);
    const Field& f = a.field_;
    std::vector<Elem> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = f.sub(a.coeff(i), b.coeff(i));
    }
    return Polynomial(f, std::move(out));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    require_same_field(a, b);
    const Field& f = a.field_;
    if (a.is_zero() || b.is_zero()) {
        return Polynomial(f);
    }
    std::vector<Elem> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) {
            continue;
        }
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] = f.add(out[i + j], f.mul(a.coeffs_[i], b.coeffs_[j]));
        }
    }
    return Polynomial(f, std::move(out));
}

std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b) {
    require_same_field(a, b);
    if (b.is_zero()) {
        throw FieldError("polynomial division by zero");
    }
    const Field& f = a.field();
    std::vector<Elem> rem = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    if (rem.size() <= db) {
        return {Polynomial(f), a};
    }
    std::vector<Elem> quot(rem.size() - db, 0);
    const Elem lead_inv = f.inv(b.leading());
    for (std::size_t k = rem.size(); k-- > db;) {
        const Elem c = f.mul(rem[k], lead_inv);
        if (c == 0) {
            continue;
        }
        quot[k - db] = c;
        for (std::size_t j = 0; j <= db; ++j) {
            rem[k - db + j] = f.sub(rem[k - db + j], f.mul(c, b.coeff(j)));
        }
    }
    return {Polynomial(f, std::move(quot)), Polynomial(f, std::move(rem))};
}

Polynomial gcd(Polynomial a, Polynomial b) {
    require_same_field(a, b);
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) {
        return a;
    }
    return a.scaled(a.field().inv(a.leading()));
}

}  // namespace cnc
