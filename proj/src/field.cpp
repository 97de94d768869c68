#include "bincs/field.hpp"

#include "bincs/error.hpp"

#include <string>

namespace bincs {

struct Field::Tables {
    std::uint32_t q = 0;
    std::uint32_t p = 0;
    std::uint32_t e = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint32_t> exp;  // exp[i] = code of alpha^i, i in [0, q-1)
    std::vector<std::uint32_t> log;  // log[code], log[0] unused

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
        if (e == 1) return (a + b) % p;
        std::uint32_t out = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        return out;
    }

    std::uint32_t neg(std::uint32_t a) const {
        if (e == 1) return (p - a) % p;
        std::uint32_t out = 0;
        std::uint32_t place = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        return out;
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        if (a == 0 || b == 0) return 0;
        return exp[(log[a] + log[b]) % (q - 1)];
    }
};

namespace {

using Poly = std::vector<std::uint32_t>;  // lowest coefficient first

std::uint32_t ipow(std::uint32_t base, std::uint32_t e) {
    std::uint32_t r = 1;
    while (e-- > 0) r *= base;
    return r;
}

Poly decode(std::uint32_t code, std::uint32_t p, std::uint32_t len) {
    Poly c(len, 0);
    for (std::uint32_t i = 0; i < len; ++i) {
        c[i] = code % p;
        code /= p;
    }
    return c;
}

std::uint32_t encode(const Poly& c, std::uint32_t p) {
    std::uint32_t code = 0;
    for (std::size_t i = c.size(); i-- > 0;) code = code * p + c[i];
    return code;
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // p is prime and small: Fermat.
    std::uint64_t r = 1;
    std::uint64_t b = a % p;
    std::uint32_t k = p - 2;
    while (k > 0) {
        if (k & 1u) r = r * b % p;
        b = b * b % p;
        k >>= 1;
    }
    return static_cast<std::uint32_t>(r);
}

// Remainder of a modulo the monic-or-not divisor d over GF(p); d nonzero.
Poly poly_mod(Poly a, Poly d, std::uint32_t p) {
    while (!d.empty() && d.back() == 0) d.pop_back();
    const std::uint32_t lead_inv = inv_mod(d.back(), p);
    const std::size_t dd = d.size() - 1;
    for (std::size_t i = a.size(); i-- > dd;) {
        if (a[i] == 0) continue;
        const std::uint64_t f = std::uint64_t{a[i]} * lead_inv % p;
        for (std::size_t j = 0; j <= dd; ++j) {
            const std::uint64_t sub = f * d[j] % p;
            a[i - dd + j] = static_cast<std::uint32_t>((a[i - dd + j] + p - sub) % p);
        }
    }
    a.resize(dd);
    return a;
}

// Exhaustive search for a monic factor of degree 1 .. deg/2.
bool is_irreducible(const Poly& f, std::uint32_t p) {
    const std::uint32_t deg = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
        const std::uint32_t count = ipow(p, d);
        for (std::uint32_t low = 0; low < count; ++low) {
            Poly g = decode(low, p, d);
            g.push_back(1);
            Poly r = poly_mod(f, g, p);
            bool zero = true;
            for (auto c : r) zero = zero && c == 0;
            if (zero) return false;
        }
    }
    return true;
}

// Powers of x modulo f; empty when x does not have order p^e - 1.
std::vector<std::uint32_t> powers_of_x(const Poly& f, std::uint32_t p, std::uint32_t q) {
    const std::uint32_t e = static_cast<std::uint32_t>(f.size() - 1);
    std::vector<std::uint32_t> exp;
    exp.reserve(q - 1);
    std::vector<bool> seen(q, false);
    Poly cur(e, 0);
    cur[0] = 1;
    for (std::uint32_t i = 0; i + 1 < q; ++i) {
        const std::uint32_t code = encode(cur, p);
        if (seen[code]) return {};
        seen[code] = true;
        exp.push_back(code);
        // cur *= x, then reduce by the monic f
        const std::uint32_t top = cur[e - 1];
        for (std::uint32_t j = e - 1; j > 0; --j) cur[j] = cur[j - 1];
        cur[0] = 0;
        if (top != 0) {
            for (std::uint32_t j = 0; j < e; ++j) {
                cur[j] = static_cast<std::uint32_t>((cur[j] + std::uint64_t{p - top} * f[j]) % p);
            }
        }
    }
    return exp;
}

std::shared_ptr<const Field::Tables> build_tables(std::uint32_t q, std::uint32_t p, std::uint32_t e) {
    auto t = std::make_shared<Field::Tables>();
    t->q = q;
    t->p = p;
    t->e = e;
    if (e == 1) {
        t->modulus = {0, 1};
        for (std::uint32_t g = 1; g < p; ++g) {
            std::vector<std::uint32_t> exp;
            std::vector<bool> seen(q, false);
            std::uint32_t x = 1;
            bool ok = true;
            for (std::uint32_t i = 0; i + 1 < q; ++i) {
                if (seen[x]) {
                    ok = false;
                    break;
                }
                seen[x] = true;
                exp.push_back(x);
                x = static_cast<std::uint32_t>(std::uint64_t{x} * g % p);
            }
            if (ok && x == 1) {
                t->exp = std::move(exp);
                break;
            }
        }
    } else {
        const std::uint32_t candidates = ipow(p, e);
        for (std::uint32_t low = 0; low < candidates; ++low) {
            Poly f = decode(low, p, e);
            f.push_back(1);
            if (f[0] == 0) continue;
            auto exp = powers_of_x(f, p, q);
            if (exp.empty()) continue;
            if (!is_irreducible(f, p)) {
                throw Error(ErrorKind::UnsupportedOrder,
                            "internal: primitive candidate failed irreducibility check");
            }
            t->modulus = std::move(f);
            t->exp = std::move(exp);
            break;
        }
    }
    if (t->exp.size() != q - 1) {
        throw Error(ErrorKind::UnsupportedOrder,
                    "no primitive element found for q = " + std::to_string(q));
    }
    t->log.assign(q, 0);
    for (std::uint32_t i = 0; i + 1 < q; ++i) t->log[t->exp[i]] = i;
    return t;
}

}  // namespace

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

PrimePower factor_prime_power(std::uint64_t q) {
    if (q < 2) return {};
    std::uint64_t p = 0;
    for (std::uint64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    if (p == 0) p = q;
    std::uint32_t e = 0;
    while (q % p == 0) {
        q /= p;
        ++e;
    }
    if (q != 1 || p > UINT32_MAX) return {};
    return {static_cast<std::uint32_t>(p), e};
}

bool is_supported_order(std::uint64_t q) {
    return q >= 2 && q <= Field::kMaxOrder && factor_prime_power(q).e > 0;
}

Field Field::create(std::uint64_t q) {
    const PrimePower pp = factor_prime_power(q);
    if (pp.e == 0) {
        throw Error(ErrorKind::NotPrimePower, "q = " + std::to_string(q) + " is not a prime power");
    }
    if (q > kMaxOrder) {
        throw Error(ErrorKind::UnsupportedOrder,
                    "q = " + std::to_string(q) + " exceeds the supported maximum " +
                        std::to_string(kMaxOrder));
    }
    return Field(build_tables(static_cast<std::uint32_t>(q), pp.p, pp.e));
}

std::uint32_t Field::order() const { return tables_->q; }
std::uint32_t Field::characteristic() const { return tables_->p; }
std::uint32_t Field::degree() const { return tables_->e; }
const std::vector<std::uint32_t>& Field::modulus() const { return tables_->modulus; }

FieldElement Field::zero() const { return FieldElement(*this, 0); }
FieldElement Field::one() const { return FieldElement(*this, 1); }
FieldElement Field::alpha() const { return alpha_pow(1); }

FieldElement Field::alpha_pow(std::int64_t i) const {
    const std::int64_t n = tables_->q - 1;
    const std::int64_t r = ((i % n) + n) % n;
    return FieldElement(*this, tables_->exp[static_cast<std::size_t>(r)]);
}

FieldElement Field::element(std::uint32_t code) const {
    if (code >= tables_->q) {
        throw Error(ErrorKind::IndexOutOfRange,
                    "element code " + std::to_string(code) + " outside GF(" +
                        std::to_string(tables_->q) + ")");
    }
    return FieldElement(*this, code);
}

FieldElement Field::from_coefficients(const std::vector<std::uint32_t>& coeffs) const {
    if (coeffs.size() != tables_->e) {
        throw Error(ErrorKind::BadParams, "expected " + std::to_string(tables_->e) + " coefficients");
    }
    for (auto c : coeffs) {
        if (c >= tables_->p) throw Error(ErrorKind::BadParams, "coefficient outside [0, p)");
    }
    return FieldElement(*this, encode(coeffs, tables_->p));
}

std::vector<FieldElement> Field::elements_in_log_order() const {
    std::vector<FieldElement> out;
    out.reserve(tables_->q);
    out.push_back(zero());
    for (auto code : tables_->exp) out.push_back(FieldElement(*this, code));
    return out;
}

std::vector<std::uint32_t> FieldElement::coefficients() const {
    return decode(code_, field_.tables_->p, field_.tables_->e);
}

std::uint32_t FieldElement::log() const {
    if (code_ == 0) throw Error(ErrorKind::LogOfZero, "discrete log of zero is undefined");
    return field_.tables_->log[code_];
}

void FieldElement::require_same_field(const FieldElement& other) const {
    if (!(field_ == other.field_)) {
        throw Error(ErrorKind::FieldMismatch,
                    "GF(" + std::to_string(field_.order()) + ") element combined with GF(" +
                        std::to_string(other.field_.order()) + ") element");
    }
}

FieldElement FieldElement::operator+(const FieldElement& other) const {
    require_same_field(other);
    return FieldElement(field_, field_.tables_->add(code_, other.code_));
}

FieldElement FieldElement::operator-(const FieldElement& other) const {
    require_same_field(other);
    return FieldElement(field_, field_.tables_->add(code_, field_.tables_->neg(other.code_)));
}

FieldElement FieldElement::operator*(const FieldElement& other) const {
    require_same_field(other);
    return FieldElement(field_, field_.tables_->mul(code_, other.code_));
}

FieldElement FieldElement::operator-() const {
    return FieldElement(field_, field_.tables_->neg(code_));
}

}  // namespace bincs
