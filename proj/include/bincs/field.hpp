#pragma once

#include <cstdint>
#include <memory>
#include <vector>

namespace bincs {

class FieldElement;

/// Finite field GF(q), q = p^e <= 1024.
///
/// Elements are stored as integer codes in [0, q): the residue for prime
/// fields, and sum c_i p^i over the coefficient vector (c_0 .. c_{e-1}) for
/// extension fields. Multiplication goes through exp/log tables of the
/// designated primitive element alpha, so discrete logs are table lookups.
///
/// The modulus of an extension field is the smallest monic primitive
/// polynomial of degree e over GF(p), comparing coefficient vectors as
/// base-p integers. Prime fields use the smallest primitive root as alpha,
/// extension fields use the polynomial x. Both choices depend only on q.
///
/// A Field is an immutable handle; copies share the same tables.
class Field {
public:
    static constexpr std::uint32_t kMaxOrder = 1024;

    /// Throws NotPrimePower or UnsupportedOrder.
    static Field create(std::uint64_t q);

    std::uint32_t order() const;
    std::uint32_t characteristic() const;
    std::uint32_t degree() const;

    /// Monic modulus, lowest coefficient first, length degree() + 1.
    /// Prime fields report the trivial modulus x, i.e. {0, 1}.
    const std::vector<std::uint32_t>& modulus() const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement alpha() const;
    /// alpha^i, exponent taken mod q - 1 (negative allowed).
    FieldElement alpha_pow(std::int64_t i) const;
    /// Element with the given integer code; throws IndexOutOfRange.
    FieldElement element(std::uint32_t code) const;
    /// Element from coefficients c_0 .. c_{e-1}, each in [0, p).
    FieldElement from_coefficients(const std::vector<std::uint32_t>& coeffs) const;

    /// 0, alpha^0, alpha^1, ..., alpha^{q-2}.
    std::vector<FieldElement> elements_in_log_order() const;

    friend bool operator==(const Field& a, const Field& b) { return a.order() == b.order(); }

    struct Tables;

private:
    explicit Field(std::shared_ptr<const Tables> tables) : tables_(std::move(tables)) {}

    std::shared_ptr<const Tables> tables_;

    friend class FieldElement;
};

class FieldElement {
public:
    const Field& field() const { return field_; }
    std::uint32_t code() const { return code_; }
    std::vector<std::uint32_t> coefficients() const;
    bool is_zero() const { return code_ == 0; }

    /// Exponent i in [0, q-2] with alpha^i == *this. Throws LogOfZero.
    std::uint32_t log() const;

    FieldElement operator+(const FieldElement& other) const;
    FieldElement operator-(const FieldElement& other) const;
    FieldElement operator*(const FieldElement& other) const;
    FieldElement operator-() const;

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.code_ == b.code_;
    }

private:
    FieldElement(Field field, std::uint32_t code) : field_(std::move(field)), code_(code) {}
    void require_same_field(const FieldElement& other) const;

    Field field_;
    std::uint32_t code_;

    friend class Field;
};

inline FieldElement add(const FieldElement& a, const FieldElement& b) { return a + b; }
inline FieldElement sub(const FieldElement& a, const FieldElement& b) { return a - b; }
inline FieldElement mul(const FieldElement& a, const FieldElement& b) { return a * b; }
inline FieldElement neg(const FieldElement& a) { return -a; }
inline std::uint32_t discrete_log(const FieldElement& x) { return x.log(); }

/// Trial division; used by constructions and the catalog.
bool is_prime(std::uint64_t n);

/// (p, e) with q = p^e, or e == 0 when q is not a prime power.
struct PrimePower {
    std::uint32_t p = 0;
    std::uint32_t e = 0;
};
PrimePower factor_prime_power(std::uint64_t q);

/// True for every q accepted by Field::create.
bool is_supported_order(std::uint64_t q);

}  // namespace bincs
