#include "bincs/error.hpp"
#include "bincs/field.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <set>

using namespace bincs;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an error");
    return ErrorKind::BadParams;
}

}  // namespace

TEST_CASE("prime field uses the smallest primitive root") {
    const Field f = Field::create(7);
    CHECK(f.characteristic() == 7);
    CHECK(f.degree() == 1);
    // orders mod 7: 2 -> 3, 3 -> 6
    CHECK(f.alpha().code() == 3);
    CHECK((f.element(3) * f.element(5)).code() == 1);
    CHECK(discrete_log(f.element(2)) == 2);
    CHECK(discrete_log(f.one()) == 0);
}

TEST_CASE("GF(8) modulus and multiplication") {
    const Field f = Field::create(8);
    CHECK(f.modulus() == std::vector<std::uint32_t>{1, 1, 0, 1});  // x^3 + x + 1
    CHECK(f.alpha().coefficients() == std::vector<std::uint32_t>{0, 1, 0});
    // alpha^2 * alpha = alpha^3 = alpha + 1
    const FieldElement prod = f.alpha_pow(2) * f.alpha();
    CHECK(prod.coefficients() == std::vector<std::uint32_t>{1, 1, 0});
}

TEST_CASE("pinned moduli for the orders used in experiments") {
    CHECK(Field::create(4).modulus() == std::vector<std::uint32_t>{1, 1, 1});
    CHECK(Field::create(9).modulus() == std::vector<std::uint32_t>{2, 1, 1});
    CHECK(Field::create(16).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    CHECK(Field::create(32).modulus() == std::vector<std::uint32_t>{1, 0, 1, 0, 0, 1});
    CHECK(Field::create(64).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0, 1});
    CHECK(Field::create(19).alpha().code() == 2);
    CHECK(Field::create(23).alpha().code() == 5);
    CHECK(Field::create(31).alpha().code() == 3);
    CHECK(Field::create(61).alpha().code() == 2);
}

TEST_CASE("field_new errors") {
    CHECK(kind_of([] { Field::create(6); }) == ErrorKind::NotPrimePower);
    CHECK(kind_of([] { Field::create(1); }) == ErrorKind::NotPrimePower);
    CHECK(kind_of([] { Field::create(2048); }) == ErrorKind::UnsupportedOrder);
    CHECK(kind_of([] { Field::create(1031); }) == ErrorKind::UnsupportedOrder);
    CHECK_NOTHROW(Field::create(1021));
    CHECK_NOTHROW(Field::create(1024));
    CHECK(kind_of([] { Field::create(7).zero().log(); }) == ErrorKind::LogOfZero);
    CHECK(kind_of([] { (void)(Field::create(7).one() + Field::create(5).one()); }) == ErrorKind::FieldMismatch);
}

TEST_CASE("alpha generates every supported field up to 64") {
    for (std::uint32_t q = 2; q <= 64; ++q) {
        if (!is_supported_order(q)) continue;
        CAPTURE(q);
        const Field f = Field::create(q);
        std::set<std::uint32_t> codes;
        for (const auto& x : f.elements_in_log_order()) codes.insert(x.code());
        CHECK(codes.size() == q);
        for (std::uint32_t i = 0; i + 1 < q; ++i) CHECK(f.alpha_pow(i).log() == i);
    }
}

TEST_CASE("every supported order up to 1024 constructs") {
    std::size_t count = 0;
    for (std::uint32_t q = 2; q <= Field::kMaxOrder; ++q) {
        if (!is_supported_order(q)) continue;
        const Field f = Field::create(q);
        CHECK(f.alpha_pow(q - 1) == f.one());
        ++count;
    }
    CHECK(count == 198);
}

TEST_CASE("table multiplication agrees with schoolbook polynomial arithmetic") {
    for (std::uint32_t q : {4u, 8u, 9u, 16u, 25u, 27u, 32u, 49u, 64u}) {
        CAPTURE(q);
        const Field f = Field::create(q);
        const auto elems = f.elements_in_log_order();
        for (const auto& a : elems) {
            for (const auto& b : elems) {
                const auto expected =
                    oracle::poly_mulmod(a.coefficients(), b.coefficients(), f.modulus(), f.characteristic());
                REQUIRE((a * b).coefficients() == expected);
            }
        }
    }
}

TEST_CASE("exponent law and additive inverses, exhaustive for small q") {
    for (std::uint32_t q : {3u, 5u, 7u, 8u, 9u, 11u, 13u, 16u}) {
        CAPTURE(q);
        const Field f = Field::create(q);
        for (std::uint32_t i = 0; i + 1 < q; ++i) {
            for (std::uint32_t j = 0; j + 1 < q; ++j) {
                CHECK(f.alpha_pow(i) * f.alpha_pow(j) == f.alpha_pow((i + j) % (q - 1)));
            }
        }
        for (const auto& a : f.elements_in_log_order()) {
            CHECK(add(a, neg(a)) == f.zero());
            CHECK(sub(a, a) == f.zero());
            for (const auto& b : f.elements_in_log_order()) {
                CHECK(a + b == b + a);
                CHECK(sub(add(a, b), b) == a);
            }
        }
    }
}

TEST_CASE("discrete log is a bijection onto [0, q-2]") {
    for (std::uint32_t q : {19u, 23u, 32u, 61u, 64u}) {
        const Field f = Field::create(q);
        std::set<std::uint32_t> logs;
        for (std::uint32_t code = 1; code < q; ++code) logs.insert(f.element(code).log());
        CHECK(logs.size() == q - 1);
        CHECK(*logs.rbegin() == q - 2);
    }
}
