#include "bincs/constructions.hpp"
#include "bincs/error.hpp"
#include "bincs/metrics.hpp"

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
    return ErrorKind::BadParams;
}

// Sentinel s stands for the zero block.
Index block_symbol(const BlockSpec& b, Index s) {
    if (is_zero_block(b)) return s;
    return std::get<CirculantBlock>(b).power;
}

void check_latin_grid(const BaseMatrix& b) {
    const Index s = b.s;
    for (Index i = 0; i < s; ++i) {
        std::set<Index> row, col;
        for (Index j = 0; j < s; ++j) {
            row.insert(block_symbol(b.grid[i][j], s));
            col.insert(block_symbol(b.grid[j][i], s));
        }
        // s symbols out of the s+1 possible, exactly one of them the zero block
        CHECK(row.size() == s);
        CHECK(col.size() == s);
        CHECK(row.count(s) == 1);
        CHECK(col.count(s) == 1);
    }
}

}  // namespace

TEST_CASE("additive q=3 grid is i*j mod 3") {
    const auto b = build_additive(3);
    CHECK(b.h.rows() == 9);
    CHECK(b.s == 3);
    CHECK(b.t == 0);
    for (Index j = 0; j < 3; ++j) CHECK(b.grid[0][j] == BlockSpec{CirculantBlock{0}});
    CHECK(b.grid[1][1] == BlockSpec{CirculantBlock{1}});
    CHECK(b.grid[2][2] == BlockSpec{CirculantBlock{1}});
    CHECK(b.grid[1][2] == BlockSpec{CirculantBlock{2}});
}

TEST_CASE("additive q=5 against brute force") {
    const auto b = build_additive(5);
    const auto d = oracle::to_dense(b.h);
    CHECK(oracle::dense_lambda(d) == 1);
    CHECK(oracle::edge_removal_girth(d) == 6u);
    CHECK(oracle::dense_coherence(d) == doctest::Approx(0.2).epsilon(1e-12));
    for (auto w : b.h.row_weights()) CHECK(w == 5);
}

TEST_CASE("additive q=31 is (31,31)-regular with t=0") {
    const auto b = build_additive(31);
    CHECK(b.h.rows() == 961);
    CHECK(b.h.cols() == 961);
    for (auto w : b.h.column_weights()) REQUIRE(w == 31);
    for (auto w : b.h.row_weights()) REQUIRE(w == 31);
    CHECK(verify_p1(b) == 0);
}

TEST_CASE("additive rejects anything but odd primes") {
    CHECK(kind_of([] { build_additive(6); }) == ErrorKind::NotOddPrime);
    CHECK(kind_of([] { build_additive(2); }) == ErrorKind::NotOddPrime);
    CHECK(kind_of([] { build_additive(9); }) == ErrorKind::NotOddPrime);
    try {
        build_additive(6);
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("q must be an odd prime") != std::string::npos);
    }
}

TEST_CASE("additive blocks in a column-block are pairwise distinct") {
    for (std::uint32_t q : {3u, 5u, 7u}) {
        const auto b = build_additive(q);
        for (Index j = 1; j < q; ++j)
            for (Index i = 0; i < q; ++i)
                for (Index i2 = i + 1; i2 < q; ++i2) CHECK(b.grid[i][j] != b.grid[i2][j]);
    }
}

TEST_CASE("rs-latin q=4 beta=1 has one zero per grid row and column, on the diagonal") {
    const auto b = build_rs_latin(4, 0);
    CHECK(b.h.rows() == 9);
    CHECK(b.s == 3);
    CHECK(b.t == 1);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(is_zero_block(b.grid[i][j]) == (i == j));
}

TEST_CASE("latin q=4 beta=1 has zero blocks exactly on the diagonal") {
    const auto b = build_latin(4, 0);
    for (Index i = 0; i < 3; ++i)
        for (Index j = 0; j < 3; ++j) CHECK(is_zero_block(b.grid[i][j]) == (i == j));
}

TEST_CASE("latin q=8 beta=alpha puts the zero at j = i+1 mod 7") {
    const auto b = build_latin(8, 1);
    for (Index i = 0; i < 7; ++i)
        for (Index j = 0; j < 7; ++j) CHECK(is_zero_block(b.grid[i][j]) == (j == (i + 1) % 7));
}

TEST_CASE("grid entries match field arithmetic") {
    for (std::uint32_t q : {5u, 8u, 9u, 16u}) {
        const Field f = Field::create(q);
        for (std::uint32_t bl = 0; bl + 1 < q; bl += 3) {
            const auto beta = f.alpha_pow(bl);
            const auto rs = build_rs_latin(beta);
            const auto lat = build_latin(beta);
            for (Index i = 0; i + 1 < q; ++i)
                for (Index j = 0; j + 1 < q; ++j) {
                    const auto e_rs = f.alpha_pow(std::int64_t(j) - std::int64_t(i)) - beta;
                    const auto e_lat = f.alpha_pow(i) * beta - f.alpha_pow(j);
                    const BlockSpec want_rs =
                        e_rs.is_zero() ? BlockSpec{ZeroBlock{}} : BlockSpec{CirculantBlock{e_rs.log()}};
                    const BlockSpec want_lat =
                        e_lat.is_zero() ? BlockSpec{ZeroBlock{}} : BlockSpec{CirculantBlock{e_lat.log()}};
                    CHECK(rs.grid[i][j] == want_rs);
                    CHECK(lat.grid[i][j] == want_lat);
                }
        }
    }
}

TEST_CASE("q=19 Latin families: 324x324, (17,17)-regular, t=1, lambda 1") {
    for (auto kind : {Construction::RsLatin, Construction::Latin}) {
        const auto b = build_base(kind, 19, 0);
        CHECK(b.h.rows() == 324);
        CHECK(b.h.cols() == 324);
        for (auto w : b.h.column_weights()) REQUIRE(w == 17);
        for (auto w : b.h.row_weights()) REQUIRE(w == 17);
        CHECK(verify_p1(b) == 1);
        CHECK(verify_p2(b));
    }
}

TEST_CASE("every beta gives a valid Latin base for q <= 9") {
    for (std::uint32_t q : {3u, 4u, 5u, 7u, 8u, 9u}) {
        CAPTURE(q);
        for (std::uint32_t bl = 0; bl + 1 < q; ++bl) {
            CAPTURE(bl);
            const auto rs = build_rs_latin(q, bl);
            const auto lat = build_latin(q, bl);
            check_latin_grid(rs);
            check_latin_grid(lat);
            CHECK(verify_p1(rs) == 1);
            CHECK(verify_p1(lat) == 1);
            CHECK(oracle::dense_lambda(oracle::to_dense(rs.h)) <= 1);
            CHECK(oracle::dense_lambda(oracle::to_dense(lat.h)) <= 1);
        }
    }
}

TEST_CASE("Latin families reject zero beta and tiny fields") {
    const Field f = Field::create(8);
    CHECK(kind_of([&] { build_latin(f.zero()); }) == ErrorKind::ZeroBeta);
    CHECK(kind_of([&] { build_rs_latin(f.zero()); }) == ErrorKind::ZeroBeta);
    CHECK(kind_of([] { build_rs_latin(2, 0); }) == ErrorKind::UnsupportedOrder);
    CHECK(kind_of([] { build_latin(6, 0); }) == ErrorKind::NotPrimePower);
    try {
        build_latin(f.zero());
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("beta must be nonzero") != std::string::npos);
    }
}

TEST_CASE("correspondence") {
    const Field f = Field::create(7);
    CHECK(correspondence(f.zero()) == BlockSpec{ZeroBlock{}});
    CHECK(correspondence(f.one()) == BlockSpec{CirculantBlock{0}});
    CHECK(correspondence(f.alpha_pow(2)) == BlockSpec{CirculantBlock{2}});
}

TEST_CASE("verify_p1 rejects uneven zero counts") {
    BaseMatrix b;
    b.s = 3;
    b.grid = BlockGrid{{ZeroBlock{}, ZeroBlock{}, CirculantBlock{0}},
                       {CirculantBlock{0}, ZeroBlock{}, CirculantBlock{1}},
                       {CirculantBlock{1}, CirculantBlock{2}, CirculantBlock{0}}};
    b.h = assemble(b.grid, 3);
    CHECK(kind_of([&] { verify_p1(b); }) == ErrorKind::NotRegular);
}

TEST_CASE("verify_p2") {
    BaseMatrix twins;
    twins.h = SparseBinaryMatrix(3, {{0, 1}, {0, 1}, {2}});
    CHECK_FALSE(verify_p2(twins));
    BaseMatrix disjoint;
    disjoint.h = SparseBinaryMatrix(4, {{0, 1}, {2, 3}});
    CHECK(verify_p2(disjoint));
    CHECK(verify_p2(build_rs_latin(19, 0)));
}

TEST_CASE("built bases meet the column-count bound and have mu = 1/(s-t)") {
    const std::vector<BaseMatrix> bases{build_additive(5), build_additive(7), build_rs_latin(8, 0),
                                        build_latin(9, 2), build_rs_latin(16, 0)};
    for (const auto& b : bases) {
        const std::uint64_t m = b.h.rows();
        const std::uint64_t gamma = b.s - b.t;
        CHECK(b.h.cols() <= johnson_columns(m, gamma, 1));
        const auto c = coherence(b.h);
        CHECK(c.exact() == Rational{1, gamma});
        CHECK(johnson_coherence_lower(m, m) <= 1.0 / double(gamma));
    }
}

TEST_CASE("construction names round trip") {
    for (auto c : {Construction::Additive, Construction::RsLatin, Construction::Latin})
        CHECK(parse_construction(to_string(c)) == c);
    CHECK(kind_of([] { parse_construction("bj"); }) == ErrorKind::BadParams);
}
