#include "bincs/constructions.hpp"
#include "bincs/error.hpp"
#include "bincs/metrics.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

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

constexpr double kTol = 1e-12;

SparseBinaryMatrix identity(Index n) {
    std::vector<std::vector<Index>> cols(n);
    for (Index j = 0; j < n; ++j) cols[j] = {j};
    return SparseBinaryMatrix(n, std::move(cols));
}

}  // namespace

TEST_CASE("coherence of simple matrices") {
    const auto id = coherence(identity(4));
    CHECK(id.mu == 0.0);
    CHECK(id.lambda_max == 0);
    CHECK(id.witness == std::pair<Index, Index>{0, 1});
    CHECK(id.exact() == Rational{0, 1});

    const auto twins = coherence(SparseBinaryMatrix(3, {{0, 2}, {1}, {0, 2}}));
    CHECK(twins.mu == 1.0);
    CHECK(twins.lambda_max == 2);
    CHECK(twins.witness == std::pair<Index, Index>{0, 2});

    CHECK(kind_of([] { coherence(SparseBinaryMatrix(3, {{0}})); }) == ErrorKind::TooFewColumns);
    CHECK(kind_of([] { coherence(SparseBinaryMatrix(3, {{0}, {}})); }) == ErrorKind::ZeroColumn);
}

TEST_CASE("q=19 rs-latin base has mu = 1/17") {
    const auto b = build_rs_latin(19, 0);
    const auto c = coherence(b.h);
    CHECK(c.lambda_max == 1);
    CHECK(c.exact() == Rational{1, 17});
    CHECK(c.mu == doctest::Approx(1.0 / 17).epsilon(kTol));
    CHECK(c.min_col_weight == 17);
    CHECK(c.max_col_weight == 17);
}

TEST_CASE("coherence methods agree with the dense oracle") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 60; ++trial) {
        const Index m = 3 + static_cast<Index>(rng() % 20);
        const Index n = 2 + static_cast<Index>(rng() % 40);
        const auto h = oracle::random_matrix(rng, m, n, 1, std::min<Index>(m, 6));
        const auto d = oracle::to_dense(h);
        const auto a = coherence(h, CoherenceMethod::Pairwise, 1);
        const auto b = coherence(h, CoherenceMethod::RowAccumulation);
        const auto c = coherence(h, CoherenceMethod::Pairwise, 4);
        CHECK(a.mu == doctest::Approx(oracle::dense_coherence(d)).epsilon(kTol));
        CHECK(static_cast<int>(a.lambda_max) == oracle::dense_lambda(d));
        CHECK(a.mu == b.mu);
        CHECK(a.witness == b.witness);
        CHECK(a.lambda_max == b.lambda_max);
        CHECK(a.witness == c.witness);
        // the witness attains the maximum
        const double w = oracle::dense_inner(d, a.witness.first, a.witness.second) /
                         std::sqrt(double(h.column_weight(a.witness.first)) * h.column_weight(a.witness.second));
        CHECK(w == doctest::Approx(a.mu).epsilon(kTol));
    }
}

TEST_CASE("uniform column weight gives mu = lambda / gamma") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 30; ++trial) {
        const Index gamma = 2 + static_cast<Index>(rng() % 4);
        const auto h = oracle::random_matrix(rng, 12, 15, gamma, gamma);
        const auto c = coherence(h);
        CHECK(c.mu == doctest::Approx(double(c.lambda_max) / gamma).epsilon(kTol));
        CHECK((c.mu == 0.0) == (c.lambda_max == 0));
    }
}

TEST_CASE("girth of small graphs") {
    CHECK(girth(SparseBinaryMatrix(2, {{0, 1}, {0, 1}})) == Girth::finite(4));
    CHECK(girth(SparseBinaryMatrix(3, {{0, 1, 2}})).is_infinite());
    CHECK(girth(identity(5)).is_infinite());
    CHECK(girth(build_additive(5).h) == Girth::finite(6));
    CHECK(Girth::infinite().exceeds(1000000));
    CHECK(Girth::finite(6).exceeds(4));
    CHECK_FALSE(Girth::finite(4).exceeds(4));
    CHECK(Girth::infinite().to_string() == "inf");
    CHECK(kind_of([] { (void)Girth::infinite().length(); }) == ErrorKind::BadParams);
}

TEST_CASE("girth agrees with the edge-removal oracle and the lambda criterion") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 100; ++trial) {
        const Index m = 4 + static_cast<Index>(rng() % 12);
        const Index n = 2 + static_cast<Index>(rng() % 14);
        const auto h = oracle::random_matrix(rng, m, n, 2, std::min<Index>(m, 4));
        const auto g = girth(h);
        const auto ref = oracle::edge_removal_girth(oracle::to_dense(h));
        if (ref) {
            REQUIRE_FALSE(g.is_infinite());
            CHECK(g.length() == *ref);
            CHECK(g.length() % 2 == 0);
        } else {
            CHECK(g.is_infinite());
        }
        CHECK(g.exceeds(4) == (max_inner_product(h) <= 1));
    }
}

TEST_CASE("welch bound") {
    CHECK(welch_bound(100, 300) == doctest::Approx(0.08178608201095307).epsilon(kTol));
    CHECK(std::abs(welch_bound(100, 300) - 0.0817861) < 1e-7);
    CHECK(welch_bound(3, 4) == doctest::Approx(1.0 / 3).epsilon(kTol));
    CHECK(welch_bound(50, 50) == 0.0);
    CHECK(kind_of([] { welch_bound(1, 4); }) == ErrorKind::BadShape);
    CHECK(kind_of([] { welch_bound(5, 4); }) == ErrorKind::BadShape);
}

TEST_CASE("johnson coherence lower bound") {
    CHECK(johnson_coherence_lower(100, 300) == doctest::Approx(0.1595842817374363).epsilon(kTol));
    CHECK(johnson_coherence_lower(25, 25) == doctest::Approx(0.18435120420408552).epsilon(kTol));
    CHECK(std::abs(johnson_coherence_lower(25, 25) - 0.1843512) < 1e-7);
    CHECK(kind_of([] { johnson_coherence_lower(1, 5); }) == ErrorKind::BadShape);
}

TEST_CASE("johnson lower bound beats welch for m < n") {
    for (std::uint64_t m : {2u, 3u, 10u, 50u, 100u, 200u, 500u, 1000u})
        for (std::uint64_t n = m + 1; n <= 20 * m; n += std::max<std::uint64_t>(1, m / 3))
            CHECK(johnson_coherence_lower(m, n) > welch_bound(m, n) + kTol);
}

TEST_CASE("bound monotonicity") {
    for (std::uint64_t n : {50u, 300u, 1000u})
        for (std::uint64_t m = 2; m < 200; ++m)
            CHECK(johnson_coherence_lower(m + 1, n) < johnson_coherence_lower(m, n));
    for (std::uint64_t m : {2u, 50u, 100u})
        for (std::uint64_t n = m; n < 1000; ++n) CHECK(welch_bound(m, n + 1) > welch_bound(m, n));
}

TEST_CASE("johnson column bound") {
    CHECK(johnson_columns(16, 4, 1) == 20);
    CHECK(johnson_columns(5, 2, 1) == 10);
    for (std::uint64_t q : {4u, 5u, 7u, 9u}) CHECK(johnson_columns(q * q, q, 1) == q * q + q);
    // three-level nesting: floor(10/3 floor(9/2 floor(8/1))) = floor(10/3 * 36) = 120
    CHECK(johnson_columns(10, 3, 2) == 120);
    CHECK(kind_of([] { johnson_columns(10, 3, 0); }) == ErrorKind::BadParams);
    CHECK(kind_of([] { johnson_columns(10, 3, 3); }) == ErrorKind::BadParams);
    CHECK(kind_of([] { johnson_columns(2, 3, 1); }) == ErrorKind::BadParams);
}

TEST_CASE("johnson column bound against the real-valued nesting") {
    for (std::uint64_t m = 3; m < 40; ++m)
        for (std::uint64_t gamma = 2; gamma <= m; ++gamma)
            for (std::uint64_t lambda = 1; lambda < gamma && lambda <= 3; ++lambda) {
                // floor(a/b * v) with v integral equals floor(a*v / b)
                std::uint64_t v = (m - lambda) / (gamma - lambda);
                for (std::uint64_t i = lambda; i-- > 0;) v = static_cast<std::uint64_t>(
                    std::floor(static_cast<long double>(m - i) * v / (gamma - i) + 1e-12L));
                CHECK(johnson_columns(m, gamma, lambda) == v);
            }
}

TEST_CASE("theorem 2 upper bound") {
    CHECK(theorem2_upper(100, 18, 1) == doctest::Approx(0.25).epsilon(kTol));
    CHECK(theorem2_upper(361, 19, 0) == doctest::Approx(1.0 / 19).epsilon(kTol));
    CHECK(kind_of([] { theorem2_upper(20, 18, 1); }) == ErrorKind::DegenerateWeight);
    CHECK(kind_of([] { theorem2_upper(20, 0, 1); }) == ErrorKind::BadParams);
}

TEST_CASE("rip order") {
    CHECK(rip_order(Rational{1, 17}) == 17);
    CHECK(rip_order(Rational{1, 1}) == 1);
    CHECK(rip_order(Rational{2, 5}) == 3);
    CHECK(rip_order(Rational{3, 7}) == 3);  // k < 10/3
    CHECK(rip_order(1.0 / 17) == 17);
    CHECK(rip_order(0.4) == 3);
    CHECK(rip_order(1.0) == 1);
    CHECK(kind_of([] { rip_order(Rational{0, 1}); }) == ErrorKind::BadMu);
    CHECK(kind_of([] { rip_order(Rational{3, 2}); }) == ErrorKind::BadMu);
    CHECK(kind_of([] { rip_order(0.0); }) == ErrorKind::BadMu);
    CHECK(kind_of([] { rip_order(std::nan("")); }) == ErrorKind::BadMu);
    for (std::uint64_t den = 1; den < 60; ++den)
        for (std::uint64_t num = 1; num <= den; ++num) {
            // brute force: largest k with k * num < num + den
            std::uint64_t k = 0;
            while ((k + 1) * num < num + den) ++k;
            CHECK(rip_order(Rational{num, den}) == k);
            CHECK(rip_order(double(num) / double(den)) == k);
        }
}

TEST_CASE("bounds report and serialization") {
    const auto b = build_rs_latin(19, 0);
    const auto c = coherence(b.h);
    const auto r = bounds_report(b.h, c, BlockDeclaration{18, 1});
    CHECK(r.m == 324);
    CHECK(r.welch == 0.0);
    REQUIRE(r.johnson_columns.has_value());
    CHECK(*r.johnson_columns >= 324);
    CHECK(r.theorem2_upper == doctest::Approx(1.0 / 17));
    CHECK(r.rip_order == 17u);

    const std::string kv = to_key_value(c);
    CHECK(kv.find("mu=0.058824\n") != std::string::npos);
    CHECK(kv.find("mu_exact=1/17\n") != std::string::npos);
    CHECK(kv.find("lambda=1\n") != std::string::npos);
    const std::string bkv = to_key_value(r);
    CHECK(bkv.find("rip_order=17\n") != std::string::npos);
    CHECK(bkv.find("theorem2_upper=0.058824\n") != std::string::npos);
    CHECK(to_csv_row(c).rfind("0.0588235,1/17,1,", 0) == 0);

    const auto plain = bounds_report(b.h, c);
    CHECK_FALSE(plain.theorem2_upper.has_value());
    CHECK(to_key_value(plain).find("theorem2_upper=n/a\n") != std::string::npos);
    CHECK(bounds_csv_header() == "m,n,welch,johnson_lower,johnson_columns,theorem2_upper,rip_order\n");
}
