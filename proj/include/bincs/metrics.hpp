#pragma once

#include "bincs/sparse_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>

namespace bincs {

/// Nonnegative fraction num/den in lowest terms.
struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    static Rational reduced(std::uint64_t num, std::uint64_t den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

struct CoherenceReport {
    double mu = 0.0;
    /// Largest raw inner product over distinct column pairs.
    Index lambda_max = 0;
    /// Lexicographically smallest pair attaining mu.
    std::pair<Index, Index> witness{0, 1};
    Index witness_inner = 0;
    std::uint64_t witness_weight_product = 1;
    Index min_col_weight = 0;
    Index max_col_weight = 0;

    /// mu as a fraction when the witness weight product is a perfect square.
    std::optional<Rational> exact() const;
};

enum class CoherenceMethod {
    Auto,             ///< pairwise up to kPairwiseColumnLimit columns, row accumulation beyond
    Pairwise,         ///< merge every column pair
    RowAccumulation,  ///< for each column, bump counters through the rows it touches
};

inline constexpr Index kPairwiseColumnLimit = 8192;

/// Exact coherence with integer inner products. Throws TooFewColumns or
/// ZeroColumn. `threads` == 0 picks the hardware concurrency; results do not
/// depend on it.
CoherenceReport coherence(const SparseBinaryMatrix& h, CoherenceMethod method = CoherenceMethod::Auto,
                          unsigned threads = 0);

/// Max inner product over distinct columns; zero columns allowed.
Index max_inner_product(const SparseBinaryMatrix& h);

/// Tanner-graph girth. Acyclic graphs have infinite girth.
class Girth {
public:
    static Girth infinite() { return Girth{}; }
    static Girth finite(std::uint32_t length) { return Girth{length}; }

    bool is_infinite() const { return !length_.has_value(); }
    /// Throws BadParams when infinite.
    std::uint32_t length() const;
    /// Infinite girth exceeds every bound.
    bool exceeds(std::uint32_t bound) const { return is_infinite() || *length_ > bound; }
    std::string to_string() const;

    friend bool operator==(const Girth&, const Girth&) = default;

private:
    Girth() = default;
    explicit Girth(std::uint32_t length) : length_(length) {}
    std::optional<std::uint32_t> length_;
};

/// Shortest cycle via breadth-first search from every variable node.
Girth girth(const SparseBinaryMatrix& h);

/// sqrt((n - m) / (m (n - 1))); throws BadShape unless 2 <= m <= n.
double welch_bound(std::uint64_t m, std::uint64_t n);

/// Nested-floor Johnson column bound, evaluated innermost first:
/// floor(m/g floor((m-1)/(g-1) ... floor((m-l)/(g-l))...)).
/// Throws BadParams unless 1 <= lambda < gamma <= m.
std::uint64_t johnson_columns(std::uint64_t m, std::uint64_t gamma, std::uint64_t lambda);

/// 2n / (n + sqrt(n^2 + 4 m n (m - 1))); lower bound on the coherence of a
/// uniform-weight binary matrix with girth > 4. Throws BadShape.
double johnson_coherence_lower(std::uint64_t m, std::uint64_t n);

/// 1 / (floor(m/s) - t). Throws DegenerateWeight when floor(m/s) <= t.
double theorem2_upper(std::uint64_t m, std::uint64_t s, std::uint64_t t);

/// Largest integer k with k < 1 + 1/mu. Throws BadMu unless 0 < mu <= 1.
std::uint64_t rip_order(const Rational& mu);
/// Floating-point variant; 1/mu within 1e-9 relative of an integer is
/// treated as that integer.
std::uint64_t rip_order(double mu);

/// Block structure a matrix is claimed to come from.
struct BlockDeclaration {
    std::uint64_t s = 0;
    std::uint64_t t = 0;
};

/// Each bound is empty when its preconditions do not hold for the matrix.
struct BoundsReport {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    std::optional<double> welch;
    std::optional<double> johnson_lower;
    std::optional<std::uint64_t> johnson_columns;
    std::optional<double> theorem2_upper;
    std::optional<std::uint64_t> rip_order;
};

BoundsReport bounds_report(const SparseBinaryMatrix& h, const CoherenceReport& coh,
                           std::optional<BlockDeclaration> declared = std::nullopt);

/// Flat key=value lines, newline-terminated.
std::string to_key_value(const CoherenceReport& r);
std::string to_key_value(const BoundsReport& r);

std::string coherence_csv_header();
std::string to_csv_row(const CoherenceReport& r);
std::string bounds_csv_header();
std::string to_csv_row(const BoundsReport& r);

}  // namespace bincs
