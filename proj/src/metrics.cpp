#include "bincs/metrics.hpp"

#include "bincs/error.hpp"
#include "bincs/format.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>
#include <vector>

namespace bincs {

namespace {
__extension__ typedef unsigned __int128 u128;
}  // namespace

Rational Rational::reduced(std::uint64_t num, std::uint64_t den) {
    if (den == 0) throw Error(ErrorKind::BadParams, "zero denominator");
    const std::uint64_t g = std::gcd(num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
}

namespace {

std::uint64_t isqrt(std::uint64_t v) {
    auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(v)));
    while (r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

// Candidate pair for the coherence maximum: inner / sqrt(weight_product).
struct Candidate {
    Index i = 0;
    Index j = 1;
    Index inner = 0;
    std::uint64_t weight_product = 1;
};

// a better than b: strictly larger normalized value, or equal value at a
// lexicographically smaller pair.
bool better(const Candidate& a, const Candidate& b) {
    const u128 lhs = u128{a.inner} * a.inner * b.weight_product;
    const u128 rhs = u128{b.inner} * b.inner * a.weight_product;
    if (lhs != rhs) return lhs > rhs;
    return std::pair{a.i, a.j} < std::pair{b.i, b.j};
}

struct ScanResult {
    Candidate best;
    Index lambda = 0;
};

ScanResult merge_scan(const ScanResult& a, const ScanResult& b) {
    ScanResult out;
    out.best = better(a.best, b.best) ? a.best : b.best;
    out.lambda = std::max(a.lambda, b.lambda);
    return out;
}

ScanResult pairwise_scan(const SparseBinaryMatrix& h, unsigned threads) {
    const Index n = h.cols();
    const auto weights = h.column_weights();
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = std::min<unsigned>(threads, std::max<Index>(1, n / 64));
    threads = std::max(1u, threads);

    std::vector<ScanResult> partial(threads);
    auto worker = [&](unsigned w) {
        ScanResult local;
        // Interleaved rows of the pair triangle keep the load balanced.
        for (Index i = w; i < n; i += threads) {
            const auto ci = h.column(i);
            for (Index j = i + 1; j < n; ++j) {
                const Index inner = sorted_intersection_size(ci, h.column(j));
                local.lambda = std::max(local.lambda, inner);
                if (inner == 0) continue;
                Candidate c{i, j, inner, std::uint64_t{weights[i]} * weights[j]};
                if (better(c, local.best)) local.best = c;
            }
        }
        partial[w] = local;
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker, w);
    }
    ScanResult total;
    for (const auto& p : partial) total = merge_scan(total, p);
    return total;
}

ScanResult row_accumulation_scan(const SparseBinaryMatrix& h) {
    const Index n = h.cols();
    const auto weights = h.column_weights();
    const auto rows = h.row_lists();
    std::vector<Index> acc(n, 0);
    std::vector<Index> touched;
    ScanResult out;
    for (Index i = 0; i < n; ++i) {
        touched.clear();
        for (Index r : h.column(i)) {
            const auto& row = rows[r];
            for (auto it = std::upper_bound(row.begin(), row.end(), i); it != row.end(); ++it) {
                if (acc[*it]++ == 0) touched.push_back(*it);
            }
        }
        for (Index j : touched) {
            const Index inner = acc[j];
            acc[j] = 0;
            out.lambda = std::max(out.lambda, inner);
            Candidate c{i, j, inner, std::uint64_t{weights[i]} * weights[j]};
            if (better(c, out.best)) out.best = c;
        }
    }
    return out;
}

ScanResult scan(const SparseBinaryMatrix& h, CoherenceMethod method, unsigned threads) {
    if (method == CoherenceMethod::Auto) {
        method = h.cols() <= kPairwiseColumnLimit ? CoherenceMethod::Pairwise
                                                  : CoherenceMethod::RowAccumulation;
    }
    return method == CoherenceMethod::Pairwise ? pairwise_scan(h, threads) : row_accumulation_scan(h);
}

}  // namespace

std::optional<Rational> CoherenceReport::exact() const {
    const std::uint64_t root = isqrt(witness_weight_product);
    if (root * root != witness_weight_product) return std::nullopt;
    return Rational::reduced(witness_inner, root);
}

CoherenceReport coherence(const SparseBinaryMatrix& h, CoherenceMethod method, unsigned threads) {
    if (h.cols() < 2) {
        throw Error(ErrorKind::TooFewColumns, "coherence needs at least two columns");
    }
    const auto weights = h.column_weights();
    for (Index j = 0; j < h.cols(); ++j) {
        if (weights[j] == 0) {
            throw Error(ErrorKind::ZeroColumn, "column " + std::to_string(j) + " is all zero");
        }
    }
    const ScanResult s = scan(h, method, threads);
    CoherenceReport r;
    r.lambda_max = s.lambda;
    r.witness = {s.best.i, s.best.j};
    r.witness_inner = s.best.inner;
    r.witness_weight_product = s.best.inner == 0 ? std::uint64_t{weights[0]} * weights[1]
                                                 : s.best.weight_product;
    r.mu = static_cast<double>(r.witness_inner) /
           std::sqrt(static_cast<double>(r.witness_weight_product));
    const auto [lo, hi] = std::minmax_element(weights.begin(), weights.end());
    r.min_col_weight = *lo;
    r.max_col_weight = *hi;
    return r;
}

Index max_inner_product(const SparseBinaryMatrix& h) {
    if (h.cols() < 2) return 0;
    return scan(h, CoherenceMethod::Auto, 0).lambda;
}

// ---------------------------------------------------------------------------

std::uint32_t Girth::length() const {
    if (!length_) throw Error(ErrorKind::BadParams, "girth is infinite");
    return *length_;
}

std::string Girth::to_string() const { return length_ ? std::to_string(*length_) : "inf"; }

Girth girth(const SparseBinaryMatrix& h) {
    const Index n = h.cols();
    const Index m = h.rows();
    const auto rows = h.row_lists();
    // Node ids: variables [0, n), checks [n, n + m).
    auto neighbours = [&](Index u) -> std::span<const Index> {
        return u < n ? h.column(u) : std::span<const Index>(rows[u - n]);
    };
    auto node_of = [&](Index u, Index k) -> Index { return u < n ? n + k : k; };

    constexpr Index kUnseen = std::numeric_limits<Index>::max();
    std::vector<Index> dist(std::size_t{n} + m, kUnseen);
    std::vector<Index> parent(std::size_t{n} + m, kUnseen);
    std::vector<Index> visited;
    std::deque<Index> queue;
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();

    for (Index root = 0; root < n; ++root) {
        for (Index v : visited) dist[v] = parent[v] = kUnseen;
        visited.clear();
        queue.clear();
        dist[root] = 0;
        visited.push_back(root);
        queue.push_back(root);
        while (!queue.empty()) {
            const Index u = queue.front();
            queue.pop_front();
            // Any cycle closed from here has length >= 2 dist[u].
            if (2ull * dist[u] >= best) break;
            for (Index k : neighbours(u)) {
                const Index w = node_of(u, k);
                if (w == parent[u]) continue;
                if (dist[w] == kUnseen) {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    visited.push_back(w);
                    queue.push_back(w);
                } else {
                    best = std::min<std::uint64_t>(best, std::uint64_t{dist[u]} + dist[w] + 1);
                }
            }
        }
    }
    if (best == std::numeric_limits<std::uint64_t>::max()) return Girth::infinite();
    return Girth::finite(static_cast<std::uint32_t>(best));
}

// ---------------------------------------------------------------------------

double welch_bound(std::uint64_t m, std::uint64_t n) {
    if (m < 2 || m > n) {
        throw Error(ErrorKind::BadShape, "Welch bound needs 2 <= m <= n, got m=" + std::to_string(m) +
                                             " n=" + std::to_string(n));
    }
    return std::sqrt(static_cast<double>(n - m) / (static_cast<double>(m) * static_cast<double>(n - 1)));
}

std::uint64_t johnson_columns(std::uint64_t m, std::uint64_t gamma, std::uint64_t lambda) {
    if (lambda < 1 || lambda >= gamma || gamma > m) {
        throw Error(ErrorKind::BadParams, "need 1 <= lambda < gamma <= m, got m=" + std::to_string(m) +
                                              " gamma=" + std::to_string(gamma) +
                                              " lambda=" + std::to_string(lambda));
    }
    u128 v = (m - lambda) / (gamma - lambda);
    for (std::uint64_t i = lambda; i-- > 0;) {
        v = (u128{m - i} * v) / (gamma - i);
        if (v > std::numeric_limits<std::uint64_t>::max()) {
            throw Error(ErrorKind::BadParams, "Johnson column bound overflows 64 bits");
        }
    }
    return static_cast<std::uint64_t>(v);
}

double johnson_coherence_lower(std::uint64_t m, std::uint64_t n) {
    if (m < 2 || n < 2) {
        throw Error(ErrorKind::BadShape, "need m, n >= 2, got m=" + std::to_string(m) +
                                             " n=" + std::to_string(n));
    }
    const u128 radicand = u128{n} * n + u128{4} * m * n * (m - 1);
    const long double root = std::sqrt(static_cast<long double>(radicand));
    return static_cast<double>(2.0L * n / (static_cast<long double>(n) + root));
}

double theorem2_upper(std::uint64_t m, std::uint64_t s, std::uint64_t t) {
    if (s == 0) throw Error(ErrorKind::BadParams, "block side must be positive");
    const std::uint64_t gamma = m / s;
    if (gamma <= t) {
        throw Error(ErrorKind::DegenerateWeight,
                    "floor(m/s) = " + std::to_string(gamma) + " does not exceed t = " + std::to_string(t));
    }
    return 1.0 / static_cast<double>(gamma - t);
}

std::uint64_t rip_order(const Rational& mu) {
    if (mu.den == 0 || mu.num == 0 || mu.num > mu.den) {
        throw Error(ErrorKind::BadMu, "mu must lie in (0, 1], got " + std::to_string(mu.num) + "/" +
                                          std::to_string(mu.den));
    }
    // k < 1 + den/num  <=>  k num < num + den
    return (mu.num + mu.den - 1) / mu.num;
}

std::uint64_t rip_order(double mu) {
    if (!(mu > 0.0) || mu > 1.0 || !std::isfinite(mu)) {
        throw Error(ErrorKind::BadMu, "mu must lie in (0, 1], got " + format_sig(mu));
    }
    const double x = 1.0 + 1.0 / mu;
    const double nearest = std::round(x);
    if (std::abs(x - nearest) <= 1e-9 * x) return static_cast<std::uint64_t>(nearest) - 1;
    return static_cast<std::uint64_t>(std::floor(x));
}

BoundsReport bounds_report(const SparseBinaryMatrix& h, const CoherenceReport& coh,
                           std::optional<BlockDeclaration> declared) {
    BoundsReport b;
    b.m = h.rows();
    b.n = h.cols();
    if (b.m >= 2 && b.m <= b.n) b.welch = welch_bound(b.m, b.n);
    if (b.m >= 2 && b.n >= 2) b.johnson_lower = johnson_coherence_lower(b.m, b.n);
    if (coh.lambda_max >= 1 && coh.lambda_max < coh.min_col_weight && coh.min_col_weight == coh.max_col_weight &&
        coh.max_col_weight <= b.m) {
        b.johnson_columns = johnson_columns(b.m, coh.max_col_weight, coh.lambda_max);
    }
    if (declared && declared->s > 0 && b.m / declared->s > declared->t) {
        b.theorem2_upper = theorem2_upper(b.m, declared->s, declared->t);
    }
    if (coh.witness_inner > 0) {
        if (auto exact = coh.exact(); exact && exact->num <= exact->den) {
            b.rip_order = rip_order(*exact);
        } else if (coh.mu <= 1.0) {
            b.rip_order = rip_order(coh.mu);
        }
    }
    return b;
}

// ---------------------------------------------------------------------------

namespace {

template <typename T, typename F>
std::string opt(const std::optional<T>& v, F fmt) {
    return v ? fmt(*v) : std::string("n/a");
}

std::string fixed6(double v) { return format_fixed(v, 6); }
std::string sig6(double v) { return format_sig(v, 6); }
std::string integer(std::uint64_t v) { return std::to_string(v); }

std::string mu_text(const CoherenceReport& r) {
    if (auto e = r.exact()) {
        return e->num == 0 ? std::string("0") : std::to_string(e->num) + "/" + std::to_string(e->den);
    }
    return "irrational";
}

}  // namespace

std::string to_key_value(const CoherenceReport& r) {
    std::ostringstream out;
    out << "mu=" << fixed6(r.mu) << '\n'
        << "mu_exact=" << mu_text(r) << '\n'
        << "lambda=" << r.lambda_max << '\n'
        << "witness=" << r.witness.first << ',' << r.witness.second << '\n'
        << "min_col_weight=" << r.min_col_weight << '\n'
        << "max_col_weight=" << r.max_col_weight << '\n';
    return out.str();
}

std::string to_key_value(const BoundsReport& r) {
    std::ostringstream out;
    out << "welch=" << opt(r.welch, fixed6) << '\n'
        << "johnson_lower=" << opt(r.johnson_lower, fixed6) << '\n'
        << "johnson_columns=" << opt(r.johnson_columns, integer) << '\n'
        << "theorem2_upper=" << opt(r.theorem2_upper, fixed6) << '\n'
        << "rip_order=" << opt(r.rip_order, integer) << '\n';
    return out.str();
}

std::string coherence_csv_header() {
    return "mu,mu_exact,lambda,witness_i,witness_j,min_col_weight,max_col_weight\n";
}

std::string to_csv_row(const CoherenceReport& r) {
    std::ostringstream out;
    out << sig6(r.mu) << ',' << mu_text(r) << ',' << r.lambda_max << ',' << r.witness.first << ','
        << r.witness.second << ',' << r.min_col_weight << ',' << r.max_col_weight << '\n';
    return out.str();
}

std::string bounds_csv_header() { return "m,n,welch,johnson_lower,johnson_columns,theorem2_upper,rip_order\n"; }

std::string to_csv_row(const BoundsReport& r) {
    std::ostringstream out;
    out << r.m << ',' << r.n << ',' << opt(r.welch, sig6) << ',' << opt(r.johnson_lower, sig6) << ','
        << opt(r.johnson_columns, integer) << ',' << opt(r.theorem2_upper, sig6) << ','
        << opt(r.rip_order, integer) << '\n';
    return out.str();
}

}  // namespace bincs
