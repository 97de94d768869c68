#include "bincs/builder.hpp"

#include "bincs/error.hpp"

#include <sstream>
#include <tuple>

namespace bincs {

std::string CatalogEntry::label() const {
    std::string out = std::string(to_string(construction)) + "(q=" + std::to_string(q);
    if (beta_log) out += ",beta=alpha^" + std::to_string(*beta_log);
    out += ",s=" + std::to_string(s) + ",t=" + std::to_string(t) + ")";
    return out;
}

FamilyCatalog enumerate_catalog(std::uint32_t max_q, const CatalogOptions& options) {
    FamilyCatalog catalog;
    for (std::uint32_t q = 3; q <= max_q && q <= Field::kMaxOrder; ++q) {
        const PrimePower pp = factor_prime_power(q);
        if (pp.e == 0) continue;
        if (options.additive && pp.e == 1) {
            catalog.entries.push_back({Construction::Additive, q, std::nullopt, q, 0});
        }
        if (pp.e > 1 && !options.extension_fields) continue;
        const std::uint32_t betas = options.exhaustive_beta ? q - 1 : 1;
        for (Construction c : {Construction::RsLatin, Construction::Latin}) {
            if (c == Construction::RsLatin && !options.rs_latin) continue;
            if (c == Construction::Latin && !options.latin) continue;
            for (std::uint32_t b = 0; b < betas; ++b) {
                catalog.entries.push_back({c, q, b, q - 1, 1});
            }
        }
    }
    return catalog;
}

namespace {

// Selection order: larger score, smaller s, construction order, smaller beta exponent.
auto rank_key(const CatalogEntry& e, std::int64_t score) {
    return std::make_tuple(-score, e.s, static_cast<int>(e.construction), e.beta_log.value_or(0), e.q);
}

}  // namespace

SelectionReport select_base(std::uint64_t m, std::uint64_t n, const FamilyCatalog& catalog) {
    if (m < 2 || n < 2 || m > n) {
        throw Error(ErrorKind::BadShape, "need 2 <= m <= n, got m=" + std::to_string(m) +
                                             " n=" + std::to_string(n));
    }
    SelectionReport report;
    report.m = m;
    report.n = n;
    std::optional<std::size_t> best;
    std::vector<std::optional<std::int64_t>> scores(catalog.entries.size());
    for (std::size_t k = 0; k < catalog.entries.size(); ++k) {
        const auto& e = catalog.entries[k];
        const std::uint64_t side = std::uint64_t{e.s} * e.s;
        if (side < n || side < m) continue;
        scores[k] = static_cast<std::int64_t>(m / e.s) - static_cast<std::int64_t>(e.t);
        if (*scores[k] < 1) continue;
        if (!best || rank_key(e, *scores[k]) < rank_key(catalog.entries[*best], *scores[best.value()])) {
            best = k;
        }
    }
    if (!best) {
        throw Error(ErrorKind::NoFeasibleBase, "no catalog entry has s^2 >= " + std::to_string(n) +
                                                   " with floor(m/s) - t >= 1 for m=" +
                                                   std::to_string(m));
    }
    report.chosen = catalog.entries[*best];
    report.score = *scores[*best];
    for (std::size_t k = 0; k < catalog.entries.size(); ++k) {
        if (k == *best) continue;
        const auto& e = catalog.entries[k];
        Rejection r{e, {}, scores[k]};
        if (!scores[k]) {
            r.reason = "s^2 = " + std::to_string(std::uint64_t{e.s} * e.s) + " < n";
        } else if (*scores[k] < 1) {
            r.reason = "score " + std::to_string(*scores[k]) + " < 1";
        } else if (*scores[k] < report.score) {
            r.reason = "lower score " + std::to_string(*scores[k]);
        } else {
            r.reason = "tie broken in favour of the chosen entry";
        }
        report.rejected.push_back(std::move(r));
    }
    return report;
}

std::string SelectionReport::to_text() const {
    std::ostringstream out;
    out << "requested " << m << "x" << n << '\n';
    out << "chosen " << chosen.label() << " score " << score << '\n';
    for (const auto& r : rejected) out << "rejected " << r.entry.label() << ": " << r.reason << '\n';
    return out.str();
}

std::string SelectionReport::to_key_value() const {
    std::ostringstream out;
    out << "m=" << m << '\n'
        << "n=" << n << '\n'
        << "family=" << to_string(chosen.construction) << '\n'
        << "q=" << chosen.q << '\n'
        << "beta_log=" << (chosen.beta_log ? std::to_string(*chosen.beta_log) : std::string("n/a")) << '\n'
        << "s=" << chosen.s << '\n'
        << "t=" << chosen.t << '\n'
        << "score=" << score << '\n'
        << "candidates=" << rejected.size() + 1 << '\n';
    return out.str();
}

MeasurementMatrix build_measurement_matrix(std::uint64_t m, std::uint64_t n, const FamilyCatalog& catalog) {
    SelectionReport sel = select_base(m, n, catalog);
    const BaseMatrix base = build_base(sel.chosen.construction, sel.chosen.q, sel.chosen.beta_log.value_or(0));
    SparseBinaryMatrix a = trim(base.h, static_cast<Index>(m), static_cast<Index>(n));
    for (Index j = 0; j < a.cols(); ++j) {
        if (a.column_weight(j) == 0) {
            throw Error(ErrorKind::ZeroColumn, "trimmed matrix has an empty column " + std::to_string(j));
        }
    }
    return {std::move(a), std::move(sel)};
}

}  // namespace bincs
