#pragma once

#include "bincs/constructions.hpp"
#include "bincs/sparse_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bincs {

struct CatalogEntry {
    Construction construction = Construction::Additive;
    std::uint32_t q = 0;
    /// Discrete log of beta; empty for Additive.
    std::optional<std::uint32_t> beta_log;
    Index s = 0;
    Index t = 0;

    std::string label() const;
    friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

struct FamilyCatalog {
    std::vector<CatalogEntry> entries;
};

struct CatalogOptions {
    bool additive = true;
    bool rs_latin = true;
    bool latin = true;
    /// Include Latin-square families over GF(p^e), e > 1.
    bool extension_fields = true;
    /// One entry per nonzero beta instead of beta = 1 only.
    bool exhaustive_beta = false;
};

/// Entries ordered by q, then construction, then beta exponent.
FamilyCatalog enumerate_catalog(std::uint32_t max_q, const CatalogOptions& options = {});

struct Rejection {
    CatalogEntry entry;
    std::string reason;
    /// floor(m/s) - t when the shape constraints hold.
    std::optional<std::int64_t> score;
};

struct SelectionReport {
    std::uint64_t m = 0;
    std::uint64_t n = 0;
    CatalogEntry chosen;
    std::int64_t score = 0;
    std::vector<Rejection> rejected;

    std::string to_text() const;
    std::string to_key_value() const;
};

/// Picks the entry with s^2 >= n, s^2 >= m maximizing floor(m/s) - t; ties go
/// to smaller s, then Additive < RsLatin < Latin, then smaller beta exponent.
/// Throws BadShape unless 2 <= m <= n; NoFeasibleBase when no entry scores >= 1.
SelectionReport select_base(std::uint64_t m, std::uint64_t n, const FamilyCatalog& catalog);

struct MeasurementMatrix {
    SparseBinaryMatrix matrix;
    SelectionReport selection;
};

/// Selects, builds and certifies the base, then keeps its first m rows and n columns.
MeasurementMatrix build_measurement_matrix(std::uint64_t m, std::uint64_t n, const FamilyCatalog& catalog);

}  // namespace bincs
