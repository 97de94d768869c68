#pragma once

#include "bincs/field.hpp"
#include "bincs/sparse_matrix.hpp"

#include <cstdint>
#include <optional>
#include <string_view>

namespace bincs {

/// Ordered: Additive < RsLatin < Latin (used for tie-breaking in selection).
enum class Construction { Additive, RsLatin, Latin };

std::string_view to_string(Construction c);
/// Accepts "additive", "rs-latin", "latin". Throws BadParams.
Construction parse_construction(std::string_view name);

/// s^2 x s^2 matrix of s x s zero / circulant blocks satisfying
/// (P1) t zero blocks in every row-block and column-block, and
/// (P2) no two columns share more than one row (girth > 4).
struct BaseMatrix {
    SparseBinaryMatrix h;
    Index s = 0;
    Index t = 0;
    Construction construction = Construction::Additive;
    std::uint32_t q = 0;
    /// Discrete log of beta; empty for Additive.
    std::optional<std::uint32_t> beta_log;
    BlockGrid grid;
};

/// Grid (i, j) = P^(i j mod q) with q x q blocks. Throws NotOddPrime.
BaseMatrix build_additive(std::uint32_t q);

/// L_RS(beta)(i, j) = alpha^((j - i) mod (q-1)) - beta, expanded block-wise.
/// Throws ZeroBeta.
BaseMatrix build_rs_latin(const FieldElement& beta);
/// L(beta)(i, j) = alpha^i beta - alpha^j, expanded block-wise. Throws ZeroBeta.
BaseMatrix build_latin(const FieldElement& beta);

/// Convenience overloads taking beta = alpha^beta_log (beta_log = 0 is beta = 1).
/// Throw NotPrimePower / UnsupportedOrder for bad q.
BaseMatrix build_rs_latin(std::uint32_t q, std::uint32_t beta_log = 0);
BaseMatrix build_latin(std::uint32_t q, std::uint32_t beta_log = 0);

/// Dispatch on the construction id; beta_log ignored for Additive.
BaseMatrix build_base(Construction c, std::uint32_t q, std::uint32_t beta_log = 0);

/// 0 -> zero block, alpha^i -> P^i (block side q - 1).
BlockSpec correspondence(const FieldElement& x);

/// Checks (P1) on the assembled matrix and returns t. Throws NotRegular
/// naming the offending block row/column and the weight histogram.
Index verify_p1(const BaseMatrix& b);

/// (P2): max inner product of distinct columns <= 1.
bool verify_p2(const BaseMatrix& b);

}  // namespace bincs
