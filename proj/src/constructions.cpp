#include "bincs/constructions.hpp"

#include "bincs/error.hpp"
#include "bincs/metrics.hpp"

#include <map>
#include <sstream>

namespace bincs {

std::string_view to_string(Construction c) {
    switch (c) {
        case Construction::Additive: return "additive";
        case Construction::RsLatin: return "rs-latin";
        case Construction::Latin: return "latin";
    }
    return "unknown";
}

Construction parse_construction(std::string_view name) {
    if (name == "additive") return Construction::Additive;
    if (name == "rs-latin") return Construction::RsLatin;
    if (name == "latin") return Construction::Latin;
    throw Error(ErrorKind::BadParams, "unknown family '" + std::string(name) +
                                          "' (expected additive, rs-latin or latin)");
}

BlockSpec correspondence(const FieldElement& x) {
    if (x.is_zero()) return ZeroBlock{};
    return CirculantBlock{x.log()};
}

namespace {

std::string histogram(const std::vector<Index>& weights) {
    std::map<Index, std::size_t> counts;
    for (Index w : weights) ++counts[w];
    std::ostringstream out;
    bool first = true;
    for (auto [w, c] : counts) {
        out << (first ? "" : " ") << w << ':' << c;
        first = false;
    }
    return out.str();
}

// Post-construction checks shared by every builder.
BaseMatrix certify(BaseMatrix b, Index expected_t) {
    const Index t = verify_p1(b);
    if (t != expected_t) {
        throw Error(ErrorKind::NotRegular, std::string(to_string(b.construction)) + " base for q=" +
                                               std::to_string(b.q) + " has t=" + std::to_string(t) +
                                               ", expected " + std::to_string(expected_t));
    }
    if (!verify_p2(b)) {
        throw Error(ErrorKind::GirthViolation, std::string(to_string(b.construction)) +
                                                   " base for q=" + std::to_string(b.q) +
                                                   " has two columns sharing two rows");
    }
    b.t = t;
    return b;
}

BaseMatrix from_latin_square(Construction kind, const FieldElement& beta,
                             FieldElement (*entry)(const Field&, const FieldElement&, Index, Index)) {
    if (beta.is_zero()) throw Error(ErrorKind::ZeroBeta, "beta must be nonzero");
    const Field& f = beta.field();
    if (f.order() < 3) {
        throw Error(ErrorKind::UnsupportedOrder, "Latin-square bases need q >= 3");
    }
    const Index s = f.order() - 1;
    BaseMatrix b;
    b.s = s;
    b.construction = kind;
    b.q = f.order();
    b.beta_log = beta.log();
    b.grid.assign(s, std::vector<BlockSpec>(s));
    for (Index i = 0; i < s; ++i) {
        for (Index j = 0; j < s; ++j) b.grid[i][j] = correspondence(entry(f, beta, i, j));
    }
    b.h = assemble(b.grid, s);
    return certify(std::move(b), 1);
}

FieldElement rs_latin_entry(const Field& f, const FieldElement& beta, Index i, Index j) {
    return f.alpha_pow(static_cast<std::int64_t>(j) - static_cast<std::int64_t>(i)) - beta;
}

FieldElement latin_entry(const Field& f, const FieldElement& beta, Index i, Index j) {
    return f.alpha_pow(i) * beta - f.alpha_pow(j);
}

}  // namespace

BaseMatrix build_additive(std::uint32_t q) {
    if (q < 3 || !is_prime(q)) {
        throw Error(ErrorKind::NotOddPrime, "q must be an odd prime, got " + std::to_string(q));
    }
    BaseMatrix b;
    b.s = q;
    b.construction = Construction::Additive;
    b.q = q;
    b.grid.assign(q, std::vector<BlockSpec>(q));
    for (Index i = 0; i < q; ++i) {
        for (Index j = 0; j < q; ++j) {
            b.grid[i][j] = CirculantBlock{static_cast<Index>((std::uint64_t{i} * j) % q)};
        }
    }
    b.h = assemble(b.grid, q);
    return certify(std::move(b), 0);
}

BaseMatrix build_rs_latin(const FieldElement& beta) {
    return from_latin_square(Construction::RsLatin, beta, &rs_latin_entry);
}

BaseMatrix build_latin(const FieldElement& beta) {
    return from_latin_square(Construction::Latin, beta, &latin_entry);
}

BaseMatrix build_rs_latin(std::uint32_t q, std::uint32_t beta_log) {
    const Field f = Field::create(q);
    return build_rs_latin(f.alpha_pow(beta_log));
}

BaseMatrix build_latin(std::uint32_t q, std::uint32_t beta_log) {
    const Field f = Field::create(q);
    return build_latin(f.alpha_pow(beta_log));
}

BaseMatrix build_base(Construction c, std::uint32_t q, std::uint32_t beta_log) {
    switch (c) {
        case Construction::Additive: return build_additive(q);
        case Construction::RsLatin: return build_rs_latin(q, beta_log);
        case Construction::Latin: return build_latin(q, beta_log);
    }
    throw Error(ErrorKind::BadParams, "unknown construction");
}

Index verify_p1(const BaseMatrix& b) {
    const Index s = b.s;
    if (s == 0 || b.h.rows() != s * s || b.h.cols() != s * s) {
        throw Error(ErrorKind::NotRegular, "matrix is not s^2 x s^2 for s=" + std::to_string(s));
    }
    std::vector<Index> zeros_in_row_block(s, 0);
    std::vector<Index> zeros_in_col_block(s, 0);
    for (Index bi = 0; bi < s; ++bi) {
        for (Index bj = 0; bj < s; ++bj) {
            const auto block = extract_block(b.h, s, bi, bj);
            if (!block) {
                throw Error(ErrorKind::NotRegular, "block (" + std::to_string(bi) + ", " +
                                                       std::to_string(bj) +
                                                       ") is neither zero nor a permutation");
            }
            if (is_zero_block(*block)) {
                ++zeros_in_row_block[bi];
                ++zeros_in_col_block[bj];
            }
        }
    }
    const Index t = zeros_in_row_block[0];
    for (Index k = 0; k < s; ++k) {
        if (zeros_in_row_block[k] != t) {
            throw Error(ErrorKind::NotRegular,
                        "row-block " + std::to_string(k) + " has " + std::to_string(zeros_in_row_block[k]) +
                            " zero blocks, row-block 0 has " + std::to_string(t) +
                            "; row weights " + histogram(b.h.row_weights()));
        }
        if (zeros_in_col_block[k] != t) {
            throw Error(ErrorKind::NotRegular,
                        "column-block " + std::to_string(k) + " has " +
                            std::to_string(zeros_in_col_block[k]) + " zero blocks, row-block 0 has " +
                            std::to_string(t) + "; column weights " + histogram(b.h.column_weights()));
        }
    }
    for (Index w : b.h.column_weights()) {
        if (w != s - t) {
            throw Error(ErrorKind::NotRegular, "column weights " + histogram(b.h.column_weights()));
        }
    }
    for (Index w : b.h.row_weights()) {
        if (w != s - t) throw Error(ErrorKind::NotRegular, "row weights " + histogram(b.h.row_weights()));
    }
    return t;
}

bool verify_p2(const BaseMatrix& b) { return max_inner_product(b.h) <= 1; }

}  // namespace bincs
