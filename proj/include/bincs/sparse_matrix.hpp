#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace bincs {

using Index = std::uint32_t;

/// Binary matrix stored column-major as strictly increasing row-index lists.
class SparseBinaryMatrix {
public:
    SparseBinaryMatrix() = default;
    /// All-zero rows x cols matrix.
    SparseBinaryMatrix(Index rows, Index cols);
    /// Validates every list: indices in [0, rows), strictly increasing.
    SparseBinaryMatrix(Index rows, std::vector<std::vector<Index>> columns);

    Index rows() const { return rows_; }
    Index cols() const { return static_cast<Index>(columns_.size()); }

    std::span<const Index> column(Index j) const;
    Index column_weight(Index j) const { return static_cast<Index>(column(j).size()); }
    std::vector<Index> column_weights() const;
    std::vector<Index> row_weights() const;
    /// Row-major view: for each row, the increasing list of columns holding a 1.
    std::vector<std::vector<Index>> row_lists() const;
    std::size_t nnz() const;
    bool at(Index r, Index c) const;

    const std::vector<std::vector<Index>>& columns() const { return columns_; }

    friend bool operator==(const SparseBinaryMatrix&, const SparseBinaryMatrix&) = default;

private:
    Index rows_ = 0;
    std::vector<std::vector<Index>> columns_;
};

/// One s x s block of a base matrix.
struct ZeroBlock {
    friend bool operator==(const ZeroBlock&, const ZeroBlock&) = default;
};
/// P^power where P is the cyclic shift with ones at (r, r + 1 mod s).
struct CirculantBlock {
    Index power = 0;
    friend bool operator==(const CirculantBlock&, const CirculantBlock&) = default;
};
/// General permutation block: the 1 of row r sits in column perm[r].
struct PermutationBlock {
    std::vector<Index> perm;
    friend bool operator==(const PermutationBlock&, const PermutationBlock&) = default;
};
using BlockSpec = std::variant<ZeroBlock, CirculantBlock, PermutationBlock>;

inline bool is_zero_block(const BlockSpec& b) { return std::holds_alternative<ZeroBlock>(b); }

/// Square grid of blocks, row-major.
using BlockGrid = std::vector<std::vector<BlockSpec>>;

/// s x s matrix with entry (r, c) = 1 iff c == (r + power) mod s.
/// Throws PowerOutOfRange unless 0 <= power < s.
SparseBinaryMatrix realize_circulant(Index s, Index power);

/// Places block (i, j) of the s x s grid at rows [i s, (i+1) s), cols [j s, (j+1) s).
/// Throws ShapeMismatch when the grid is not s x s or a permutation is malformed.
SparseBinaryMatrix assemble(const BlockGrid& grid, Index s);

/// Reads back block (bi, bj) of side s. Returns nullopt when the block is
/// neither zero nor a permutation. Circulant permutations come back as
/// CirculantBlock.
std::optional<BlockSpec> extract_block(const SparseBinaryMatrix& h, Index s, Index bi, Index bj);

/// Keeps rows [0, m) and columns [0, n). Throws TargetTooLarge.
SparseBinaryMatrix trim(const SparseBinaryMatrix& h, Index m, Index n);

/// Number of rows where both columns hold a 1. Throws IndexOutOfRange.
Index inner_product(const SparseBinaryMatrix& h, Index i, Index j);

/// Intersection size of two strictly increasing lists (linear merge).
Index sorted_intersection_size(std::span<const Index> a, std::span<const Index> b);

// MacKay alist: "n m", max column/row weight, column weights, row weights,
// n column lists then m row lists, 1-based indices zero-padded to the max
// weight. Line 1 puts the column count first.
void write_alist(std::ostream& out, const SparseBinaryMatrix& h);
std::string export_alist(const SparseBinaryMatrix& h);
/// Throws MalformedAlist carrying the offending line number.
SparseBinaryMatrix read_alist(std::istream& in);
SparseBinaryMatrix import_alist(const std::string& text);

SparseBinaryMatrix load_alist_file(const std::string& path);
void save_alist_file(const std::string& path, const SparseBinaryMatrix& h);

}  // namespace bincs
