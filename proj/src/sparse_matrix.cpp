#include "bincs/sparse_matrix.hpp"

#include "bincs/error.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace bincs {

SparseBinaryMatrix::SparseBinaryMatrix(Index rows, Index cols) : rows_(rows), columns_(cols) {}

SparseBinaryMatrix::SparseBinaryMatrix(Index rows, std::vector<std::vector<Index>> columns)
    : rows_(rows), columns_(std::move(columns)) {
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        const auto& col = columns_[j];
        for (std::size_t k = 0; k < col.size(); ++k) {
            if (col[k] >= rows_) {
                throw Error(ErrorKind::IndexOutOfRange,
                            "row index " + std::to_string(col[k]) + " in column " +
                                std::to_string(j) + " exceeds row count " + std::to_string(rows_));
            }
            if (k > 0 && col[k] <= col[k - 1]) {
                throw Error(ErrorKind::ShapeMismatch,
                            "column " + std::to_string(j) + " is not strictly increasing");
            }
        }
    }
}

std::span<const Index> SparseBinaryMatrix::column(Index j) const {
    if (j >= columns_.size()) {
        throw Error(ErrorKind::IndexOutOfRange, "column " + std::to_string(j) + " out of range");
    }
    return columns_[j];
}

std::vector<Index> SparseBinaryMatrix::column_weights() const {
    std::vector<Index> w(columns_.size());
    for (std::size_t j = 0; j < columns_.size(); ++j) w[j] = static_cast<Index>(columns_[j].size());
    return w;
}

std::vector<Index> SparseBinaryMatrix::row_weights() const {
    std::vector<Index> w(rows_, 0);
    for (const auto& col : columns_) {
        for (Index r : col) ++w[r];
    }
    return w;
}

std::vector<std::vector<Index>> SparseBinaryMatrix::row_lists() const {
    std::vector<std::vector<Index>> rows(rows_);
    for (Index j = 0; j < cols(); ++j) {
        for (Index r : columns_[j]) rows[r].push_back(j);
    }
    return rows;
}

std::size_t SparseBinaryMatrix::nnz() const {
    std::size_t total = 0;
    for (const auto& col : columns_) total += col.size();
    return total;
}

bool SparseBinaryMatrix::at(Index r, Index c) const {
    const auto col = column(c);
    return std::binary_search(col.begin(), col.end(), r);
}

SparseBinaryMatrix realize_circulant(Index s, Index power) {
    if (s == 0 || power >= s) {
        throw Error(ErrorKind::PowerOutOfRange,
                    "circulant power " + std::to_string(power) + " invalid for block size " +
                        std::to_string(s));
    }
    std::vector<std::vector<Index>> cols(s);
    for (Index c = 0; c < s; ++c) cols[c] = {(c + s - power) % s};
    return SparseBinaryMatrix(s, std::move(cols));
}

namespace {

// Local row of the single 1 in local column c, for a nonzero block.
std::vector<Index> inverse_rows(const BlockSpec& b, Index s) {
    std::vector<Index> row_of_col(s);
    if (const auto* circ = std::get_if<CirculantBlock>(&b)) {
        if (circ->power >= s) {
            throw Error(ErrorKind::PowerOutOfRange,
                        "circulant power " + std::to_string(circ->power) + " invalid for block size " +
                            std::to_string(s));
        }
        for (Index c = 0; c < s; ++c) row_of_col[c] = (c + s - circ->power) % s;
        return row_of_col;
    }
    const auto& perm = std::get<PermutationBlock>(b).perm;
    if (perm.size() != s) throw Error(ErrorKind::ShapeMismatch, "permutation block has wrong size");
    std::vector<bool> hit(s, false);
    for (Index r = 0; r < s; ++r) {
        if (perm[r] >= s || hit[perm[r]]) {
            throw Error(ErrorKind::ShapeMismatch, "permutation block is not a permutation");
        }
        hit[perm[r]] = true;
        row_of_col[perm[r]] = r;
    }
    return row_of_col;
}

}  // namespace

SparseBinaryMatrix assemble(const BlockGrid& grid, Index s) {
    if (grid.size() != s) {
        throw Error(ErrorKind::ShapeMismatch, "grid has " + std::to_string(grid.size()) +
                                                  " block rows, expected " + std::to_string(s));
    }
    for (const auto& row : grid) {
        if (row.size() != s) {
            throw Error(ErrorKind::ShapeMismatch, "grid row has " + std::to_string(row.size()) +
                                                      " blocks, expected " + std::to_string(s));
        }
    }
    const Index side = s * s;
    std::vector<std::vector<Index>> cols(side);
    for (Index bi = 0; bi < s; ++bi) {
        for (Index bj = 0; bj < s; ++bj) {
            const BlockSpec& b = grid[bi][bj];
            if (is_zero_block(b)) continue;
            const auto local = inverse_rows(b, s);
            for (Index c = 0; c < s; ++c) cols[bj * s + c].push_back(bi * s + local[c]);
        }
    }
    // Block rows are visited in increasing order, so every list is already sorted.
    return SparseBinaryMatrix(side, std::move(cols));
}

std::optional<BlockSpec> extract_block(const SparseBinaryMatrix& h, Index s, Index bi, Index bj) {
    if (s == 0 || std::uint64_t{bi + 1} * s > h.rows() || std::uint64_t{bj + 1} * s > h.cols()) {
        throw Error(ErrorKind::IndexOutOfRange, "block outside matrix");
    }
    const Index lo = bi * s;
    const Index hi = lo + s;
    std::vector<Index> perm(s, s);
    Index filled = 0;
    for (Index c = 0; c < s; ++c) {
        const auto col = h.column(bj * s + c);
        auto first = std::lower_bound(col.begin(), col.end(), lo);
        auto last = std::lower_bound(first, col.end(), hi);
        const auto count = last - first;
        if (count == 0) continue;
        if (count > 1) return std::nullopt;
        const Index r = *first - lo;
        if (perm[r] != s) return std::nullopt;
        perm[r] = c;
        ++filled;
    }
    if (filled == 0) return ZeroBlock{};
    if (filled != s) return std::nullopt;
    const Index power = (perm[0]) % s;
    for (Index r = 0; r < s; ++r) {
        if (perm[r] != (r + power) % s) return PermutationBlock{std::move(perm)};
    }
    return CirculantBlock{power};
}

SparseBinaryMatrix trim(const SparseBinaryMatrix& h, Index m, Index n) {
    if (m > h.rows() || n > h.cols()) {
        throw Error(ErrorKind::TargetTooLarge,
                    "cannot trim " + std::to_string(h.rows()) + "x" + std::to_string(h.cols()) +
                        " to " + std::to_string(m) + "x" + std::to_string(n));
    }
    std::vector<std::vector<Index>> cols(n);
    for (Index j = 0; j < n; ++j) {
        const auto col = h.column(j);
        cols[j].assign(col.begin(), std::lower_bound(col.begin(), col.end(), m));
    }
    return SparseBinaryMatrix(m, std::move(cols));
}

Index sorted_intersection_size(std::span<const Index> a, std::span<const Index> b) {
    Index count = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j]) {
            ++i;
        } else if (b[j] < a[i]) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

Index inner_product(const SparseBinaryMatrix& h, Index i, Index j) {
    return sorted_intersection_size(h.column(i), h.column(j));
}

// ---------------------------------------------------------------------------
// alist

namespace {

void write_list_line(std::ostream& out, const std::vector<Index>& items, Index pad_to) {
    for (Index k = 0; k < pad_to; ++k) {
        if (k > 0) out << ' ';
        out << (k < items.size() ? items[k] + 1 : 0);
    }
    out << '\n';
}

class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    std::vector<Index> next() {
        std::string text;
        if (!std::getline(in_, text)) {
            throw MalformedAlist(line_ + 1, "unexpected end of input");
        }
        ++line_;
        std::vector<Index> values;
        const char* p = text.data();
        const char* end = p + text.size();
        while (true) {
            while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
            if (p == end) break;
            Index v = 0;
            auto [ptr, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{} || ptr == p) throw MalformedAlist(line_, "expected an unsigned integer");
            values.push_back(v);
            p = ptr;
        }
        return values;
    }

    std::vector<Index> expect(std::size_t count, const char* what) {
        auto v = next();
        if (v.size() != count) {
            throw MalformedAlist(line_, std::string("expected ") + std::to_string(count) + " " + what +
                                            ", found " + std::to_string(v.size()));
        }
        return v;
    }

    // Node list: `weight` one-based indices below `limit`, then only zero padding.
    std::vector<Index> node_list(Index weight, Index limit) {
        auto v = next();
        if (v.size() < weight) throw MalformedAlist(line_, "adjacency list shorter than its weight");
        std::vector<Index> out;
        out.reserve(weight);
        for (std::size_t k = 0; k < v.size(); ++k) {
            if (k < weight) {
                if (v[k] == 0 || v[k] > limit) throw MalformedAlist(line_, "index out of range");
                if (!out.empty() && v[k] - 1 <= out.back()) {
                    throw MalformedAlist(line_, "indices not strictly increasing");
                }
                out.push_back(v[k] - 1);
            } else if (v[k] != 0) {
                throw MalformedAlist(line_, "nonzero entry beyond the declared weight");
            }
        }
        return out;
    }

    std::size_t line() const { return line_; }

    void expect_end() {
        std::string text;
        while (std::getline(in_, text)) {
            ++line_;
            if (text.find_first_not_of(" \t\r") != std::string::npos) {
                throw MalformedAlist(line_, "trailing content after the row lists");
            }
        }
    }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

}  // namespace

void write_alist(std::ostream& out, const SparseBinaryMatrix& h) {
    const auto col_w = h.column_weights();
    const auto row_w = h.row_weights();
    const auto rows = h.row_lists();
    const Index max_c = col_w.empty() ? 0 : *std::max_element(col_w.begin(), col_w.end());
    const Index max_r = row_w.empty() ? 0 : *std::max_element(row_w.begin(), row_w.end());
    out << h.cols() << ' ' << h.rows() << '\n';
    out << max_c << ' ' << max_r << '\n';
    auto write_weights = [&out](const std::vector<Index>& w) {
        for (std::size_t k = 0; k < w.size(); ++k) {
            if (k > 0) out << ' ';
            out << w[k];
        }
        out << '\n';
    };
    write_weights(col_w);
    write_weights(row_w);
    for (const auto& col : h.columns()) write_list_line(out, col, max_c);
    for (const auto& row : rows) write_list_line(out, row, max_r);
}

std::string export_alist(const SparseBinaryMatrix& h) {
    std::ostringstream out;
    write_alist(out, h);
    return out.str();
}

SparseBinaryMatrix read_alist(std::istream& in) {
    LineReader reader(in);
    const auto header = reader.expect(2, "header values (n m)");
    const Index n = header[0];
    const Index m = header[1];
    const auto maxima = reader.expect(2, "maximum weights");
    const auto col_w = reader.expect(n, "column weights");
    const auto row_w = reader.expect(m, "row weights");
    for (Index w : col_w) {
        if (w > m || w > maxima[0]) throw MalformedAlist(3, "column weight exceeds bound");
    }
    for (Index w : row_w) {
        if (w > n || w > maxima[1]) throw MalformedAlist(4, "row weight exceeds bound");
    }
    std::vector<std::vector<Index>> cols(n);
    for (Index j = 0; j < n; ++j) cols[j] = reader.node_list(col_w[j], m);

    std::vector<std::vector<Index>> expected_rows(m);
    for (Index j = 0; j < n; ++j) {
        for (Index r : cols[j]) expected_rows[r].push_back(j);
    }
    for (Index r = 0; r < m; ++r) {
        auto row = reader.node_list(row_w[r], n);
        if (row != expected_rows[r]) {
            throw MalformedAlist(reader.line(), "row list disagrees with the column lists");
        }
    }
    reader.expect_end();
    return SparseBinaryMatrix(m, std::move(cols));
}

SparseBinaryMatrix import_alist(const std::string& text) {
    std::istringstream in(text);
    return read_alist(in);
}

SparseBinaryMatrix load_alist_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MalformedAlist(0, "cannot open '" + path + "'");
    return read_alist(in);
}

void save_alist_file(const std::string& path, const SparseBinaryMatrix& h) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::BadParams, "cannot write '" + path + "'");
    write_alist(out, h);
    if (!out) throw Error(ErrorKind::BadParams, "write to '" + path + "' failed");
}

}  // namespace bincs
