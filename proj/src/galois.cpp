#include "icnoma/galois.hpp"

#include <algorithm>

namespace icnoma {

namespace {

std::uint64_t mask_for(int length) {
    return length == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << length) - 1;
}

int pivot_of(std::uint64_t row) { return std::countr_zero(row); }

}   // namespace

BitVector::BitVector(int length, std::uint64_t bits) : length_(length), bits_(bits) {
    if (length < 1 || length > 64)
        throw std::invalid_argument("BitVector: length must be in [1, 64]");
    if (bits & ~mask_for(length))
        throw std::invalid_argument("BitVector: bits set beyond length");
}

BitVector BitVector::unit(int length, int index) {
    BitVector v(length);
    v.set(index, true);
    return v;
}

bool BitVector::get(int i) const {
    if (i < 0 || i >= length_) throw std::out_of_range("BitVector::get: index out of range");
    return bits_ >> i & 1;
}

void BitVector::set(int i, bool value) {
    if (i < 0 || i >= length_) throw std::out_of_range("BitVector::set: index out of range");
    if (value)
        bits_ |= std::uint64_t{1} << i;
    else
        bits_ &= ~(std::uint64_t{1} << i);
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.length_ != length_)
        throw std::invalid_argument("BitVector: length mismatch in xor");
    bits_ ^= other.bits_;
    return *this;
}

bool row_less(std::uint64_t a, std::uint64_t b) {
    std::uint64_t diff = a ^ b;
    if (diff == 0) return false;
    return (a >> std::countr_zero(diff) & 1) == 0;
}

bool row_less(const BitVector& a, const BitVector& b) {
    return row_less(a.word(), b.word());
}

BitMatrix::BitMatrix(int cols) : cols_(cols) {
    if (cols < 1 || cols > 64)
        throw std::invalid_argument("BitMatrix: cols must be in [1, 64]");
}

BitMatrix::BitMatrix(int cols, const std::vector<std::uint64_t>& rows) : BitMatrix(cols) {
    const std::uint64_t mask = mask_for(cols);
    for (std::uint64_t r : rows) {
        if (r & ~mask) throw std::invalid_argument("BitMatrix: row bits beyond cols");
        rows_.push_back(r);
    }
}

std::uint64_t BitMatrix::row_word(int i) const {
    if (i < 0 || i >= rows()) throw std::out_of_range("BitMatrix::row_word: index out of range");
    return rows_[static_cast<std::size_t>(i)];
}

BitVector BitMatrix::row(int i) const { return BitVector(cols_, row_word(i)); }

void BitMatrix::append_row(const BitVector& row) {
    if (row.length() != cols_)
        throw std::invalid_argument("BitMatrix::append_row: length mismatch");
    rows_.push_back(row.word());
}

void BitMatrix::append_row_word(std::uint64_t row) {
    if (row & ~mask_for(cols_))
        throw std::invalid_argument("BitMatrix::append_row_word: bits beyond cols");
    rows_.push_back(row);
}

bool lex_less(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("lex_less: column mismatch");
    if (a.rows() != b.rows()) return a.rows() < b.rows();
    for (int i = 0; i < a.rows(); ++i) {
        if (a.row_word(i) != b.row_word(i))
            return row_less(a.row_word(i), b.row_word(i));
    }
    return false;
}

RowBasis::RowBasis(const BitMatrix& m) {
    for (int i = 0; i < m.rows(); ++i) insert(m.row_word(i));
}

std::uint64_t RowBasis::reduce(std::uint64_t v) const {
    for (std::uint64_t r : rows_) {
        if (v == 0) break;
        if (v >> pivot_of(r) & 1) v ^= r;
    }
    return v;
}

bool RowBasis::insert(std::uint64_t v) {
    v = reduce(v);
    if (v == 0) return false;
    // Keep rows pivot-sorted so reduce() can scan once.
    auto pos = std::lower_bound(rows_.begin(), rows_.end(), v,
                                [](std::uint64_t a, std::uint64_t b) {
                                    return pivot_of(a) < pivot_of(b);
                                });
    rows_.insert(pos, v);
    return true;
}

bool RowBasis::contains(std::uint64_t v) const { return reduce(v) == 0; }

int rank(const BitMatrix& m) {
    RowBasis basis(m);
    return basis.size();
}

BitMatrix rref(const BitMatrix& m) {
    std::vector<std::uint64_t> rows;
    for (int i = 0; i < m.rows(); ++i) {
        std::uint64_t v = m.row_word(i);
        for (std::uint64_t r : rows) {
            if (v == 0) break;
            if (v >> pivot_of(r) & 1) v ^= r;
        }
        if (v == 0) continue;
        // Clear this pivot from the rows already collected.
        for (std::uint64_t& r : rows)
            if (r >> pivot_of(v) & 1) r ^= v;
        rows.push_back(v);
    }
    std::sort(rows.begin(), rows.end(),
              [](std::uint64_t a, std::uint64_t b) { return pivot_of(a) < pivot_of(b); });
    return BitMatrix(m.cols(), rows);
}

bool in_row_space(const BitVector& v, const BitMatrix& m) {
    if (v.length() != m.cols())
        throw std::invalid_argument("in_row_space: dimension mismatch");
    RowBasis basis(m);
    return basis.contains(v.word());
}

std::string to_string(const BitVector& v) {
    if (v.is_zero()) return "0";
    std::string out;
    for (int i = 0; i < v.length(); ++i) {
        if (!v.get(i)) continue;
        if (!out.empty()) out += '+';
        out += 'x';
        out += std::to_string(i + 1);
    }
    return out;
}

std::string to_string(const BitMatrix& m) {
    std::string out = "{";
    for (int i = 0; i < m.rows(); ++i) {
        if (i > 0) out += ", ";
        out += to_string(m.row(i));
    }
    out += "}";
    return out;
}

}   // namespace icnoma
