#ifndef ICNOMA_GALOIS_HPP
#define ICNOMA_GALOIS_HPP

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace icnoma {

// GF(2) row vector packed into a machine word. Bit i is the coefficient of
// message x_{i+1}; lengths are capped at 64, far above the search limits.
class BitVector {
public:
    BitVector(int length, std::uint64_t bits = 0);
    static BitVector unit(int length, int index);

    int length() const { return length_; }
    std::uint64_t word() const { return bits_; }
    bool get(int i) const;
    void set(int i, bool value);
    bool is_zero() const { return bits_ == 0; }
    int popcount() const { return std::popcount(bits_); }

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

private:
    int length_;
    std::uint64_t bits_;
};

// Orders rows by their bit string read x1-first: at the lowest differing
// index the smaller row has the 0.
bool row_less(std::uint64_t a, std::uint64_t b);
bool row_less(const BitVector& a, const BitVector& b);

// Row-major GF(2) matrix with a fixed column count; zero rows are legal and
// an empty matrix (no rows) represents empty side information or an empty code.
class BitMatrix {
public:
    explicit BitMatrix(int cols);
    BitMatrix(int cols, const std::vector<std::uint64_t>& rows);

    int cols() const { return cols_; }
    int rows() const { return static_cast<int>(rows_.size()); }
    std::uint64_t row_word(int i) const;
    BitVector row(int i) const;
    void append_row(const BitVector& row);
    void append_row_word(std::uint64_t row);
    const std::vector<std::uint64_t>& row_words() const { return rows_; }

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    int cols_;
    std::vector<std::uint64_t> rows_;
};

// Lexicographic order on whole matrices: fewer rows first, then row by row
// under row_less. rref canonical forms compared with this give a total,
// deterministic order on row spaces.
bool lex_less(const BitMatrix& a, const BitMatrix& b);

int rank(const BitMatrix& m);

// Reduced row echelon form: pivot per row, pivots strictly increasing,
// pivot columns cleared elsewhere, zero rows dropped. Two matrices have the
// same row space iff their rrefs are identical.
BitMatrix rref(const BitMatrix& m);

// True iff v is a GF(2) combination of the rows of m.
bool in_row_space(const BitVector& v, const BitMatrix& m);

// Incrementally maintained row-reduced basis; the workhorse behind rank,
// membership tests and code validity checks.
class RowBasis {
public:
    RowBasis() = default;
    explicit RowBasis(const BitMatrix& m);

    // Reduces v against the basis; inserts the residual if nonzero.
    // Returns true when v enlarged the span.
    bool insert(std::uint64_t v);
    bool contains(std::uint64_t v) const;
    int size() const { return static_cast<int>(rows_.size()); }

private:
    std::uint64_t reduce(std::uint64_t v) const;
    std::vector<std::uint64_t> rows_;   // kept sorted by pivot index
};

// Visits every rref matrix with exactly `rank` rows over GF(2)^n, each row
// space exactly once. Visitation order is fixed but not globally
// lexicographic; callers needing lexicographic order collect and sort.
// The callback returns true to stop early; the function reports whether it
// was stopped.
template <typename Fn>
bool for_each_rref(int n, int rank, Fn&& fn);

std::string to_string(const BitVector& v);   // "x1+x7", "0" for the zero row
std::string to_string(const BitMatrix& m);   // "{x1+x7, x3+x6}"

namespace detail {

// Pivot columns are chosen as ascending combinations; the free entries of a
// row are the non-pivot columns right of its pivot, filled from a counter.
template <typename Fn>
bool visit_rref_for_pivots(int n, const std::vector<int>& pivots, Fn&& fn) {
    const int rank = static_cast<int>(pivots.size());
    std::vector<std::pair<int, int>> free_slots;   // (row, column)
    std::vector<bool> is_pivot(n, false);
    for (int c : pivots) is_pivot[c] = true;
    for (int i = 0; i < rank; ++i)
        for (int c = pivots[i] + 1; c < n; ++c)
            if (!is_pivot[c]) free_slots.emplace_back(i, c);

    const int nfree = static_cast<int>(free_slots.size());
    if (nfree >= 63) throw std::invalid_argument("for_each_rref: free entry count too large");
    std::vector<std::uint64_t> base(rank);
    for (int i = 0; i < rank; ++i) base[i] = std::uint64_t{1} << pivots[i];

    BitMatrix m(n);
    for (std::uint64_t pattern = 0; pattern < (std::uint64_t{1} << nfree); ++pattern) {
        std::vector<std::uint64_t> rows = base;
        for (int f = 0; f < nfree; ++f)
            if (pattern >> f & 1)
                rows[free_slots[f].first] |= std::uint64_t{1} << free_slots[f].second;
        if (fn(BitMatrix(n, rows))) return true;
    }
    return false;
}

}   // namespace detail

template <typename Fn>
bool for_each_rref(int n, int rank, Fn&& fn) {
    if (n < 1 || n > 64) throw std::invalid_argument("for_each_rref: n out of range");
    if (rank < 0 || rank > n) throw std::invalid_argument("for_each_rref: rank out of range");
    if (rank == 0) return fn(BitMatrix(n));

    // Odometer over ascending pivot-column combinations.
    std::vector<int> pivots(rank);
    for (int i = 0; i < rank; ++i) pivots[i] = i;
    while (true) {
        if (detail::visit_rref_for_pivots(n, pivots, fn)) return true;
        int i = rank - 1;
        while (i >= 0 && pivots[i] == n - rank + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < rank; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return false;
}

}   // namespace icnoma

#endif
