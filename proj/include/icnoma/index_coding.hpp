#ifndef ICNOMA_INDEX_CODING_HPP
#define ICNOMA_INDEX_CODING_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "icnoma/galois.hpp"

namespace icnoma {

// Thrown when the subspace search would exceed its configured bounds; never
// a silent wrong answer.
class SearchLimitError : public std::runtime_error {
public:
    explicit SearchLimitError(const std::string& what) : std::runtime_error(what) {}
};

struct SearchLimits {
    int max_messages = 10;   // enumeration blows up combinatorially past this
    int max_length = 5;      // longest code length the search will try
};

// One receiver: a side-information generator B (each row a known GF(2)
// combination of the messages, unit rows for plainly known messages) and the
// set of wanted message indices (0-based). Wants already decodable from the
// side information are dropped at construction, mirroring the demand-set
// modification W = D \ (D ∩ K).
class Receiver {
public:
    Receiver(BitMatrix side_info, std::set<int> wants);

    const BitMatrix& side_info() const { return side_info_; }
    const BitMatrix& side_rref() const { return side_rref_; }
    const std::set<int>& wants() const { return wants_; }
    int width() const { return side_info_.cols(); }

    friend bool operator==(const Receiver&, const Receiver&) = default;

private:
    BitMatrix side_info_;
    BitMatrix side_rref_;
    std::set<int> wants_;
};

class IndexCodingProblem {
public:
    IndexCodingProblem(int n, std::vector<Receiver> receivers);

    int message_count() const { return n_; }
    int receiver_count() const { return static_cast<int>(receivers_.size()); }
    const Receiver& receiver(int i) const { return receivers_.at(static_cast<std::size_t>(i)); }
    const std::vector<Receiver>& receivers() const { return receivers_; }

    friend bool operator==(const IndexCodingProblem&, const IndexCodingProblem&) = default;

private:
    int n_;
    std::vector<Receiver> receivers_;
};

// A linear index code: each matrix row is one broadcast GF(2) combination.
// Rows must be linearly independent.
class LinearIndexCode {
public:
    explicit LinearIndexCode(BitMatrix matrix);
    static LinearIndexCode empty(int n) { return LinearIndexCode(BitMatrix(n)); }

    const BitMatrix& matrix() const { return matrix_; }
    int length() const { return matrix_.rows(); }
    int width() const { return matrix_.cols(); }

    friend bool operator==(const LinearIndexCode&, const LinearIndexCode&) = default;

private:
    BitMatrix matrix_;
};

// True iff every receiver can recover each wanted message from the code rows
// together with its side information (span criterion).
bool is_valid_code(const IndexCodingProblem& p, const LinearIndexCode& code);

// Minimum length of a valid linear index code, searched by enumerating
// canonical rref row spaces of increasing dimension. `cap` bounds the lengths
// tried (-1 means up to n). Throws SearchLimitError when the answer, if any,
// lies beyond min(cap, limits.max_length) or the problem exceeds
// limits.max_messages.
int min_code_length(const IndexCodingProblem& p, int cap = -1,
                    const SearchLimits& limits = {});

// Non-throwing variant: nullopt when no valid code exists within
// min(cap, limits.max_length). Problems over limits.max_messages still throw.
std::optional<int> try_min_code_length(const IndexCodingProblem& p, int cap = -1,
                                       const SearchLimits& limits = {});

// All valid codes of length `length`, one canonical rref representative per
// row space, sorted lexicographically. With length = min_code_length(p) this
// is the set of optimal codes.
std::vector<LinearIndexCode> enumerate_optimal_codes(const IndexCodingProblem& p, int length,
                                                     const SearchLimits& limits = {});

// Wants of r that become decodable once the rows of `extra` are broadcast.
std::set<int> directly_satisfied_wants(const Receiver& r, const BitMatrix& extra);

// New problem in which every receiver's side information is extended by the
// rows of `extra` and satisfied wants are dropped. Receivers whose want set
// empties are retained.
IndexCodingProblem reduce_problem(const IndexCodingProblem& p, const BitMatrix& extra);

}   // namespace icnoma

#endif
