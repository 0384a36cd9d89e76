#include "icnoma/index_coding.hpp"

#include <algorithm>
#include <string>

namespace icnoma {

namespace {

// Validity of one receiver against code rows stacked on its side information.
bool receiver_served(const Receiver& r, const BitMatrix& code) {
    if (r.wants().empty()) return true;
    RowBasis basis(r.side_rref());
    for (int i = 0; i < code.rows(); ++i) basis.insert(code.row_word(i));
    for (int w : r.wants())
        if (!basis.contains(std::uint64_t{1} << w)) return false;
    return true;
}

bool all_wants_empty(const IndexCodingProblem& p) {
    for (const Receiver& r : p.receivers())
        if (!r.wants().empty()) return false;
    return true;
}

}   // namespace

Receiver::Receiver(BitMatrix side_info, std::set<int> wants)
    : side_info_(std::move(side_info)), side_rref_(rref(side_info_)) {
    for (int w : wants) {
        if (w < 0 || w >= side_info_.cols())
            throw std::invalid_argument("Receiver: want index " + std::to_string(w + 1) +
                                        " out of range");
        if (!in_row_space(BitVector::unit(side_info_.cols(), w), side_rref_))
            wants_.insert(w);
    }
}

IndexCodingProblem::IndexCodingProblem(int n, std::vector<Receiver> receivers)
    : n_(n), receivers_(std::move(receivers)) {
    if (n < 1 || n > 64)
        throw std::invalid_argument("IndexCodingProblem: message count out of range");
    if (receivers_.empty())
        throw std::invalid_argument("IndexCodingProblem: at least one receiver required");
    for (const Receiver& r : receivers_)
        if (r.width() != n)
            throw std::invalid_argument("IndexCodingProblem: receiver width mismatch");
}

LinearIndexCode::LinearIndexCode(BitMatrix matrix) : matrix_(std::move(matrix)) {
    if (rank(matrix_) != matrix_.rows())
        throw std::invalid_argument("LinearIndexCode: rows must be linearly independent");
}

bool is_valid_code(const IndexCodingProblem& p, const LinearIndexCode& code) {
    if (code.width() != p.message_count())
        throw std::invalid_argument("is_valid_code: dimension mismatch");
    for (const Receiver& r : p.receivers())
        if (!receiver_served(r, code.matrix())) return false;
    return true;
}

int min_code_length(const IndexCodingProblem& p, int cap, const SearchLimits& limits) {
    std::optional<int> l = try_min_code_length(p, cap, limits);
    if (!l)
        throw SearchLimitError("min_code_length: no valid code within length limit " +
                               std::to_string(std::min(cap == -1 ? p.message_count() : cap,
                                                       limits.max_length)));
    return *l;
}

std::optional<int> try_min_code_length(const IndexCodingProblem& p, int cap,
                                       const SearchLimits& limits) {
    const int n = p.message_count();
    if (cap == -1) cap = n;
    if (cap < 0 || cap > n)
        throw std::invalid_argument("try_min_code_length: cap must be in [0, n]");
    if (n > limits.max_messages)
        throw SearchLimitError("try_min_code_length: problem has " + std::to_string(n) +
                               " messages, search limit is " +
                               std::to_string(limits.max_messages));

    if (all_wants_empty(p)) return 0;
    const int ceiling = std::min(cap, limits.max_length);
    for (int l = 1; l <= ceiling; ++l) {
        bool found = for_each_rref(n, l, [&](const BitMatrix& m) {
            for (const Receiver& r : p.receivers())
                if (!receiver_served(r, m)) return false;
            return true;
        });
        if (found) return l;
    }
    return std::nullopt;
}

std::vector<LinearIndexCode> enumerate_optimal_codes(const IndexCodingProblem& p, int length,
                                                     const SearchLimits& limits) {
    const int n = p.message_count();
    if (length < 0 || length > n)
        throw std::invalid_argument("enumerate_optimal_codes: length must be in [0, n]");
    if (n > limits.max_messages || length > limits.max_length)
        throw SearchLimitError("enumerate_optimal_codes: beyond search limits");

    std::vector<BitMatrix> found;
    for_each_rref(n, length, [&](const BitMatrix& m) {
        for (const Receiver& r : p.receivers())
            if (!receiver_served(r, m)) return false;
        found.push_back(m);
        return false;   // keep enumerating
    });
    std::sort(found.begin(), found.end(), lex_less);
    std::vector<LinearIndexCode> codes;
    codes.reserve(found.size());
    for (BitMatrix& m : found) codes.emplace_back(std::move(m));
    return codes;
}

std::set<int> directly_satisfied_wants(const Receiver& r, const BitMatrix& extra) {
    if (extra.cols() != r.width())
        throw std::invalid_argument("directly_satisfied_wants: dimension mismatch");
    RowBasis basis(r.side_rref());
    for (int i = 0; i < extra.rows(); ++i) basis.insert(extra.row_word(i));
    std::set<int> satisfied;
    for (int w : r.wants())
        if (basis.contains(std::uint64_t{1} << w)) satisfied.insert(w);
    return satisfied;
}

IndexCodingProblem reduce_problem(const IndexCodingProblem& p, const BitMatrix& extra) {
    if (extra.cols() != p.message_count())
        throw std::invalid_argument("reduce_problem: dimension mismatch");
    std::vector<Receiver> reduced;
    reduced.reserve(p.receivers().size());
    for (const Receiver& r : p.receivers()) {
        BitMatrix side = r.side_info();
        for (int i = 0; i < extra.rows(); ++i) side.append_row_word(extra.row_word(i));
        reduced.emplace_back(std::move(side), r.wants());
    }
    return IndexCodingProblem(p.message_count(), std::move(reduced));
}

}   // namespace icnoma
