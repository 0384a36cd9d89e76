#include "icnoma/linksim.hpp"

#include <bit>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>

namespace icnoma {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Counter-based sub-seed: trial t is reproducible in isolation, so parallel
// and sequential execution agree bit-exactly.
std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) {
    return splitmix64(master + 0x9E3779B97F4A7C15ULL * (trial + 1));
}

void xor_into(BitBlock& acc, const BitBlock& other) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= other[i];
}

// GF(2) elimination that carries packet payloads along with the row vectors,
// so solving for a unit vector yields the wanted packet itself.
class PayloadBasis {
public:
    void insert(std::uint64_t vec, BitBlock payload) {
        for (const Row& r : rows_) {
            if (vec == 0) break;
            if (vec >> pivot_of(r.vec) & 1) {
                vec ^= r.vec;
                xor_into(payload, r.payload);
            }
        }
        if (vec == 0) return;
        rows_.push_back({vec, std::move(payload)});
        for (std::size_t i = rows_.size() - 1;
             i > 0 && pivot_of(rows_[i].vec) < pivot_of(rows_[i - 1].vec); --i)
            std::swap(rows_[i], rows_[i - 1]);
    }

    std::optional<BitBlock> solve(std::uint64_t target, std::size_t packet_bits) const {
        BitBlock acc(packet_bits, 0);
        for (const Row& r : rows_) {
            if (target == 0) break;
            if (target >> pivot_of(r.vec) & 1) {
                target ^= r.vec;
                xor_into(acc, r.payload);
            }
        }
        if (target != 0) return std::nullopt;
        return acc;
    }

private:
    struct Row {
        std::uint64_t vec;
        BitBlock payload;
    };

    static int pivot_of(std::uint64_t v) { return std::countr_zero(v); }

    std::vector<Row> rows_;   // sorted by pivot index
};

BitBlock row_payload(const BitVector& row, const std::vector<BitBlock>& messages,
                     std::size_t packet_bits) {
    BitBlock acc(packet_bits, 0);
    for (int i = 0; i < row.length(); ++i)
        if (row.get(i)) xor_into(acc, messages[static_cast<std::size_t>(i)]);
    return acc;
}

void check_entry(const ScheduleEntry& e) {
    if (e.kind == ScheduleEntry::Kind::noma) {
        if (!e.far_row || !e.near_row)
            throw std::invalid_argument("run_end_to_end: NOMA entry missing a code row");
    } else if (e.audience == ScheduleEntry::Audience::far_users) {
        if (!e.far_row) throw std::invalid_argument("run_end_to_end: solo entry missing its row");
    } else if (!e.near_row) {
        throw std::invalid_argument("run_end_to_end: solo entry missing its row");
    }
}

}   // namespace

SymbolStream modulate_bpsk(const BitBlock& bits) {
    SymbolStream s(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) s[i] = bits[i] ? -1.0 : 1.0;
    return s;
}

BitBlock slice_bpsk(const SymbolStream& symbols) {
    BitBlock b(symbols.size());
    for (std::size_t i = 0; i < symbols.size(); ++i) b[i] = symbols[i] < 0.0 ? 1 : 0;
    return b;
}

SymbolStream superpose(const std::vector<std::pair<double, SymbolStream>>& parts, double power) {
    if (parts.empty()) throw std::invalid_argument("superpose: at least one component required");
    if (!std::isfinite(power) || power < 0.0)
        throw std::invalid_argument("superpose: power must be nonnegative");
    const std::size_t len = parts.front().second.size();
    double total = 0.0;
    for (const auto& [fraction, stream] : parts) {
        if (!std::isfinite(fraction) || fraction <= 0.0)
            throw std::invalid_argument("superpose: power fractions must be positive");
        if (stream.size() != len)
            throw std::invalid_argument("superpose: component length mismatch");
        total += fraction;
    }
    if (std::abs(total - 1.0) > 1e-12)
        throw std::invalid_argument("superpose: power fractions must sum to 1");

    SymbolStream out(len, 0.0);
    for (const auto& [fraction, stream] : parts) {
        const double scale = std::sqrt(fraction * power);
        for (std::size_t i = 0; i < len; ++i) out[i] += scale * stream[i];
    }
    return out;
}

SymbolStream receive(const SymbolStream& tx, double gain, double sigma2, std::mt19937_64& rng) {
    if (!std::isfinite(gain) || gain <= 0.0)
        throw std::invalid_argument("receive: gain must be positive");
    if (!std::isfinite(sigma2) || sigma2 < 0.0)
        throw std::invalid_argument("receive: noise variance must be nonnegative");
    const double amp = std::sqrt(gain);
    SymbolStream z(tx.size());
    if (sigma2 == 0.0) {
        for (std::size_t i = 0; i < tx.size(); ++i) z[i] = amp * tx[i];
        return z;
    }
    std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
    for (std::size_t i = 0; i < tx.size(); ++i) z[i] = amp * tx[i] + noise(rng);
    return z;
}

std::pair<BitBlock, BitBlock> sic_decode_near(const SymbolStream& z, double gain, double alpha,
                                              double power) {
    if (!std::isfinite(gain) || gain <= 0.0)
        throw std::invalid_argument("sic_decode_near: gain must be positive");
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 0.5)
        throw std::invalid_argument("sic_decode_near: alpha must lie in (0, 0.5)");
    if (!std::isfinite(power) || power < 0.0)
        throw std::invalid_argument("sic_decode_near: power must be nonnegative");

    BitBlock far_bits = slice_bpsk(z);
    const double far_amp = std::sqrt(gain * (1.0 - alpha) * power);
    SymbolStream residual(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        residual[i] = z[i] - far_amp * (far_bits[i] ? -1.0 : 1.0);
    return {std::move(far_bits), slice_bpsk(residual)};
}

SimResult run_end_to_end(const IndexCodingProblem& p, const TransmissionSchedule& sched,
                         const ChannelProfile& ch, const SimConfig& cfg) {
    const int n = p.message_count();
    const int users = p.receiver_count();
    if (sched.messages != n)
        throw std::invalid_argument("run_end_to_end: schedule message count mismatch");
    if (static_cast<int>(ch.gains.size()) != users)
        throw std::invalid_argument("run_end_to_end: one channel gain per receiver required");
    if (cfg.packet_bits < 1) throw std::invalid_argument("run_end_to_end: packet_bits < 1");
    if (cfg.trials < 1) throw std::invalid_argument("run_end_to_end: trials < 1");
    if (cfg.noise_variance.size() != 1 &&
        cfg.noise_variance.size() != static_cast<std::size_t>(users))
        throw std::invalid_argument(
            "run_end_to_end: noise_variance must hold one value or one per user");
    for (double v : cfg.noise_variance)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("run_end_to_end: noise variance must be nonnegative");
    for (const ScheduleEntry& e : sched.entries) check_entry(e);

    const UserGrouping grouping = group_users(ch.gains);
    std::vector<bool> is_near(static_cast<std::size_t>(users), false);
    for (int u : grouping.near) is_near[static_cast<std::size_t>(u)] = true;

    const std::size_t bits = static_cast<std::size_t>(cfg.packet_bits);
    auto sigma2_of = [&](int u) {
        return cfg.noise_variance.size() == 1 ? cfg.noise_variance[0]
                                              : cfg.noise_variance[static_cast<std::size_t>(u)];
    };

    std::vector<long> successes(static_cast<std::size_t>(users), 0);
    std::vector<long> bit_errors(static_cast<std::size_t>(users), 0);

    std::mt19937_64 rng;
    std::vector<BitBlock> messages(static_cast<std::size_t>(n));
    // Received rows per user, reused across trials.
    std::vector<std::vector<std::pair<std::uint64_t, BitBlock>>> inbox(
        static_cast<std::size_t>(users));

    for (int trial = 0; trial < cfg.trials; ++trial) {
        rng.seed(trial_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
        for (BitBlock& m : messages) {
            m.resize(bits);
            for (std::uint8_t& b : m) b = static_cast<std::uint8_t>(rng() & 1);
        }
        for (auto& box : inbox) box.clear();

        for (const ScheduleEntry& e : sched.entries) {
            BitBlock far_payload, near_payload;
            SymbolStream tx;
            if (e.kind == ScheduleEntry::Kind::noma) {
                far_payload = row_payload(*e.far_row, messages, bits);
                near_payload = row_payload(*e.near_row, messages, bits);
                tx = superpose({{ch.alpha, modulate_bpsk(near_payload)},
                                {1.0 - ch.alpha, modulate_bpsk(far_payload)}},
                               ch.power);
            } else if (e.audience == ScheduleEntry::Audience::far_users) {
                far_payload = row_payload(*e.far_row, messages, bits);
                tx = superpose({{1.0, modulate_bpsk(far_payload)}}, ch.power);
            } else {
                near_payload = row_payload(*e.near_row, messages, bits);
                tx = superpose({{1.0, modulate_bpsk(near_payload)}}, ch.power);
            }

            for (int u = 0; u < users; ++u) {
                const std::size_t su = static_cast<std::size_t>(u);
                SymbolStream z = receive(tx, ch.gains[su], sigma2_of(u), rng);
                if (e.kind == ScheduleEntry::Kind::noma) {
                    if (is_near[su]) {
                        auto [far_bits, near_bits] =
                            sic_decode_near(z, ch.gains[su], ch.alpha, ch.power);
                        inbox[su].emplace_back(e.far_row->word(), std::move(far_bits));
                        inbox[su].emplace_back(e.near_row->word(), std::move(near_bits));
                    } else {
                        inbox[su].emplace_back(e.far_row->word(), slice_bpsk(z));
                    }
                } else if (e.audience == ScheduleEntry::Audience::far_users) {
                    inbox[su].emplace_back(e.far_row->word(), slice_bpsk(z));
                } else if (is_near[su]) {
                    inbox[su].emplace_back(e.near_row->word(), slice_bpsk(z));
                }
                // Far users ignore near-audience solo entries: that layer is
                // never addressed to them.
            }
        }

        for (int u = 0; u < users; ++u) {
            const std::size_t su = static_cast<std::size_t>(u);
            const Receiver& r = p.receiver(u);
            PayloadBasis basis;
            for (int i = 0; i < r.side_info().rows(); ++i) {
                const BitVector row = r.side_info().row(i);
                basis.insert(row.word(), row_payload(row, messages, bits));
            }
            for (auto& [vec, payload] : inbox[su]) basis.insert(vec, payload);

            bool all_ok = true;
            for (int w : r.wants()) {
                auto decoded = basis.solve(std::uint64_t{1} << w, bits);
                if (!decoded) {
                    all_ok = false;
                    bit_errors[su] += cfg.packet_bits;
                    continue;
                }
                const BitBlock& truth = messages[static_cast<std::size_t>(w)];
                long wrong = 0;
                for (std::size_t i = 0; i < bits; ++i) wrong += (*decoded)[i] != truth[i];
                bit_errors[su] += wrong;
                if (wrong != 0) all_ok = false;
            }
            if (all_ok) ++successes[su];
        }
    }

    SimResult result;
    result.success_rate.resize(static_cast<std::size_t>(users));
    result.bit_error_rate.resize(static_cast<std::size_t>(users));
    for (int u = 0; u < users; ++u) {
        const std::size_t su = static_cast<std::size_t>(u);
        const long want_bits =
            static_cast<long>(p.receiver(u).wants().size()) * cfg.packet_bits * cfg.trials;
        result.success_rate[su] = static_cast<double>(successes[su]) / cfg.trials;
        result.bit_error_rate[su] =
            want_bits == 0 ? 0.0 : static_cast<double>(bit_errors[su]) / want_bits;
    }
    return result;
}

}   // namespace icnoma
