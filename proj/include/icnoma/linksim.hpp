#ifndef ICNOMA_LINKSIM_HPP
#define ICNOMA_LINKSIM_HPP

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "icnoma/scheme.hpp"

namespace icnoma {

using SymbolStream = std::vector<double>;
using BitBlock = std::vector<std::uint8_t>;   // one 0/1 entry per bit

// BPSK with unit symbol energy: bit 0 -> +1, bit 1 -> -1.
SymbolStream modulate_bpsk(const BitBlock& bits);
BitBlock slice_bpsk(const SymbolStream& symbols);

// Power-domain superposition: elementwise sum of sqrt(fraction * power) * s_i.
// Fractions must be positive and sum to 1 within 1e-12.
SymbolStream superpose(const std::vector<std::pair<double, SymbolStream>>& parts, double power);

// Flat channel with additive white Gaussian noise: sqrt(gain) * tx + n,
// n ~ N(0, sigma2) drawn from rng (nothing drawn when sigma2 == 0).
SymbolStream receive(const SymbolStream& tx, double gain, double sigma2, std::mt19937_64& rng);

// Successive interference cancellation at a near user: slice the high-power
// far layer treating the near layer as noise, subtract its reconstruction
// sqrt(gain * (1 - alpha) * power) * s_far, then slice the near layer.
std::pair<BitBlock, BitBlock> sic_decode_near(const SymbolStream& z, double gain, double alpha,
                                              double power);

struct SimConfig {
    int packet_bits = 32;
    // One entry broadcast to every user, or one entry per user.
    std::vector<double> noise_variance{0.0};
    int trials = 100;
    std::uint64_t seed = 1;
    bool operator==(const SimConfig&) const = default;
};

struct SimResult {
    // Fraction of trials in which the user recovered every wanted message.
    std::vector<double> success_rate;
    // Fraction of wrong bits across wanted messages; a message the user
    // cannot decode at all counts as fully in error. Users wanting nothing
    // score success 1.0 and BER 0.0.
    std::vector<double> bit_error_rate;
};

// Transmits the schedule per trial over AWGN channels and decodes at every
// user: far users demodulate the far layer of NOMA entries and far-audience
// solo entries (near-audience solos are not meant for them and are skipped);
// near users run SIC on NOMA entries and plain demodulation on every solo
// entry. Each user then solves its wants by GF(2) elimination over received
// rows plus side information. Deterministic for a fixed config: trial t uses
// a sub-seed derived from seed and t alone.
SimResult run_end_to_end(const IndexCodingProblem& p, const TransmissionSchedule& sched,
                         const ChannelProfile& ch, const SimConfig& cfg);

}   // namespace icnoma

#endif
