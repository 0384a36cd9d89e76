#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <set>
#include <vector>

#include "icnoma/linksim.hpp"
#include "icnoma/scheme.hpp"
#include "test_support.hpp"

using namespace icnoma;

namespace {

IndexCodingProblem three_user_problem() {
    std::vector<Receiver> rs;
    rs.emplace_back(BitMatrix(3, {0b010}), std::set<int>{0});
    rs.emplace_back(BitMatrix(3, {0b001}), std::set<int>{1});
    rs.emplace_back(BitMatrix(3), std::set<int>{2});
    return IndexCodingProblem(3, std::move(rs));
}

IndexCodingProblem seven_message_problem() {
    std::vector<Receiver> rs;
    rs.emplace_back(BitMatrix(7, {0b0000001, 0b0000010, 0b0000100}),
                    std::set<int>{0, 3, 4, 5});
    rs.emplace_back(BitMatrix(7, {0b0000010, 0b0000100, 0b0001000}), std::set<int>{0, 4, 5});
    rs.emplace_back(BitMatrix(7, {0b0000100, 0b0001000, 0b0010000}), std::set<int>{0, 1, 5});
    rs.emplace_back(BitMatrix(7, {0b0010000, 0b0100000, 0b1000000}),
                    std::set<int>{0, 2, 3, 4, 6});
    rs.emplace_back(BitMatrix(7, {0b0100000, 0b1000000}), std::set<int>{2, 5});
    return IndexCodingProblem(7, std::move(rs));
}

BitBlock random_bits(std::mt19937_64& rng, std::size_t n) {
    BitBlock b(n);
    for (auto& bit : b) bit = static_cast<std::uint8_t>(rng() & 1);
    return b;
}

}   // namespace

TEST_CASE("BPSK mapping and slicing") {
    const BitBlock bits = {0, 1, 1, 0};
    const SymbolStream s = modulate_bpsk(bits);
    CHECK(s == SymbolStream{1.0, -1.0, -1.0, 1.0});
    CHECK(slice_bpsk(s) == bits);
    CHECK(slice_bpsk({0.0, -0.1, 2.5}) == BitBlock{0, 1, 0});
    CHECK(modulate_bpsk({}).empty());
}

TEST_CASE("superpose scales by power fractions") {
    CHECK(superpose({{1.0, {1.0, -1.0}}}, 9.0) == SymbolStream{3.0, -3.0});

    // Quarter of unit power to the near layer against an opposing far symbol.
    const SymbolStream mix = superpose({{0.25, {1.0}}, {0.75, {-1.0}}}, 1.0);
    REQUIRE(mix.size() == 1);
    CHECK(mix[0] == doctest::Approx(0.5 - std::sqrt(0.75)).epsilon(1e-12));

    CHECK_THROWS_AS(superpose({}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(superpose({{0.5, {1.0}}, {0.4, {1.0}}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(superpose({{0.5, {1.0}}, {0.5, {1.0, 1.0}}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(superpose({{-0.5, {1.0}}, {1.5, {1.0}}}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(superpose({{1.0, {1.0}}}, -1.0), std::invalid_argument);
}

TEST_CASE("receive is exact without noise and leaves the generator alone") {
    std::mt19937_64 rng(7);
    const SymbolStream tx = {1.0, -2.0, 0.5};
    CHECK(receive(tx, 4.0, 0.0, rng) == SymbolStream{2.0, -4.0, 1.0});
    CHECK(rng() == std::mt19937_64(7)());   // nothing was drawn

    std::mt19937_64 a(11);
    std::mt19937_64 b(11);
    CHECK(receive(tx, 1.0, 0.3, a) == receive(tx, 1.0, 0.3, b));

    CHECK_THROWS_AS(receive(tx, 0.0, 0.1, rng), std::invalid_argument);
    CHECK_THROWS_AS(receive(tx, 1.0, -0.1, rng), std::invalid_argument);
}

TEST_CASE("received noise has the configured variance") {
    std::mt19937_64 rng(13);
    const SymbolStream quiet(100000, 0.0);
    const SymbolStream z = receive(quiet, 1.0, 0.3, rng);
    double mean = 0.0;
    for (double v : z) mean += v;
    mean /= static_cast<double>(z.size());
    double var = 0.0;
    for (double v : z) var += (v - mean) * (v - mean);
    var /= static_cast<double>(z.size() - 1);
    CHECK(var == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("SIC recovers both layers exactly without noise") {
    std::mt19937_64 rng(17);
    for (double alpha : {0.1, 0.25, 0.45}) {
        const BitBlock far = random_bits(rng, 64);
        const BitBlock near = random_bits(rng, 64);
        const SymbolStream tx =
            superpose({{alpha, modulate_bpsk(near)}, {1.0 - alpha, modulate_bpsk(far)}}, 10.0);
        const SymbolStream z = receive(tx, 0.7, 0.0, rng);
        const auto [far_hat, near_hat] = sic_decode_near(z, 0.7, alpha, 10.0);
        CHECK(far_hat == far);
        CHECK(near_hat == near);
    }
    CHECK_THROWS_AS(sic_decode_near({1.0}, 1.0, 0.5, 10.0), std::invalid_argument);
    CHECK_THROWS_AS(sic_decode_near({1.0}, -1.0, 0.25, 10.0), std::invalid_argument);
}

TEST_CASE("SIC bit error rate is tiny at high SNR") {
    std::mt19937_64 rng(19);
    const std::size_t bits = 100000;
    const BitBlock far = random_bits(rng, bits);
    const BitBlock near = random_bits(rng, bits);
    const SymbolStream tx =
        superpose({{0.25, modulate_bpsk(near)}, {0.75, modulate_bpsk(far)}}, 10.0);
    const SymbolStream z = receive(tx, 1.0, 0.01, rng);
    const auto [far_hat, near_hat] = sic_decode_near(z, 1.0, 0.25, 10.0);

    std::size_t errors = 0;
    for (std::size_t i = 0; i < bits; ++i) {
        errors += far_hat[i] != far[i];
        errors += near_hat[i] != near[i];
    }
    CHECK(static_cast<double>(errors) / static_cast<double>(2 * bits) < 1e-3);
}

TEST_CASE("noiseless end-to-end delivery succeeds exactly") {
    const IndexCodingProblem p = three_user_problem();
    const std::vector<double> gains = {1.0, 0.95, 0.2};
    const UserGrouping g = group_users(gains);
    const IcNomaScheme s = design_alg2(p, g);
    const ChannelProfile ch = make_channel_profile(gains, g, 10.0, 0.25);

    SimConfig cfg;
    cfg.trials = 50;
    const SimResult res = run_end_to_end(p, build_schedule(s), ch, cfg);
    REQUIRE(res.success_rate.size() == 3);
    for (int u = 0; u < 3; ++u) {
        CHECK(res.success_rate[static_cast<std::size_t>(u)] == 1.0);
        CHECK(res.bit_error_rate[static_cast<std::size_t>(u)] == 0.0);
    }
}

TEST_CASE("fixed seeds reproduce bit-identical results") {
    const IndexCodingProblem p = seven_message_problem();
    const std::vector<double> gains = {1.0, 1.0, 1.0, 0.2, 0.2};
    const UserGrouping g = group_users(gains);
    const TransmissionSchedule sched = build_schedule(design_alg2(p, g));
    const ChannelProfile ch = make_channel_profile(gains, g, 10.0, 0.25);

    SimConfig cfg;
    cfg.noise_variance = {0.8};
    cfg.trials = 200;
    cfg.seed = 42;
    const SimResult a = run_end_to_end(p, sched, ch, cfg);
    const SimResult b = run_end_to_end(p, sched, ch, cfg);
    CHECK(a.success_rate == b.success_rate);
    CHECK(a.bit_error_rate == b.bit_error_rate);
}

TEST_CASE("bit error rate falls as the noise does") {
    const IndexCodingProblem p = three_user_problem();
    const std::vector<double> gains = {1.0, 0.95, 0.2};
    const UserGrouping g = group_users(gains);
    const TransmissionSchedule sched = build_schedule(design_alg2(p, g));
    const ChannelProfile ch = make_channel_profile(gains, g, 10.0, 0.25);

    SimConfig cfg;
    cfg.trials = 400;
    cfg.seed = 3;

    double prev_ber = 1.0;
    double prev_se = 0.0;
    for (double sigma2 : {2.0, 0.5, 0.05}) {
        cfg.noise_variance = {sigma2};
        const SimResult res = run_end_to_end(p, sched, ch, cfg);
        double ber = 0.0;
        for (double b : res.bit_error_rate) ber += b;
        ber /= static_cast<double>(res.bit_error_rate.size());
        const double bits = 400.0 * 32.0 * 3.0;
        const double se = std::sqrt(std::max(ber * (1.0 - ber), 1e-9) / bits);
        CHECK(ber <= prev_ber + 2.0 * (se + prev_se));
        prev_ber = ber;
        prev_se = se;
    }
}

TEST_CASE("users who want nothing always succeed and far users skip near solos") {
    // The far user wants nothing; the whole schedule is one near-audience solo.
    std::vector<Receiver> rs;
    rs.emplace_back(BitMatrix(2), std::set<int>{0});
    rs.emplace_back(BitMatrix(2, {0b01, 0b10}), std::set<int>{});
    const IndexCodingProblem p(2, std::move(rs));
    const std::vector<double> gains = {1.0, 0.2};
    const UserGrouping g = group_users(gains);
    const IcNomaScheme s = design_alg2(p, g);
    REQUIRE(s.far_length() == 0);
    REQUIRE(s.near_length() == 1);

    const TransmissionSchedule sched = build_schedule(s);
    REQUIRE(sched.entries.size() == 1);
    CHECK(sched.entries[0].audience == ScheduleEntry::Audience::near_users);

    SimConfig cfg;
    cfg.noise_variance = {0.2};
    cfg.trials = 64;
    const SimResult res = run_end_to_end(p, sched, make_channel_profile(gains, g, 10.0, 0.25), cfg);
    CHECK(res.success_rate[1] == 1.0);
    CHECK(res.bit_error_rate[1] == 0.0);
}

TEST_CASE("simulation agrees with the span criterion on truncated schedules") {
    const IndexCodingProblem p = seven_message_problem();
    const std::vector<double> gains = {1.0, 1.0, 1.0, 0.2, 0.2};
    const UserGrouping g = group_users(gains);
    const TransmissionSchedule full = build_schedule(design_alg2(p, g));
    const ChannelProfile ch = make_channel_profile(gains, g, 10.0, 0.25);
    const std::set<int> near_set(g.near.begin(), g.near.end());

    SimConfig cfg;
    cfg.trials = 16;
    for (std::size_t keep = 0; keep <= full.entries.size(); ++keep) {
        TransmissionSchedule cut = full;
        cut.entries.resize(keep);
        const SimResult res = run_end_to_end(p, cut, ch, cfg);
        for (int u = 0; u < p.receiver_count(); ++u) {
            const bool expect = testsupport::user_can_decode(
                p.receiver(u), testsupport::received_rows(cut, near_set.count(u) > 0));
            CHECK(res.success_rate[static_cast<std::size_t>(u)] == (expect ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("run_end_to_end validates its inputs") {
    const IndexCodingProblem p = three_user_problem();
    const std::vector<double> gains = {1.0, 0.95, 0.2};
    const UserGrouping g = group_users(gains);
    const TransmissionSchedule sched = build_schedule(design_alg2(p, g));
    const ChannelProfile ch = make_channel_profile(gains, g, 10.0, 0.25);

    SimConfig cfg;
    cfg.trials = 0;
    CHECK_THROWS_AS(run_end_to_end(p, sched, ch, cfg), std::invalid_argument);
    cfg.trials = 4;
    cfg.packet_bits = 0;
    CHECK_THROWS_AS(run_end_to_end(p, sched, ch, cfg), std::invalid_argument);
    cfg.packet_bits = 8;
    cfg.noise_variance = {0.1, 0.1};   // neither one-for-all nor one-per-user
    CHECK_THROWS_AS(run_end_to_end(p, sched, ch, cfg), std::invalid_argument);
    cfg.noise_variance = {-0.1};
    CHECK_THROWS_AS(run_end_to_end(p, sched, ch, cfg), std::invalid_argument);
    cfg.noise_variance = {0.1, 0.1, 0.1};
    CHECK_NOTHROW(run_end_to_end(p, sched, ch, cfg));

    // Width and user-count mismatches are rejected.
    const ChannelProfile wrong_users = make_channel_profile({1.0, 0.2}, group_users({1.0, 0.2}),
                                                            10.0, 0.25);
    SimConfig ok;
    CHECK_THROWS_AS(run_end_to_end(p, sched, wrong_users, ok), std::invalid_argument);

    const IndexCodingProblem p4 = [] {
        std::vector<Receiver> rs;
        rs.emplace_back(BitMatrix(4), std::set<int>{0});
        rs.emplace_back(BitMatrix(4), std::set<int>{1});
        rs.emplace_back(BitMatrix(4), std::set<int>{2});
        return IndexCodingProblem(4, std::move(rs));
    }();
    CHECK_THROWS_AS(run_end_to_end(p4, sched, ch, ok), std::invalid_argument);
}
