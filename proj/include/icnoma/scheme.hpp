#ifndef ICNOMA_SCHEME_HPP
#define ICNOMA_SCHEME_HPP

#include <optional>
#include <string>
#include <vector>

#include "icnoma/index_coding.hpp"

namespace icnoma {

// Partition of user indices by channel strength. Users sit in the far group
// when their gain is strictly closer to the weakest user's than to the
// strongest user's; ties go near, so equal-gain populations degenerate to a
// single all-near group.
struct UserGrouping {
    std::vector<int> far;
    std::vector<int> near;

    friend bool operator==(const UserGrouping&, const UserGrouping&) = default;
};

UserGrouping group_users(const std::vector<double>& gains);

// Restriction of a problem to the listed users (order preserved); the
// far/near subproblems fed to the two design stages.
IndexCodingProblem group_subproblem(const IndexCodingProblem& p, const std::vector<int>& users);

// Channel abstraction used by the analysis formulas and the link simulator:
// per-user gains plus one representative gain per group (arithmetic mean),
// the total transmit power and the NOMA power split.
struct ChannelProfile {
    std::vector<double> gains;
    double g_far = 0.0;
    double g_near = 0.0;
    double power = 0.0;
    double alpha = 0.0;   // fraction of power on the near-user layer
};

ChannelProfile make_channel_profile(const std::vector<double>& gains, const UserGrouping& g,
                                    double power, double alpha);

// CaseI/II/III follow the relation between the two code lengths
// (l_f = l_n, l_f > l_n, l_f < l_n). Degenerate covers one-group inputs and
// the fallback to conventional index coding.
enum class SchemeCase { case1, case2, case3, degenerate };

std::string scheme_case_name(SchemeCase c);

// A designed transmission scheme: index code for the far group, residual
// coded-side-information index code for the near group, and the length of
// the best conventional single-code solution for comparison.
struct IcNomaScheme {
    UserGrouping grouping;
    SchemeCase kind = SchemeCase::degenerate;
    LinearIndexCode far_code;
    LinearIndexCode near_code;
    // Near subproblem after the far code joined the side information; absent
    // for degenerate schemes. Receiver order follows grouping.near.
    std::optional<IndexCodingProblem> reduced_near;
    int conventional_length = 0;

    int far_length() const { return far_code.length(); }
    int near_length() const { return near_code.length(); }
    int noma_length() const { return std::min(far_length(), near_length()); }
    int total_length() const { return std::max(far_length(), near_length()); }
};

// Two-stage designs. Both pick the far code among all optimal far-group
// codes by minimizing the near group's residual code length (ties broken by
// the deterministic enumeration order); design_alg2 additionally falls back
// to conventional index coding when splitting cannot beat it. One-group
// problems yield the degenerate conventional scheme.
IcNomaScheme design_alg1(const IndexCodingProblem& p, const UserGrouping& g,
                         const SearchLimits& limits = {});
IcNomaScheme design_alg2(const IndexCodingProblem& p, const UserGrouping& g,
                         const SearchLimits& limits = {});

// Lexicographically first optimal code for the whole problem.
LinearIndexCode conventional_code(const IndexCodingProblem& p, const SearchLimits& limits = {});

// One broadcast slot: either a NOMA superposition of one near-code row and
// one far-code row, or a full-power solo transmission of a single row.
struct ScheduleEntry {
    enum class Kind { noma, solo };
    enum class Audience { far_users, near_users };

    Kind kind = Kind::solo;
    Audience audience = Audience::far_users;   // meaningful for solo entries
    std::optional<BitVector> far_row;
    std::optional<BitVector> near_row;
};

struct TransmissionSchedule {
    int messages = 0;
    std::vector<ScheduleEntry> entries;

    int length() const { return static_cast<int>(entries.size()); }
};

// min(l_f, l_n) NOMA slots pairing the codes row by row, then the surplus
// rows of the longer code as solo slots (far rows when l_f > l_n, near rows
// when l_f < l_n). Degenerate schemes yield solo far-audience slots only.
TransmissionSchedule build_schedule(const IcNomaScheme& s);

}   // namespace icnoma

#endif
