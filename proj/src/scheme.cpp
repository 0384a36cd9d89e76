#include "icnoma/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace icnoma {

namespace {

void check_gains(const std::vector<double>& gains) {
    if (gains.empty()) throw std::invalid_argument("gains: at least one user required");
    for (std::size_t i = 0; i < gains.size(); ++i)
        if (!std::isfinite(gains[i]) || gains[i] <= 0.0)
            throw std::invalid_argument("gains: user " + std::to_string(i + 1) +
                                        " must have a positive finite gain");
}

void check_grouping(int user_count, const UserGrouping& g) {
    std::vector<bool> seen(static_cast<std::size_t>(user_count), false);
    auto mark = [&](const std::vector<int>& ids) {
        for (int u : ids) {
            if (u < 0 || u >= user_count)
                throw std::invalid_argument("grouping: user index out of range");
            if (seen[static_cast<std::size_t>(u)])
                throw std::invalid_argument("grouping: user " + std::to_string(u + 1) +
                                            " appears twice");
            seen[static_cast<std::size_t>(u)] = true;
        }
    };
    mark(g.far);
    mark(g.near);
    for (std::size_t u = 0; u < seen.size(); ++u)
        if (!seen[u])
            throw std::invalid_argument("grouping: user " + std::to_string(u + 1) +
                                        " missing from both groups");
}

double mean_over(const std::vector<double>& gains, const std::vector<int>& ids) {
    double sum = 0.0;
    for (int u : ids) sum += gains[static_cast<std::size_t>(u)];
    return sum / static_cast<double>(ids.size());
}

IcNomaScheme degenerate_scheme(const IndexCodingProblem& p, const UserGrouping& g, int l_ic,
                               const SearchLimits& limits) {
    LinearIndexCode code = l_ic == 0 ? LinearIndexCode::empty(p.message_count())
                                     : enumerate_optimal_codes(p, l_ic, limits).front();
    return IcNomaScheme{g, SchemeCase::degenerate, std::move(code),
                        LinearIndexCode::empty(p.message_count()), std::nullopt, l_ic};
}

IcNomaScheme design_impl(const IndexCodingProblem& p, const UserGrouping& g,
                         const SearchLimits& limits, bool remark1_fallback) {
    check_grouping(p.receiver_count(), g);
    const int n = p.message_count();
    const int l_ic = min_code_length(p, -1, limits);

    if (g.far.empty() || g.near.empty()) return degenerate_scheme(p, g, l_ic, limits);

    IndexCodingProblem far_problem = group_subproblem(p, g.far);
    IndexCodingProblem near_problem = group_subproblem(p, g.near);
    const int l_f = min_code_length(far_problem, -1, limits);
    std::vector<LinearIndexCode> far_codes = enumerate_optimal_codes(far_problem, l_f, limits);

    // Minimize the residual near length over all optimal far codes; the
    // running best bounds later searches.
    const int ceiling = std::min(n, limits.max_length);
    int best_ln = ceiling + 1;
    const LinearIndexCode* best_far = nullptr;
    for (const LinearIndexCode& fc : far_codes) {
        std::optional<int> ln =
            try_min_code_length(reduce_problem(near_problem, fc.matrix()), best_ln - 1, limits);
        if (ln && *ln < best_ln) {
            best_ln = *ln;
            best_far = &fc;
            if (best_ln == 0) break;
        }
    }
    if (!best_far)
        throw SearchLimitError("design: no near code within length limit " +
                               std::to_string(ceiling) + " for any optimal far code");

    if (remark1_fallback && l_f == l_ic && best_ln >= 1 && l_f >= best_ln)
        return degenerate_scheme(p, g, l_ic, limits);

    IndexCodingProblem reduced = reduce_problem(near_problem, best_far->matrix());
    LinearIndexCode near_code = best_ln == 0
                                    ? LinearIndexCode::empty(n)
                                    : enumerate_optimal_codes(reduced, best_ln, limits).front();

    SchemeCase kind = l_f == best_ln  ? SchemeCase::case1
                      : l_f > best_ln ? SchemeCase::case2
                                      : SchemeCase::case3;
    if (std::max(l_f, best_ln) > l_ic)
        throw std::logic_error("design: scheme longer than conventional index code");
    return IcNomaScheme{g,         kind,       *best_far,
                        std::move(near_code), std::move(reduced), l_ic};
}

}   // namespace

IndexCodingProblem group_subproblem(const IndexCodingProblem& p, const std::vector<int>& users) {
    std::vector<Receiver> rs;
    rs.reserve(users.size());
    for (int u : users) rs.push_back(p.receiver(u));
    return IndexCodingProblem(p.message_count(), std::move(rs));
}

UserGrouping group_users(const std::vector<double>& gains) {
    check_gains(gains);
    const double g_max = *std::max_element(gains.begin(), gains.end());
    const double g_min = *std::min_element(gains.begin(), gains.end());
    UserGrouping g;
    for (std::size_t i = 0; i < gains.size(); ++i) {
        if (std::abs(g_max - gains[i]) > std::abs(g_min - gains[i]))
            g.far.push_back(static_cast<int>(i));
        else
            g.near.push_back(static_cast<int>(i));
    }
    return g;
}

ChannelProfile make_channel_profile(const std::vector<double>& gains, const UserGrouping& g,
                                    double power, double alpha) {
    check_gains(gains);
    check_grouping(static_cast<int>(gains.size()), g);
    if (!std::isfinite(power) || power <= 0.0)
        throw std::invalid_argument("channel: power must be positive");
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 0.5)
        throw std::invalid_argument("channel: alpha must lie in (0, 0.5)");

    ChannelProfile c;
    c.gains = gains;
    c.power = power;
    c.alpha = alpha;
    if (g.far.empty()) {
        c.g_near = mean_over(gains, g.near);
        c.g_far = c.g_near;
    } else if (g.near.empty()) {
        c.g_far = mean_over(gains, g.far);
        c.g_near = c.g_far;
    } else {
        c.g_far = mean_over(gains, g.far);
        c.g_near = mean_over(gains, g.near);
        if (c.g_near <= c.g_far)
            throw std::invalid_argument("channel: far group must be weaker than near group");
    }
    return c;
}

std::string scheme_case_name(SchemeCase c) {
    switch (c) {
        case SchemeCase::case1: return "CaseI";
        case SchemeCase::case2: return "CaseII";
        case SchemeCase::case3: return "CaseIII";
        case SchemeCase::degenerate: return "Degenerate";
    }
    throw std::invalid_argument("scheme_case_name: unknown case");
}

IcNomaScheme design_alg1(const IndexCodingProblem& p, const UserGrouping& g,
                         const SearchLimits& limits) {
    return design_impl(p, g, limits, false);
}

IcNomaScheme design_alg2(const IndexCodingProblem& p, const UserGrouping& g,
                         const SearchLimits& limits) {
    return design_impl(p, g, limits, true);
}

LinearIndexCode conventional_code(const IndexCodingProblem& p, const SearchLimits& limits) {
    const int l = min_code_length(p, -1, limits);
    if (l == 0) return LinearIndexCode::empty(p.message_count());
    return enumerate_optimal_codes(p, l, limits).front();
}

TransmissionSchedule build_schedule(const IcNomaScheme& s) {
    TransmissionSchedule sched;
    sched.messages = s.far_code.width();
    if (s.kind == SchemeCase::degenerate) {
        for (int i = 0; i < s.far_code.length(); ++i)
            sched.entries.push_back({ScheduleEntry::Kind::solo, ScheduleEntry::Audience::far_users,
                                     s.far_code.matrix().row(i), std::nullopt});
        return sched;
    }
    const int paired = s.noma_length();
    for (int i = 0; i < paired; ++i)
        sched.entries.push_back({ScheduleEntry::Kind::noma, ScheduleEntry::Audience::far_users,
                                 s.far_code.matrix().row(i), s.near_code.matrix().row(i)});
    for (int i = paired; i < s.far_length(); ++i)
        sched.entries.push_back({ScheduleEntry::Kind::solo, ScheduleEntry::Audience::far_users,
                                 s.far_code.matrix().row(i), std::nullopt});
    for (int i = paired; i < s.near_length(); ++i)
        sched.entries.push_back({ScheduleEntry::Kind::solo, ScheduleEntry::Audience::near_users,
                                 std::nullopt, s.near_code.matrix().row(i)});
    return sched;
}

}   // namespace icnoma
