#include "icnoma/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace icnoma {

namespace {

void check_power(double power) {
    if (!std::isfinite(power) || power < 0.0)
        throw std::invalid_argument("analysis: power must be nonnegative");
}

void check_alpha(double alpha) {
    if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 0.5)
        throw std::invalid_argument("analysis: alpha must lie in (0, 0.5)");
}

void check_gains(double g_far, double g_near) {
    if (!std::isfinite(g_far) || g_far <= 0.0)
        throw std::invalid_argument("analysis: far gain must be positive");
    if (!std::isfinite(g_near) || g_near < g_far)
        throw std::invalid_argument("analysis: near gain must be at least the far gain");
}

// Lengths must agree with the case tag; degenerate is rejected here because
// per-case formulas have no meaning for a conventional-only scheme.
void check_case(SchemeCase kind, int l_f, int l_n) {
    if (l_f < 0 || l_n < 0) throw std::invalid_argument("analysis: negative code length");
    switch (kind) {
        case SchemeCase::case1:
            if (l_f != l_n) throw std::invalid_argument("analysis: CaseI requires l_f = l_n");
            return;
        case SchemeCase::case2:
            if (l_f <= l_n) throw std::invalid_argument("analysis: CaseII requires l_f > l_n");
            return;
        case SchemeCase::case3:
            if (l_f >= l_n) throw std::invalid_argument("analysis: CaseIII requires l_f < l_n");
            return;
        case SchemeCase::degenerate:
            throw std::invalid_argument("analysis: degenerate scheme has no per-case formula");
    }
    throw std::invalid_argument("analysis: unknown case");
}

}   // namespace

QosInfeasibleError::QosInfeasibleError(double alpha_, double rate_)
    : std::runtime_error("qos: rate " + std::to_string(rate_) + " is unreachable at alpha " +
                         std::to_string(alpha_) +
                         " (far layer cannot meet it at any power)"),
      alpha(alpha_),
      rate(rate_) {}

double rate_ic(double power, double g_far) {
    check_power(power);
    check_gains(g_far, g_far);
    return std::log2(1.0 + g_far * power);
}

NomaRates rate_noma(double power, double alpha, double g_far, double g_near) {
    check_power(power);
    check_alpha(alpha);
    check_gains(g_far, g_near);
    NomaRates r;
    r.r_far = std::log2(1.0 + (1.0 - alpha) * power * g_far / (alpha * power * g_far + 1.0));
    r.r_near = std::log2(1.0 + alpha * power * g_near);
    r.r_sum = r.r_far + r.r_near;
    return r;
}

double rate_gain(double power, double alpha, double g_far, double g_near) {
    check_power(power);
    check_alpha(alpha);
    check_gains(g_far, g_near);
    return std::log2((1.0 + alpha * power * g_near) / (1.0 + alpha * power * g_far));
}

double rate_ic_part(SchemeCase kind, double power, double g_far, double g_near) {
    check_power(power);
    check_gains(g_far, g_near);
    if (kind == SchemeCase::case2) return std::log2(1.0 + power * g_far);
    if (kind == SchemeCase::case3) return std::log2(1.0 + power * g_near);
    throw std::invalid_argument("rate_ic_part: schedule has no solo part in this case");
}

double avg_rate(SchemeCase kind, int l_f, int l_n, double power, double alpha, double g_far,
                double g_near) {
    check_case(kind, l_f, l_n);
    const int total = std::max(l_f, l_n);
    if (total == 0) throw std::invalid_argument("avg_rate: empty schedule");
    const double r_sum = rate_noma(power, alpha, g_far, g_near).r_sum;
    if (kind == SchemeCase::case1) return r_sum;
    const int paired = std::min(l_f, l_n);
    const double r_solo = rate_ic_part(kind, power, g_far, g_near);
    return (paired * r_sum + (total - paired) * r_solo) / total;
}

double zeta(double power, double alpha, double g_far, double g_near) {
    check_power(power);
    check_alpha(alpha);
    check_gains(g_far, g_near);
    return (1.0 + power * g_far) * (alpha * power * (g_near - g_far)) /
           (g_far * (1.0 + alpha * power * g_far));
}

double zeta1(double p_solo_near, double g_far, double g_near) {
    check_power(p_solo_near);
    check_gains(g_far, g_near);
    return (g_near - g_far) * p_solo_near / g_far;
}

double solve_noma_power(double power_ic, double alpha, double g_far, double g_near) {
    check_power(power_ic);
    check_alpha(alpha);
    check_gains(g_far, g_near);
    if (power_ic == 0.0) return 0.0;

    // rate_noma(.).r_sum is strictly increasing in power and meets or exceeds
    // rate_ic at power_ic, so the root lies in [0, power_ic].
    const double target = std::log2(1.0 + g_far * power_ic);
    auto rate = [&](double p) {
        return std::log2(1.0 + (1.0 - alpha) * p * g_far / (alpha * p * g_far + 1.0)) +
               std::log2(1.0 + alpha * p * g_near);
    };
    double lo = 0.0, hi = power_ic;
    while (hi - lo > 1e-10 * power_ic) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;   // interval at floating resolution
        if (rate(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

double case3_ic_power(double power_ic, double g_far, double g_near) {
    check_power(power_ic);
    check_gains(g_far, g_near);
    return power_ic * g_far / g_near;
}

double power_saving(SchemeCase kind, int l_f, int l_n, int l_ic, double power_ic, double alpha,
                    double g_far, double g_near) {
    check_case(kind, l_f, l_n);
    if (l_ic < std::max(l_f, l_n))
        throw std::invalid_argument("power_saving: conventional length below scheme length");
    const double p_a = solve_noma_power(power_ic, alpha, g_far, g_near);
    switch (kind) {
        case SchemeCase::case1: return l_ic * power_ic - l_n * p_a;
        case SchemeCase::case2: return l_ic * power_ic - (l_n * p_a + (l_f - l_n) * power_ic);
        case SchemeCase::case3: {
            const double p_b3 = case3_ic_power(power_ic, g_far, g_near);
            return l_ic * power_ic - (l_f * p_a + (l_n - l_f) * p_b3);
        }
        default: throw std::invalid_argument("power_saving: unknown case");
    }
}

double avg_power(SchemeCase kind, int l_f, int l_n, double power_ic, double alpha, double g_far,
                 double g_near) {
    check_case(kind, l_f, l_n);
    const int total = std::max(l_f, l_n);
    if (total == 0) throw std::invalid_argument("avg_power: empty schedule");
    const double p_a = solve_noma_power(power_ic, alpha, g_far, g_near);
    if (kind == SchemeCase::case1) return p_a;
    const int paired = std::min(l_f, l_n);
    const double p_solo =
        kind == SchemeCase::case2 ? power_ic : case3_ic_power(power_ic, g_far, g_near);
    return (paired * p_a + (total - paired) * p_solo) / total;
}

QosPowers qos_powers(double rate, double alpha, double g_far, double g_near) {
    if (!std::isfinite(rate) || rate <= 0.0)
        throw std::invalid_argument("qos_powers: rate must be positive");
    check_alpha(alpha);
    check_gains(g_far, g_near);
    const double need = std::exp2(rate) - 1.0;
    QosPowers p;
    p.p_ic = need / g_far;
    p.p_near = need / (alpha * g_near);
    const double denom = 1.0 - alpha - alpha * need;
    if (denom <= 0.0) throw QosInfeasibleError(alpha, rate);
    p.p_far = need / (g_far * denom);
    p.p_noma = std::max(p.p_near, p.p_far);
    p.p_solo_far = p.p_ic;
    p.p_solo_near = need / g_near;
    return p;
}

QosTotals qos_totals(SchemeCase kind, int l_f, int l_n, int l_ic, const QosPowers& p) {
    if (l_ic < 0) throw std::invalid_argument("qos_totals: negative conventional length");
    QosTotals t;
    t.total_ic = p.p_ic * l_ic;
    if (kind == SchemeCase::degenerate) {
        t.total_icnoma = t.total_ic;
        return t;
    }
    check_case(kind, l_f, l_n);
    switch (kind) {
        case SchemeCase::case1: t.total_icnoma = p.p_noma * l_n; break;
        case SchemeCase::case2: t.total_icnoma = p.p_noma * l_n + p.p_solo_far * (l_f - l_n); break;
        case SchemeCase::case3:
            t.total_icnoma = p.p_noma * l_f + p.p_solo_near * (l_n - l_f);
            break;
        default: throw std::invalid_argument("qos_totals: unknown case");
    }
    return t;
}

RateReport make_rate_report(const IcNomaScheme& s, const ChannelProfile& c) {
    RateReport r;
    r.r_ic = rate_ic(c.power, c.g_far);
    r.noma = rate_noma(c.power, c.alpha, c.g_far, c.g_near);
    r.r_gain = rate_gain(c.power, c.alpha, c.g_far, c.g_near);
    if (s.kind == SchemeCase::degenerate) {
        r.r_avg = r.r_ic;
        return r;
    }
    if (s.kind != SchemeCase::case1)
        r.r_ic_part = rate_ic_part(s.kind, c.power, c.g_far, c.g_near);
    r.r_avg = s.total_length() == 0 ? 0.0
                                    : avg_rate(s.kind, s.far_length(), s.near_length(), c.power,
                                               c.alpha, c.g_far, c.g_near);
    return r;
}

PowerReport make_power_report(const IcNomaScheme& s, const ChannelProfile& c) {
    PowerReport p;
    p.p_ic = c.power;
    p.p_noma = solve_noma_power(c.power, c.alpha, c.g_far, c.g_near);
    p.zeta = zeta(p.p_noma, c.alpha, c.g_far, c.g_near);
    p.p_solo_near = case3_ic_power(c.power, c.g_far, c.g_near);
    p.zeta1 = zeta1(p.p_solo_near, c.g_far, c.g_near);
    if (s.kind == SchemeCase::degenerate || s.total_length() == 0) {
        p.saving = 0.0;
        p.p_avg = c.power;
        return p;
    }
    p.saving = power_saving(s.kind, s.far_length(), s.near_length(), s.conventional_length,
                            c.power, c.alpha, c.g_far, c.g_near);
    p.p_avg = avg_power(s.kind, s.far_length(), s.near_length(), c.power, c.alpha, c.g_far,
                        c.g_near);
    return p;
}

}   // namespace icnoma
