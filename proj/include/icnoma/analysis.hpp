#ifndef ICNOMA_ANALYSIS_HPP
#define ICNOMA_ANALYSIS_HPP

#include <stdexcept>

#include "icnoma/scheme.hpp"

namespace icnoma {

// Thrown when the requested QoS rate cannot be met at the far user for any
// finite power under the given power split.
class QosInfeasibleError : public std::runtime_error {
public:
    QosInfeasibleError(double alpha, double rate);

    double alpha;
    double rate;
};

// Achievable broadcast rate of a conventional index-coded transmission,
// limited by the weaker (far) group.
double rate_ic(double power, double g_far);

// Per-layer and sum rates of one NOMA transmission: the far layer is decoded
// under interference from the near layer, the near layer after the far layer
// is removed by successive interference cancellation.
struct NomaRates {
    double r_far = 0.0;
    double r_near = 0.0;
    double r_sum = 0.0;
};

NomaRates rate_noma(double power, double alpha, double g_far, double g_near);

// r_sum - rate_ic at equal power: the rate advantage of superposing.
double rate_gain(double power, double alpha, double g_far, double g_near);

// Rate of the index-coded-only part of a mixed schedule: solo transmissions
// reach far users in CaseII and near users in CaseIII.
double rate_ic_part(SchemeCase kind, double power, double g_far, double g_near);

// Length-weighted average rate over one schedule period.
double avg_rate(SchemeCase kind, int l_f, int l_n, double power, double alpha, double g_far,
                double g_near);

// Extra power a conventional transmission needs to match the NOMA sum rate
// at transmit power `power`.
double zeta(double power, double alpha, double g_far, double g_near);

// Extra power a conventional transmission needs on top of p_solo_near to
// match the rate a near-audience solo transmission achieves at p_solo_near.
double zeta1(double p_solo_near, double g_far, double g_near);

// NOMA power P_a with rate_noma(P_a).r_sum == rate_ic(power_ic), found by
// bisection on [0, power_ic] to 1e-10 relative accuracy.
double solve_noma_power(double power_ic, double alpha, double g_far, double g_near);

// CaseIII solo power for near users matching the conventional rate.
double case3_ic_power(double power_ic, double g_far, double g_near);

// Total power saved over one schedule period versus l_ic conventional
// transmissions at power_ic.
double power_saving(SchemeCase kind, int l_f, int l_n, int l_ic, double power_ic, double alpha,
                    double g_far, double g_near);

// Length-weighted average transmit power over one schedule period.
double avg_power(SchemeCase kind, int l_f, int l_n, double power_ic, double alpha, double g_far,
                 double g_near);

// Minimum per-transmission powers meeting a target rate at every user.
struct QosPowers {
    double p_ic = 0.0;     // conventional transmission
    double p_near = 0.0;   // near layer within a NOMA transmission
    double p_far = 0.0;    // far layer within a NOMA transmission
    double p_noma = 0.0;   // whole NOMA transmission: max(p_near, p_far)
    double p_solo_far = 0.0;    // CaseII solo slot (far audience)
    double p_solo_near = 0.0;   // CaseIII solo slot (near audience)
};

QosPowers qos_powers(double rate, double alpha, double g_far, double g_near);

// Schedule-period power totals at the QoS minimum.
struct QosTotals {
    double total_ic = 0.0;
    double total_icnoma = 0.0;
};

QosTotals qos_totals(SchemeCase kind, int l_f, int l_n, int l_ic, const QosPowers& p);

// Report assemblers over a designed scheme and its channel.
struct RateReport {
    double r_ic = 0.0;
    NomaRates noma;
    double r_gain = 0.0;
    double r_ic_part = 0.0;   // 0 when the schedule has no solo slots
    double r_avg = 0.0;
};

struct PowerReport {
    double p_ic = 0.0;
    double p_noma = 0.0;   // P_a
    double zeta = 0.0;
    double p_solo_near = 0.0;   // CaseIII solo power
    double zeta1 = 0.0;
    double saving = 0.0;
    double p_avg = 0.0;
};

RateReport make_rate_report(const IcNomaScheme& s, const ChannelProfile& c);
PowerReport make_power_report(const IcNomaScheme& s, const ChannelProfile& c);

}   // namespace icnoma

#endif
