#include "icnoma/reproduce.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <initializer_list>

#include "icnoma/analysis.hpp"
#include "icnoma/scenario.hpp"

namespace icnoma {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::uint64_t row_bits(std::initializer_list<int> one_based) {
    std::uint64_t w = 0;
    for (int i : one_based) w |= std::uint64_t{1} << (i - 1);
    return w;
}

BitMatrix code_matrix(int n, std::initializer_list<std::initializer_list<int>> rows) {
    BitMatrix m(n);
    for (const auto& r : rows) m.append_row_word(row_bits(r));
    return m;
}

// CSV cell form of a code: rows joined with '|' so cells stay comma-free.
std::string csv_code(const BitMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out += '|';
        out += to_string(m.row(i));
    }
    return out;
}

std::string wants_str(const std::set<int>& wants) {
    std::string out = "{";
    bool first = true;
    for (int w : wants) {
        if (!first) out += ", ";
        first = false;
        out += "x" + std::to_string(w + 1);
    }
    return out + "}";
}

void add(ReproduceResult& res, std::string item, std::string expected, std::string actual,
         bool ok, std::string level = "") {
    if (level.empty()) level = ok ? "exact" : "MISMATCH";
    res.checks.push_back(
        {std::move(item), std::move(expected), std::move(actual), std::move(level), ok});
}

void add_int(ReproduceResult& res, const std::string& item, long long expected,
             long long actual) {
    add(res, item, std::to_string(expected), std::to_string(actual), expected == actual);
}

void add_str(ReproduceResult& res, const std::string& item, const std::string& expected,
             const std::string& actual) {
    add(res, item, expected, actual, expected == actual);
}

// Ladder comparison of a designed code against the published one: identical
// row space, else a valid optimal code of the listed length.
void add_code(ReproduceResult& res, const std::string& item, const BitMatrix& published,
              const LinearIndexCode& ours, const IndexCodingProblem& sub) {
    ReproduceCheck c{item, to_string(published), to_string(ours.matrix()), "MISMATCH", false};
    if (rref(published) == rref(ours.matrix())) {
        c.level = "exact";
        c.ok = true;
    } else if (ours.length() == published.rows() && is_valid_code(sub, ours)) {
        c.level = "equivalent";
        c.ok = true;
    }
    res.checks.push_back(std::move(c));
}

// Confirms a published (far, near) pair really is a coherent design of the
// stated lengths: the far code is optimal for the far subproblem and the
// near code is optimal for the near subproblem it induces.
void add_published_pair(ReproduceResult& res, const std::string& prefix,
                        const IndexCodingProblem& far_sub, const IndexCodingProblem& near_sub,
                        const BitMatrix& far_pub, const BitMatrix& near_pub, int l_f, int l_n) {
    const bool far_ok = far_pub.rows() == l_f && min_code_length(far_sub) == l_f &&
                        is_valid_code(far_sub, LinearIndexCode(far_pub));
    add(res, prefix + "_published_far", "valid optimal length " + std::to_string(l_f),
        far_ok ? "valid optimal length " + std::to_string(l_f) : "invalid or suboptimal",
        far_ok);

    const IndexCodingProblem reduced = reduce_problem(near_sub, far_pub);
    const int min_near = try_min_code_length(reduced).value_or(-1);
    const bool near_ok = near_pub.rows() == l_n && min_near == l_n &&
                         is_valid_code(reduced, LinearIndexCode(near_pub));
    add(res, prefix + "_published_near", "valid optimal length " + std::to_string(l_n),
        near_ok ? "valid optimal length " + std::to_string(l_n) : "invalid or suboptimal",
        near_ok);
}

struct Instance {
    Scenario scenario;
    IndexCodingProblem problem;
    UserGrouping grouping;
};

Instance load(const char* name) {
    Scenario s = parse_scenario(bundled_scenario(name));
    IndexCodingProblem p = build_problem(s);
    UserGrouping g = scenario_grouping(s);
    return {std::move(s), std::move(p), std::move(g)};
}

void add_scheme_summary(ReproduceResult& res, const IcNomaScheme& s, const std::string& prefix,
                        int l_ic, int l_f, int l_n, const char* case_name) {
    const std::string dot = prefix.empty() ? "" : prefix + "_";
    add_int(res, dot + "l_ic", l_ic, s.conventional_length);
    add_int(res, dot + "l_f", l_f, s.far_length());
    add_int(res, dot + "l_n", l_n, s.near_length());
    add_int(res, dot + "l_icnoma", std::max(l_f, l_n), s.total_length());
    add_str(res, dot + "case", case_name, scheme_case_name(s.kind));
}

std::string scheme_csv(const IcNomaScheme& s) {
    std::string csv = "item,value\n";
    csv += "l_ic," + std::to_string(s.conventional_length) + "\n";
    csv += "l_f," + std::to_string(s.far_length()) + "\n";
    csv += "l_n," + std::to_string(s.near_length()) + "\n";
    csv += "l_icnoma," + std::to_string(s.total_length()) + "\n";
    csv += "case," + scheme_case_name(s.kind) + "\n";
    csv += "far_code," + csv_code(s.far_code.matrix()) + "\n";
    csv += "near_code," + csv_code(s.near_code.matrix()) + "\n";
    return csv;
}

ReproduceResult do_example1() {
    ReproduceResult res;
    res.target = "example1";
    Instance in = load("example1");
    const IcNomaScheme s = design_alg2(in.problem, in.grouping);

    add_scheme_summary(res, s, "", 2, 1, 1, "CaseI");
    add_code(res, "far_code", code_matrix(3, {{3}}), s.far_code,
             group_subproblem(in.problem, in.grouping.far));
    add_code(res, "near_code", code_matrix(3, {{1, 2}}), s.near_code, *s.reduced_near);
    res.csv = scheme_csv(s);
    return res;
}

ReproduceResult do_example2() {
    ReproduceResult res;
    res.target = "example2";
    Instance in = load("example2");
    const IcNomaScheme s = design_alg2(in.problem, in.grouping);

    add_scheme_summary(res, s, "", 4, 3, 1, "CaseII");
    add_code(res, "far_code", code_matrix(7, {{1, 7}, {3, 6}, {4, 7}}), s.far_code,
             group_subproblem(in.problem, in.grouping.far));
    add_code(res, "near_code", code_matrix(7, {{2, 5}}), s.near_code, *s.reduced_near);
    res.csv = scheme_csv(s);
    return res;
}

ReproduceResult do_table5() {
    ReproduceResult res;
    res.target = "table5";
    Instance in = load("example2");
    const IcNomaScheme s = design_alg2(in.problem, in.grouping);

    const std::set<int> expected[] = {{4}, {4}, {1}};   // x5, x5, x2
    res.csv = "user,remaining_wants\n";
    for (int i = 0; i < s.reduced_near->receiver_count(); ++i) {
        const std::set<int>& wants = s.reduced_near->receiver(i).wants();
        const int user = in.grouping.near[static_cast<std::size_t>(i)] + 1;
        add_str(res, "user" + std::to_string(user) + "_remaining_wants",
                i < 3 ? wants_str(expected[i]) : "?", wants_str(wants));
        std::string cell;
        for (int w : wants) cell += (cell.empty() ? "" : "|") + ("x" + std::to_string(w + 1));
        res.csv += std::to_string(user) + "," + cell + "\n";
    }
    add_int(res, "near_users", 3, s.reduced_near->receiver_count());
    return res;
}

ReproduceResult do_table7() {
    ReproduceResult res;
    res.target = "table7";
    Instance in = load("example3");
    const IndexCodingProblem far_sub = group_subproblem(in.problem, in.grouping.far);
    const IndexCodingProblem near_sub = group_subproblem(in.problem, in.grouping.near);

    const int l_f = min_code_length(far_sub);
    add_int(res, "l_f", 3, l_f);

    const std::vector<LinearIndexCode> codes = enumerate_optimal_codes(far_sub, l_f);
    const BitMatrix published[] = {
        code_matrix(7, {{1}, {2, 7}, {3}}),
        code_matrix(7, {{1, 6}, {2, 7}, {3, 6}}),
        code_matrix(7, {{1, 7}, {2, 5}, {3, 6}}),
    };
    const int expected_ln[] = {3, 2, 1};

    res.csv = "row,far_code,l_f,l_n\n";
    for (int i = 0; i < 3; ++i) {
        const std::string row = "row" + std::to_string(i + 1);
        const bool present =
            std::find(codes.begin(), codes.end(), LinearIndexCode(published[i])) != codes.end();
        add(res, row + "_enumerated", "present", present ? "present" : "absent", present);
        const int ln =
            try_min_code_length(reduce_problem(near_sub, published[i])).value_or(-1);
        add_int(res, row + "_l_n", expected_ln[i], ln);
        res.csv += std::to_string(i + 1) + "," + csv_code(published[i]) + "," +
                   std::to_string(l_f) + "," + std::to_string(ln) + "\n";
    }

    const IcNomaScheme s = design_alg2(in.problem, in.grouping);
    add_int(res, "selected_l_n", 1, s.near_length());
    res.csv += "selected," + csv_code(s.far_code.matrix()) + "," +
               std::to_string(s.far_length()) + "," + std::to_string(s.near_length()) + "\n";
    return res;
}

ReproduceResult do_table9() {
    ReproduceResult res;
    res.target = "table9";

    struct Column {
        const char* name;
        const char* scenario;
        const char* case_name;
        int l_f, l_n;
        BitMatrix far_pub, near_pub;
    };
    const Column cols[] = {
        {"a", "table8_case1", "CaseI", 2, 2, code_matrix(7, {{1, 7}, {3, 6}}),
         code_matrix(7, {{2, 4}, {4, 5}})},
        {"b", "table8_case2", "CaseII", 3, 1, code_matrix(7, {{1, 7}, {2, 5}, {3, 6}}),
         code_matrix(7, {{1, 4}})},
        {"c", "table8_case3", "CaseIII", 1, 3, code_matrix(7, {{3, 7}}),
         code_matrix(7, {{1, 4}, {2, 5}, {3, 6}})},
    };

    res.csv = "column,case,l_ic,l_f,l_n,far_code,near_code\n";
    for (const Column& col : cols) {
        Instance in = load(col.scenario);
        const IcNomaScheme s = design_alg2(in.problem, in.grouping);
        const IndexCodingProblem far_sub = group_subproblem(in.problem, in.grouping.far);
        const IndexCodingProblem near_sub = group_subproblem(in.problem, in.grouping.near);

        add_scheme_summary(res, s, col.name, 4, col.l_f, col.l_n, col.case_name);
        add_code(res, std::string(col.name) + "_far_code", col.far_pub, s.far_code, far_sub);
        add_code(res, std::string(col.name) + "_near_code", col.near_pub, s.near_code,
                 *s.reduced_near);
        add_published_pair(res, col.name, far_sub, near_sub, col.far_pub, col.near_pub, col.l_f,
                           col.l_n);

        res.csv += std::string(col.name) + "," + scheme_case_name(s.kind) + "," +
                   std::to_string(s.conventional_length) + "," +
                   std::to_string(s.far_length()) + "," + std::to_string(s.near_length()) + "," +
                   csv_code(s.far_code.matrix()) + "," + csv_code(s.near_code.matrix()) + "\n";
    }
    return res;
}

struct LengthProfile {
    SchemeCase kind;
    int l_f, l_n;
};

constexpr LengthProfile kProfiles[] = {
    {SchemeCase::case1, 2, 2},
    {SchemeCase::case2, 3, 1},
    {SchemeCase::case3, 1, 3},
};
constexpr int kFigLic = 4;
constexpr double kFigGainFar = 0.2;
constexpr double kFigGainNear = 1.0;
constexpr double kFigAlpha = 0.25;
constexpr double kFigPowers[] = {1, 2, 5, 10, 15, 20, 25, 30};

ReproduceResult do_fig3() {
    ReproduceResult res;
    res.target = "fig3";
    res.csv = "power,rate_ic,avg_rate_case1,avg_rate_case2,avg_rate_case3\n";
    for (double p : kFigPowers) {
        const double ric = rate_ic(p, kFigGainFar);
        double r[3];
        for (int i = 0; i < 3; ++i)
            r[i] = avg_rate(kProfiles[i].kind, kProfiles[i].l_f, kProfiles[i].l_n, p, kFigAlpha,
                            kFigGainFar, kFigGainNear);
        res.csv += fmt(p) + "," + fmt(ric) + "," + fmt(r[0]) + "," + fmt(r[1]) + "," +
                   fmt(r[2]) + "\n";
        const bool ordered = r[2] > r[0] && r[0] > r[1] && r[1] > ric;
        add(res, "P=" + fmt(p) + "_ordering", "case3 > case1 > case2 > ic",
            fmt(r[2]) + " / " + fmt(r[0]) + " / " + fmt(r[1]) + " / " + fmt(ric), ordered,
            ordered ? "exact" : "MISMATCH");
    }
    return res;
}

ReproduceResult do_fig4() {
    ReproduceResult res;
    res.target = "fig4";
    res.csv = "power,p_ic,avg_power_case1,avg_power_case2,avg_power_case3\n";
    for (double p : kFigPowers) {
        double a[3];
        for (int i = 0; i < 3; ++i)
            a[i] = avg_power(kProfiles[i].kind, kProfiles[i].l_f, kProfiles[i].l_n, p, kFigAlpha,
                             kFigGainFar, kFigGainNear);
        res.csv += fmt(p) + "," + fmt(p) + "," + fmt(a[0]) + "," + fmt(a[1]) + "," + fmt(a[2]) +
                   "\n";
        const bool below = a[0] < p && a[1] < p && a[2] < p;
        add(res, "P=" + fmt(p) + "_below_ic", "all cases < p_ic",
            fmt(a[0]) + " / " + fmt(a[1]) + " / " + fmt(a[2]) + " vs " + fmt(p), below,
            below ? "exact" : "MISMATCH");
    }
    return res;
}

ReproduceResult do_fig5() {
    ReproduceResult res;
    res.target = "fig5";
    const double rate = 1.0;
    const double alphas[] = {0.2, 0.25, 0.3};
    res.csv = "alpha,total_ic,total_case1,total_case2,total_case3\n";
    for (double a : alphas) {
        const QosPowers qp = qos_powers(rate, a, kFigGainFar, kFigGainNear);
        double totals[3];
        double total_ic = 0.0;
        for (int i = 0; i < 3; ++i) {
            const QosTotals t =
                qos_totals(kProfiles[i].kind, kProfiles[i].l_f, kProfiles[i].l_n, kFigLic, qp);
            totals[i] = t.total_icnoma;
            total_ic = t.total_ic;
        }
        res.csv += fmt(a) + "," + fmt(total_ic) + "," + fmt(totals[0]) + "," + fmt(totals[1]) +
                   "," + fmt(totals[2]) + "\n";
        const bool below = totals[2] < total_ic;
        add(res, "alpha=" + fmt(a) + "_case3_below_ic", "total_case3 < total_ic",
            fmt(totals[2]) + " vs " + fmt(total_ic), below, below ? "exact" : "MISMATCH");
    }
    return res;
}

}   // namespace

bool ReproduceResult::ok() const {
    return std::all_of(checks.begin(), checks.end(),
                       [](const ReproduceCheck& c) { return c.ok; });
}

std::vector<std::string> ReproduceResult::diff_lines() const {
    std::vector<std::string> lines;
    for (const ReproduceCheck& c : checks)
        if (!c.ok)
            lines.push_back(c.item + ": expected " + c.expected + ", got " + c.actual);
    return lines;
}

std::vector<std::string> reproduce_targets() {
    return {"example1", "example2", "table5", "table7", "table9", "fig3", "fig4", "fig5"};
}

ReproduceResult reproduce(const std::string& target) {
    if (target == "example1") return do_example1();
    if (target == "example2") return do_example2();
    if (target == "table5") return do_table5();
    if (target == "table7") return do_table7();
    if (target == "table9") return do_table9();
    if (target == "fig3") return do_fig3();
    if (target == "fig4") return do_fig4();
    if (target == "fig5") return do_fig5();
    throw std::invalid_argument(
        "unknown reproduce target: " + target +
        " (expected example1|example2|table5|table7|table9|fig3|fig4|fig5)");
}

}   // namespace icnoma
