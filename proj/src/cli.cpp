#include "icnoma/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <CLI11.hpp>

#include "icnoma/analysis.hpp"
#include "icnoma/linksim.hpp"
#include "icnoma/reproduce.hpp"
#include "icnoma/scenario.hpp"

namespace icnoma {

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string csv_code(const BitMatrix& m) {
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        if (i) out += '|';
        out += to_string(m.row(i));
    }
    return out;
}

std::string user_list(const std::vector<int>& ids) {
    std::string out = "{";
    for (std::size_t i = 0; i < ids.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(ids[i] + 1);
    }
    return out + "}";
}

// A scenario argument names a file when one exists at that path, otherwise a
// bundled scenario.
Scenario load_scenario_arg(const std::string& arg) {
    std::error_code ec;
    if (std::filesystem::exists(arg, ec)) return parse_scenario_file(arg);
    try {
        return parse_scenario(bundled_scenario(arg));
    } catch (const std::invalid_argument&) {
        std::string names;
        for (const std::string& n : bundled_scenario_names()) {
            if (!names.empty()) names += ", ";
            names += n;
        }
        throw ScenarioError("no scenario file or bundled scenario named '" + arg +
                            "' (bundled: " + names + ")");
    }
}

struct DesignOpts {
    std::string scenario;
    int algorithm = 2;
    std::string format = "text";
};

int cmd_design(const DesignOpts& o, std::ostream& out) {
    const Scenario sc = load_scenario_arg(o.scenario);
    const IndexCodingProblem p = build_problem(sc);
    const UserGrouping g = scenario_grouping(sc);
    const IcNomaScheme s = o.algorithm == 1 ? design_alg1(p, g) : design_alg2(p, g);

    if (o.format == "csv") {
        out << "algorithm,case,l_ic,l_f,l_n,l_noma,l_icnoma,far_code,near_code\n"
            << o.algorithm << ',' << scheme_case_name(s.kind) << ',' << s.conventional_length
            << ',' << s.far_length() << ',' << s.near_length() << ',' << s.noma_length() << ','
            << s.total_length() << ',' << csv_code(s.far_code.matrix()) << ','
            << csv_code(s.near_code.matrix()) << '\n';
        return 0;
    }
    out << "grouping: near = " << user_list(g.near) << ", far = " << user_list(g.far) << '\n'
        << "case: " << scheme_case_name(s.kind) << '\n'
        << "l_ic: " << s.conventional_length << '\n'
        << "l_f: " << s.far_length() << '\n'
        << "l_n: " << s.near_length() << '\n'
        << "l_noma: " << s.noma_length() << '\n'
        << "l_icnoma: " << s.total_length() << '\n'
        << "far_code: " << to_string(s.far_code.matrix()) << '\n'
        << "near_code: " << to_string(s.near_code.matrix()) << '\n';
    return 0;
}

struct AnalyzeOpts {
    std::string scenario;
    double qos_rate = 1.0;
    std::vector<double> alphas;
};

int cmd_analyze(const AnalyzeOpts& o, std::ostream& out) {
    if (!std::isfinite(o.qos_rate) || o.qos_rate <= 0.0)
        throw std::invalid_argument("analyze: --qos-rate must be positive");
    const Scenario sc = load_scenario_arg(o.scenario);
    std::vector<double> alphas = o.alphas.empty() ? std::vector<double>{sc.alpha} : o.alphas;
    for (double a : alphas)
        if (!std::isfinite(a) || a <= 0.0 || a >= 0.5)
            throw std::invalid_argument("analyze: alpha " + fmt(a) +
                                        " outside the open interval (0, 0.5)");

    const IndexCodingProblem p = build_problem(sc);
    const UserGrouping g = scenario_grouping(sc);
    const IcNomaScheme s = design_alg2(p, g);

    out << "alpha,r_avg,p_avg,p_saving,total_ic,total_icnoma,qos_feasible\n";
    for (double a : alphas) {
        const ChannelProfile ch = make_channel_profile(sc.gains, g, sc.power, a);
        const RateReport rate = make_rate_report(s, ch);
        const PowerReport power = make_power_report(s, ch);
        std::string total_ic, total_icnoma, feasible;
        try {
            const QosPowers qp = qos_powers(o.qos_rate, a, ch.g_far, ch.g_near);
            const QosTotals t =
                qos_totals(s.kind, s.far_length(), s.near_length(), s.conventional_length, qp);
            total_ic = fmt(t.total_ic);
            total_icnoma = fmt(t.total_icnoma);
            feasible = "yes";
        } catch (const QosInfeasibleError&) {
            total_ic = fmt((std::exp2(o.qos_rate) - 1.0) / ch.g_far * s.conventional_length);
            total_icnoma = "";
            feasible = "no";
        }
        out << fmt(a) << ',' << fmt(rate.r_avg) << ',' << fmt(power.p_avg) << ','
            << fmt(power.saving) << ',' << total_ic << ',' << total_icnoma << ',' << feasible
            << '\n';
    }
    return 0;
}

struct SimulateOpts {
    std::string scenario;
    std::vector<double> snr_sweep;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int cmd_simulate(const SimulateOpts& o, std::ostream& out) {
    const Scenario sc = load_scenario_arg(o.scenario);
    if (!sc.sim)
        throw std::invalid_argument("simulate: scenario has no sim block");
    for (double s2 : o.snr_sweep)
        if (!std::isfinite(s2) || s2 < 0.0)
            throw std::invalid_argument("simulate: noise variance must be nonnegative");

    const IndexCodingProblem p = build_problem(sc);
    const UserGrouping g = scenario_grouping(sc);
    const ChannelProfile ch = scenario_channel(sc);
    const TransmissionSchedule sched = build_schedule(design_alg2(p, g));

    SimConfig base = *sc.sim;
    if (o.seed_set) base.seed = o.seed;
    std::vector<SimConfig> runs;
    if (o.snr_sweep.empty()) {
        runs.push_back(base);
    } else {
        for (double s2 : o.snr_sweep) {
            SimConfig cfg = base;
            cfg.noise_variance = {s2};
            runs.push_back(cfg);
        }
    }

    out << "sigma2,user,success_rate,ber\n";
    for (const SimConfig& cfg : runs) {
        const SimResult r = run_end_to_end(p, sched, ch, cfg);
        for (int u = 0; u < p.receiver_count(); ++u) {
            const double s2 = cfg.noise_variance.size() == 1
                                  ? cfg.noise_variance[0]
                                  : cfg.noise_variance[static_cast<std::size_t>(u)];
            out << fmt(s2) << ',' << u + 1 << ','
                << fmt(r.success_rate[static_cast<std::size_t>(u)]) << ','
                << fmt(r.bit_error_rate[static_cast<std::size_t>(u)]) << '\n';
        }
    }
    return 0;
}

struct ReproduceOpts {
    std::string target;
    std::string out_dir = ".";
};

int cmd_reproduce(const ReproduceOpts& o, std::ostream& out, std::ostream& err) {
    const ReproduceResult res = reproduce(o.target);

    const std::filesystem::path path = std::filesystem::path(o.out_dir) / (res.target + ".csv");
    std::ofstream file(path);
    if (!file) {
        err << "error: cannot write " << path.string() << '\n';
        return 1;
    }
    file << res.csv;
    file.close();

    int passed = 0;
    for (const ReproduceCheck& c : res.checks) passed += c.ok;
    out << "target " << res.target << ": " << passed << "/" << res.checks.size()
        << " checks passed, wrote " << path.string() << '\n';
    for (const ReproduceCheck& c : res.checks)
        out << "  [" << (c.ok ? "ok" : "FAIL") << "] " << c.item << ": " << c.level
            << " (expected " << c.expected << ", got " << c.actual << ")\n";
    if (!res.ok()) {
        err << "mismatch against bundled expectations:\n";
        for (const std::string& line : res.diff_lines()) err << "  " << line << '\n';
        return 3;
    }
    return 0;
}

}   // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Designs, analyzes and simulates index-coded NOMA broadcast schemes"};
    app.require_subcommand(1);

    DesignOpts design;
    CLI::App* design_cmd = app.add_subcommand("design", "Design a transmission scheme");
    design_cmd->add_option("scenario", design.scenario, "Scenario file or bundled name")
        ->required();
    design_cmd->add_option("--algorithm", design.algorithm, "Design algorithm (1 or 2)")
        ->check(CLI::Range(1, 2))
        ->capture_default_str();
    design_cmd->add_option("--format", design.format, "Output format")
        ->check(CLI::IsMember({"text", "csv"}))
        ->capture_default_str();

    AnalyzeOpts analyze;
    CLI::App* analyze_cmd =
        app.add_subcommand("analyze", "Evaluate rate, power and QoS formulas");
    analyze_cmd->add_option("scenario", analyze.scenario, "Scenario file or bundled name")
        ->required();
    analyze_cmd->add_option("--qos-rate", analyze.qos_rate, "Target rate for QoS power totals")
        ->capture_default_str();
    analyze_cmd
        ->add_option("--alphas", analyze.alphas,
                     "Comma-separated power-split values (default: scenario alpha)")
        ->delimiter(',');

    SimulateOpts simulate;
    CLI::App* simulate_cmd = app.add_subcommand("simulate", "Monte-Carlo link simulation");
    simulate_cmd->add_option("scenario", simulate.scenario, "Scenario file or bundled name")
        ->required();
    simulate_cmd
        ->add_option("--snr-sweep", simulate.snr_sweep,
                     "Comma-separated noise variances (default: scenario sim settings)")
        ->delimiter(',');
    CLI::Option* seed_opt =
        simulate_cmd->add_option("--seed", simulate.seed, "Override the scenario seed");

    ReproduceOpts repro;
    CLI::App* repro_cmd =
        app.add_subcommand("reproduce", "Recompute a bundled reference table or figure");
    std::vector<std::string> targets = reproduce_targets();
    repro_cmd->add_option("target", repro.target, "Reference target")
        ->required()
        ->check(CLI::IsMember(targets));
    repro_cmd->add_option("--out-dir", repro.out_dir, "Directory for the CSV output")
        ->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp&) {
        std::vector<CLI::App*> subs = app.get_subcommands();
        out << (subs.empty() ? app.help() : subs.front()->help());
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    simulate.seed_set = seed_opt->count() > 0;

    try {
        if (design_cmd->parsed()) return cmd_design(design, out);
        if (analyze_cmd->parsed()) return cmd_analyze(analyze, out);
        if (simulate_cmd->parsed()) return cmd_simulate(simulate, out);
        return cmd_reproduce(repro, out, err);
    } catch (const SearchLimitError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}   // namespace icnoma
