#include "icnoma/scenario.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace icnoma {

namespace {

using nlohmann::json;

std::string field_path(const std::string& ctx, const char* key) {
    return ctx.empty() ? std::string(key) : ctx + "." + key;
}

std::string element_path(const std::string& field, std::size_t i) {
    return field + "[" + std::to_string(i) + "]";
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw ScenarioError(field + ": " + what);
}

const json& require(const json& obj, const std::string& ctx, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(field_path(ctx, key), "missing field");
    return *it;
}

long long get_integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) fail(field, "must be an integer");
    return v.get<long long>();
}

double get_real(const json& v, const std::string& field) {
    if (!v.is_number()) fail(field, "must be a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) fail(field, "must be finite");
    return x;
}

int get_message_index(const json& v, const std::string& field, int n) {
    const long long i = get_integer(v, field);
    if (i < 1 || i > n)
        fail(field, "message index " + std::to_string(i) + " out of range [1, " +
                        std::to_string(n) + "]");
    return static_cast<int>(i - 1);
}

BitVector parse_known_row(const json& v, const std::string& field, int n) {
    BitVector row(n);
    if (v.is_number_integer()) {
        row.set(get_message_index(v, field, n), true);
        return row;
    }
    if (!v.is_array()) fail(field, "must be a message index or an array of indices");
    if (v.empty()) fail(field, "empty index combination");
    for (std::size_t i = 0; i < v.size(); ++i) {
        const int m = get_message_index(v[i], element_path(field, i), n);
        if (row.get(m)) fail(field, "duplicate message index " + std::to_string(m + 1));
        row.set(m, true);
    }
    return row;
}

SimConfig parse_sim(const json& v, const std::string& ctx, int users) {
    if (!v.is_object()) fail(ctx, "must be an object");
    SimConfig cfg;
    if (auto it = v.find("packet_bits"); it != v.end()) {
        const long long b = get_integer(*it, field_path(ctx, "packet_bits"));
        if (b < 1 || b > 1 << 20) fail(field_path(ctx, "packet_bits"), "must be in [1, 1048576]");
        cfg.packet_bits = static_cast<int>(b);
    }
    if (auto it = v.find("trials"); it != v.end()) {
        const long long t = get_integer(*it, field_path(ctx, "trials"));
        if (t < 1 || t > 100000000) fail(field_path(ctx, "trials"), "must be in [1, 1e8]");
        cfg.trials = static_cast<int>(t);
    }
    if (auto it = v.find("seed"); it != v.end()) {
        const std::string field = field_path(ctx, "seed");
        if (!it->is_number_integer()) fail(field, "must be an integer");
        if (it->is_number_unsigned()) {
            cfg.seed = it->get<std::uint64_t>();
        } else {
            const long long s = it->get<long long>();
            if (s < 0) fail(field, "must be nonnegative");
            cfg.seed = static_cast<std::uint64_t>(s);
        }
    }
    if (auto it = v.find("noise_variance"); it != v.end()) {
        const std::string field = field_path(ctx, "noise_variance");
        cfg.noise_variance.clear();
        if (it->is_array()) {
            if (it->size() != 1 && it->size() != static_cast<std::size_t>(users))
                fail(field, "must hold one value or one per user");
            for (std::size_t i = 0; i < it->size(); ++i)
                cfg.noise_variance.push_back(get_real((*it)[i], element_path(field, i)));
        } else {
            cfg.noise_variance.push_back(get_real(*it, field));
        }
        for (double s2 : cfg.noise_variance)
            if (s2 < 0.0) fail(field, "must be nonnegative");
    }
    return cfg;
}

}   // namespace

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ScenarioError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail("scenario", "top level must be an object");

    const long long version = get_integer(require(doc, "", "version"), "version");
    if (version != 1) fail("version", "unsupported schema version " + std::to_string(version));

    Scenario s;
    const long long n = get_integer(require(doc, "", "messages"), "messages");
    if (n < 1 || n > 64) fail("messages", "must be in [1, 64]");
    s.messages = static_cast<int>(n);

    s.power = get_real(require(doc, "", "power"), "power");
    if (s.power <= 0.0) fail("power", "must be positive");
    s.alpha = get_real(require(doc, "", "alpha"), "alpha");
    if (s.alpha <= 0.0 || s.alpha >= 0.5) fail("alpha", "must lie in (0, 0.5)");

    const json& users = require(doc, "", "users");
    if (!users.is_array() || users.empty()) fail("users", "must be a non-empty array");

    for (std::size_t u = 0; u < users.size(); ++u) {
        const std::string ctx = element_path("users", u);
        const json& user = users[u];
        if (!user.is_object()) fail(ctx, "must be an object");

        const double gain = get_real(require(user, ctx, "gain"), field_path(ctx, "gain"));
        if (gain <= 0.0) fail(field_path(ctx, "gain"), "must be positive");
        s.gains.push_back(gain);

        const json& known = require(user, ctx, "known");
        if (!known.is_array()) fail(field_path(ctx, "known"), "must be an array");
        BitMatrix side(s.messages);
        for (std::size_t i = 0; i < known.size(); ++i)
            side.append_row(
                parse_known_row(known[i], element_path(field_path(ctx, "known"), i), s.messages));
        s.known.push_back(std::move(side));

        const json& wants = require(user, ctx, "wants");
        if (!wants.is_array()) fail(field_path(ctx, "wants"), "must be an array");
        std::set<int> w;
        for (std::size_t i = 0; i < wants.size(); ++i) {
            const std::string field = element_path(field_path(ctx, "wants"), i);
            const int m = get_message_index(wants[i], field, s.messages);
            if (!w.insert(m).second)
                fail(field, "duplicate message index " + std::to_string(m + 1));
        }
        s.wants.push_back(std::move(w));
    }

    if (auto it = doc.find("sim"); it != doc.end())
        s.sim = parse_sim(*it, "sim", static_cast<int>(users.size()));
    return s;
}

Scenario parse_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(path + ": " + e.what());
    }
}

std::string serialize_scenario(const Scenario& s) {
    nlohmann::ordered_json doc;
    doc["version"] = 1;
    doc["messages"] = s.messages;
    doc["power"] = s.power;
    doc["alpha"] = s.alpha;
    doc["users"] = nlohmann::ordered_json::array();
    for (std::size_t u = 0; u < s.gains.size(); ++u) {
        nlohmann::ordered_json user;
        user["gain"] = s.gains[u];
        auto known = nlohmann::ordered_json::array();
        for (int r = 0; r < s.known[u].rows(); ++r) {
            const BitVector row = s.known[u].row(r);
            std::vector<int> indices;
            for (int b = 0; b < row.length(); ++b)
                if (row.get(b)) indices.push_back(b + 1);
            if (indices.size() == 1)
                known.push_back(indices[0]);
            else
                known.push_back(indices);
        }
        user["known"] = std::move(known);
        auto wants = nlohmann::ordered_json::array();
        for (int w : s.wants[u]) wants.push_back(w + 1);
        user["wants"] = std::move(wants);
        doc["users"].push_back(std::move(user));
    }
    if (s.sim) {
        nlohmann::ordered_json sim;
        sim["packet_bits"] = s.sim->packet_bits;
        if (s.sim->noise_variance.size() == 1)
            sim["noise_variance"] = s.sim->noise_variance[0];
        else
            sim["noise_variance"] = s.sim->noise_variance;
        sim["trials"] = s.sim->trials;
        sim["seed"] = s.sim->seed;
        doc["sim"] = std::move(sim);
    }
    return doc.dump(2) + "\n";
}

IndexCodingProblem build_problem(const Scenario& s) {
    std::vector<Receiver> receivers;
    receivers.reserve(s.gains.size());
    for (std::size_t u = 0; u < s.gains.size(); ++u)
        receivers.emplace_back(s.known[u], s.wants[u]);
    return IndexCodingProblem(s.messages, std::move(receivers));
}

UserGrouping scenario_grouping(const Scenario& s) { return group_users(s.gains); }

ChannelProfile scenario_channel(const Scenario& s) {
    return make_channel_profile(s.gains, scenario_grouping(s), s.power, s.alpha);
}

}   // namespace icnoma
