#ifndef ICNOMA_SCENARIO_HPP
#define ICNOMA_SCENARIO_HPP

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "icnoma/linksim.hpp"

namespace icnoma {

// Raised on malformed scenario text; the message names the offending field,
// e.g. "users[2].wants[1]: message index 9 out of range [1, 7]".
class ScenarioError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A broadcast instance as stored on disk. Message indices are 1-based in the
// JSON text and 0-based here; each known entry is one side-information row
// (a bare index or an XOR combination of indices).
struct Scenario {
    int messages = 0;
    double power = 0.0;
    double alpha = 0.0;
    std::vector<double> gains;           // one per user
    std::vector<BitMatrix> known;        // one side-information matrix per user
    std::vector<std::set<int>> wants;    // wanted message indices per user
    std::optional<SimConfig> sim;
    bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(const std::string& text);
Scenario parse_scenario_file(const std::string& path);
std::string serialize_scenario(const Scenario& s);

IndexCodingProblem build_problem(const Scenario& s);
UserGrouping scenario_grouping(const Scenario& s);
ChannelProfile scenario_channel(const Scenario& s);

// Scenarios compiled into the library, addressable by name from the CLI.
std::vector<std::string> bundled_scenario_names();
std::string bundled_scenario(const std::string& name);

}   // namespace icnoma

#endif
