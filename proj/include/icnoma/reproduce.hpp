#ifndef ICNOMA_REPRODUCE_HPP
#define ICNOMA_REPRODUCE_HPP

#include <string>
#include <vector>

namespace icnoma {

// One compared quantity of a reproduction target. Code comparisons carry the
// ladder level reached: "exact" (identical row space), "equivalent" (a valid
// optimal code of the listed length, different row space) or "MISMATCH".
struct ReproduceCheck {
    std::string item;
    std::string expected;
    std::string actual;
    std::string level;
    bool ok = false;
};

struct ReproduceResult {
    std::string target;
    std::string csv;   // contents of <target>.csv
    std::vector<ReproduceCheck> checks;

    bool ok() const;
    // One line per failed check; empty when everything matched.
    std::vector<std::string> diff_lines() const;
};

std::vector<std::string> reproduce_targets();

// Recomputes the named reference table or figure data series and compares it
// against the expectations bundled from the published values. Throws
// std::invalid_argument for unknown targets.
ReproduceResult reproduce(const std::string& target);

}   // namespace icnoma

#endif
