#pragma once

#include <string>
#include <vector>

/// The numbered acceptance criteria, shared by `fa verify` and the
/// acceptance test binary.
namespace fa::acceptance {

struct Options {
    /// Empty runs everything; otherwise a criterion number or a substring of
    /// its name or tags ("euler", "midpoint", "deep", ...).
    std::string filter;
    /// Negative control: checks the continuous rate against a wrong constant.
    bool inject_fault = false;
    bool parallel = true;
};

struct Line {
    int id = 0;  // 0 for informational lines
    std::string name;
    bool pass = false;
    bool informational = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the selected criteria in order and returns one line per criterion,
/// interleaved with informational lines.
std::vector<Line> run(const Options& options);

/// "[PASS] 04 euler-region  ..." style rendering.
std::string format(const Line& line);

/// True when every non-informational line passed.
bool all_passed(const std::vector<Line>& lines);

/// Names of all criteria in order, for listings.
std::vector<std::string> criterion_names();

}  // namespace fa::acceptance
