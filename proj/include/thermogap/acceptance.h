#ifndef THERMOGAP_ACCEPTANCE_H
#define THERMOGAP_ACCEPTANCE_H

#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace thermogap {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0;
};

struct AcceptanceOptions {
    /// Empty selects every criterion.
    std::set<int> criteria;
    /// Sets the closed-form tolerance of criterion 2 to zero so that it must fail.
    bool force_failure = false;
};

/// Criterion ids for a selector: "all", "cone", "bath", "gap", or a comma list of ids.
/// Throws std::invalid_argument for anything else.
std::set<int> parse_criteria_selector(const std::string &selector);

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions &options, std::ostream *progress = nullptr);

/// One line per criterion plus a summary line.
void print_acceptance_table(const std::vector<CriterionResult> &results, std::ostream &out);

bool all_passed(const std::vector<CriterionResult> &results);

}  // namespace thermogap

#endif
