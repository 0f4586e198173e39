// Acceptance suite: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <iostream>
#include <string>

#include "thermogap/acceptance.h"

int main(int argc, char **argv) {
    thermogap::AcceptanceOptions opts;
    for (int i = 1; i < argc; i++) {
        std::string arg = argv[i];
        if (arg == "--force-fail") {
            opts.force_failure = true;
        } else {
            opts.criteria = thermogap::parse_criteria_selector(arg);
        }
    }
    auto results = thermogap::run_acceptance(opts, &std::cerr);
    thermogap::print_acceptance_table(results, std::cout);
    return thermogap::all_passed(results) ? 0 : 1;
}
