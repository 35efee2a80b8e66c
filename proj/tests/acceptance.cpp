// One line per acceptance criterion; exit status 1 if any fails.
#include <cstdio>
#include <cstdlib>

#include "plexforge/suite.hpp"

int main(int argc, char** argv)
{
    using namespace plexforge;
    int failed = 0;
    auto report = [&](const CriterionResult& r) {
        std::printf("%s\n", format_result(r).c_str());
        std::fflush(stdout);
        failed += !r.passed;
    };
    if (argc > 1) {
        for (int i = 1; i < argc; ++i)
            report(run_criterion(std::atoi(argv[i])));
    } else {
        run_acceptance_suite(report);
    }
    return failed ? 1 : 0;
}
