// One line per acceptance criterion; nonzero exit when any criterion fails.
#include <iostream>
#include <string>

#include "fa/acceptance.hpp"

int main(int argc, char** argv) {
    fa::acceptance::Options opt;
    if (argc > 1) opt.filter = argv[1];
    const auto lines = fa::acceptance::run(opt);
    int failed = 0;
    for (const auto& l : lines) {
        std::cout << fa::acceptance::format(l) << "\n";
        if (!l.informational && !l.pass) ++failed;
    }
    std::cout << (failed ? std::to_string(failed) + " of 15 criteria failed" : "all criteria passed") << "\n";
    return failed ? 1 : 0;
}
