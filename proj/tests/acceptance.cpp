#include "qfs/battery.hpp"

#include <cstdio>

int main() {
    int failed = 0;
    for (const auto& r : qfs::run_battery()) {
        std::printf("criterion %d %s: %s (%s; %.2f s)\n", r.id, r.name.c_str(), r.passed ? "PASS" : "FAIL", r.detail.c_str(),
                    r.seconds);
        std::fflush(stdout);
        if (!r.passed) ++failed;
    }
    return failed == 0 ? 0 : 1;
}
