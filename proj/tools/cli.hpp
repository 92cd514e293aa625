#pragma once

#include <string>
#include <vector>

namespace l0dag::cli {

enum ExitCode : int {
    ok = 0,
    input_error = 2,
    not_converged = 3,
};

inline constexpr int kReportSchemaVersion = 1;

/// Entry point shared by the executable and the tests. args excludes argv[0].
int run(const std::vector<std::string> &args);

} // namespace l0dag::cli
