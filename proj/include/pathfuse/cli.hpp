// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pathfuse {

/// Process exit codes of the command-line tool.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitNoTopicEntities = 2,
    kExitBackendUnavailable = 3,
    kExitUnreadableDataset = 4,
    kExitFailure = 5,
};

/// Entry point of the `pathfuse` tool; args[0] is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pathfuse
