// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace pathfuse {

/// Base of every error raised by the engine.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PATHFUSE_DEFINE_ERROR(Name)                     \
    class Name : public Error {                         \
    public:                                             \
        explicit Name(const std::string& what)          \
            : Error(std::string(#Name ": ") + what) {}  \
    }

PATHFUSE_DEFINE_ERROR(MalformedPath);
PATHFUSE_DEFINE_ERROR(BackendUnavailable);
PATHFUSE_DEFINE_ERROR(QueryRejected);
PATHFUSE_DEFINE_ERROR(BadBinding);
PATHFUSE_DEFINE_ERROR(MissingBinding);
PATHFUSE_DEFINE_ERROR(MalformedSelection);
PATHFUSE_DEFINE_ERROR(NoTopicEntities);
PATHFUSE_DEFINE_ERROR(EmptyAggregate);
PATHFUSE_DEFINE_ERROR(UnreadableDataset);
PATHFUSE_DEFINE_ERROR(AgentUnavailable);
PATHFUSE_DEFINE_ERROR(ScriptMismatch);
PATHFUSE_DEFINE_ERROR(ConfigError);

#undef PATHFUSE_DEFINE_ERROR

}  // namespace pathfuse
