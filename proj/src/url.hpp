// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

namespace pathfuse {

struct Url {
    std::string scheme;  // "http" or "https"
    std::string host;
    int port = 0;
    std::string path;  // includes any query string

    std::string scheme_host_port() const {
        return scheme + "://" + host + ":" + std::to_string(port);
    }
};

/// Splits an absolute http(s) URL. Throws ConfigError on anything else.
Url parse_url(std::string_view url);

}  // namespace pathfuse
