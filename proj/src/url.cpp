// SPDX-License-Identifier: Apache-2.0

#include "url.hpp"

#include <charconv>

#include "pathfuse/errors.hpp"

namespace pathfuse {

Url parse_url(std::string_view url) {
    Url out;
    const auto sep = url.find("://");
    if (sep == std::string_view::npos) throw ConfigError("URL lacks a scheme: '" + std::string(url) + "'");
    out.scheme = std::string(url.substr(0, sep));
    if (out.scheme != "http" && out.scheme != "https") {
        throw ConfigError("unsupported URL scheme '" + out.scheme + "'");
    }
    auto rest = url.substr(sep + 3);
    const auto slash = rest.find('/');
    auto authority = rest.substr(0, slash);
    out.path = slash == std::string_view::npos ? "/" : std::string(rest.substr(slash));
    out.port = out.scheme == "https" ? 443 : 80;
    if (const auto colon = authority.rfind(':'); colon != std::string_view::npos &&
                                                 authority.find(']') == std::string_view::npos) {
        auto digits = authority.substr(colon + 1);
        int port = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), port);
        if (ec != std::errc{} || ptr != digits.data() + digits.size() || port <= 0 || port > 65535) {
            throw ConfigError("bad port in URL '" + std::string(url) + "'");
        }
        out.port = port;
        authority = authority.substr(0, colon);
    }
    if (authority.empty()) throw ConfigError("URL lacks a host: '" + std::string(url) + "'");
    out.host = std::string(authority);
    return out;
}

}  // namespace pathfuse
