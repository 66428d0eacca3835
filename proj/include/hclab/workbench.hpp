#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace hclab::workbench {

inline constexpr const char* kArtifactVersion = "hclab-1.0";

// A fully parameterized computation; everything that can affect the payload
// bytes is part of the canonical string (the worker count is excluded).
struct Request {
    std::string command;                        // e.g. "hecke.verify"
    std::map<std::string, std::string> params;  // canonicalized key -> value
    std::string format = "json";                // json | csv
    std::string cache_policy = "use";           // use | refresh | off
    std::string cache_dir;                      // empty: no cache files
    unsigned jobs = 1;
};

struct Report {
    std::string payload; // exact output bytes
    int exit_code = 0;   // 0 verified, 1 verification failure
    bool cache_hit = false;
    std::string warning; // e.g. evicted corrupt cache entry
};

std::string canonical_request_string(const Request& r);
std::string request_digest(const Request& r);

// Dispatch to the owning module; identical requests yield byte-identical
// payloads. Guard violations surface as chevalley::GuardError.
Report run(const Request& r);

} // namespace hclab::workbench
