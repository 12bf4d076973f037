#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qrtw/registry.hpp"

namespace qrtw {

struct CheckEntry {
    std::string check_id;
    std::string target;
    std::string mode; // "exact" or "randomized"
    bool outcome = false;
    std::string detail;
    int trials = 0;
    double sz_bound = 0.0; // per-trial Schwartz-Zippel bound (randomized mode)
    std::optional<std::string> witness; // failing point and both sides
    double wall_time = 0.0;
};

struct SuiteOptions {
    std::optional<Mode> mode_override; // default: exact in 4d, randomized in 6d
    int trials = 200;
    uint64_t seed = 0;
    // off by default so identical invocations give byte-identical reports
    bool record_wall_time = false;
};

struct CheckReport {
    std::string example;
    std::vector<CheckEntry> checks;
    bool overall = true;

    std::string to_json() const; // stable keys, version "1"
    std::string to_text() const;
};

CheckReport run_suite(const ExampleBundle& B, const SuiteOptions& opt = {});

// instantiates the example first; a load failure (e.g. a violated gamma
// constraint) becomes a failed "load" check rather than an exception
CheckReport run_suite(const std::string& name,
                      const ParameterAssignment& params = {},
                      const SuiteOptions& opt = {},
                      const std::string& mutate = {});

} // namespace qrtw
