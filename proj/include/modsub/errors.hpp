#ifndef MODSUB_ERRORS_HPP
#define MODSUB_ERRORS_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace modsub {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed or invalid input data (bad JSON, self-loops, range errors, ...).
struct ParseError : Error {
    using Error::Error;
};

// An exponential-time routine was asked to exceed its configured size cap.
struct CapExceeded : Error {
    using Error::Error;
};

// Two routes that must agree disagreed, or a construction-time self-check
// failed. Always indicates a bug, never bad input.
struct InternalCheckFailure : Error {
    using Error::Error;
};

// Size caps for the brute-force reference counters. Exceeding a cap throws
// CapExceeded instead of silently running for hours.
struct Limits {
    int max_pattern_vertices = 9;
    int max_host_vertices = 14;
    int max_path_length = 20;
    int max_hafnian_dim = 16;

    static Limits unbounded() {
        Limits l;
        l.max_pattern_vertices = l.max_host_vertices = 1 << 28;
        l.max_path_length = l.max_hafnian_dim = 1 << 28;
        return l;
    }

    // Environment overrides: MODSUB_MAX_PATTERN, MODSUB_MAX_HOST,
    // MODSUB_MAX_PATH_LEN, MODSUB_MAX_HAFNIAN_DIM.
    static Limits from_env() {
        Limits l;
        auto read = [](const char* name, int& slot) {
            if (const char* v = std::getenv(name)) {
                int parsed = std::atoi(v);
                if (parsed > 0) slot = parsed;
            }
        };
        read("MODSUB_MAX_PATTERN", l.max_pattern_vertices);
        read("MODSUB_MAX_HOST", l.max_host_vertices);
        read("MODSUB_MAX_PATH_LEN", l.max_path_length);
        read("MODSUB_MAX_HAFNIAN_DIM", l.max_hafnian_dim);
        return l;
    }
};

} // namespace modsub

#endif
