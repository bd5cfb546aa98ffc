#pragma once

#include <stdexcept>
#include <string>

namespace sse {

// Malformed or unreadable user input (feature CSV, label file, constraint file).
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A vertex pair ended up both must-linked and cannot-linked.
struct ConstraintConflict : std::runtime_error {
    int a;
    int b;
    ConstraintConflict(int a_, int b_, const std::string& msg)
        : std::runtime_error(msg), a(a_), b(b_) {}
};

}  // namespace sse
