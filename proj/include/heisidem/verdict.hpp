#pragma once

#include <string>
#include <vector>

namespace heisidem {

/// Outcome of an exhaustive check: on failure, a message and the indices
/// of a concrete counterexample.
struct Verdict {
    bool ok = true;
    std::string message;
    std::vector<std::size_t> witness;

    static Verdict pass() { return {}; }
    static Verdict fail(std::string message, std::vector<std::size_t> witness = {}) {
        return {false, std::move(message), std::move(witness)};
    }
    explicit operator bool() const { return ok; }
};

}  // namespace heisidem
