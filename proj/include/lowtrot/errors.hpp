#pragma once

#include <stdexcept>
#include <string>

namespace lowtrot {

// Base for everything thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct QubitCountMismatch : Error {
    using Error::Error;
};

struct DimensionTooLarge : Error {
    DimensionTooLarge(int n_qubits, int limit)
        : Error("dense operation on " + std::to_string(n_qubits) +
                " qubits exceeds the configured limit of " + std::to_string(limit)),
          n_qubits(n_qubits), limit(limit) {}
    int n_qubits;
    int limit;
};

struct EmptyGroup : Error {
    explicit EmptyGroup(int group)
        : Error("group " + std::to_string(group) + " contains no terms"), group(group) {}
    int group;
};

struct NonCommutingGroup : Error {
    NonCommutingGroup(int group, int term_i, int term_j)
        : Error("terms " + std::to_string(term_i) + " and " + std::to_string(term_j) +
                " of group " + std::to_string(group) + " do not commute"),
          group(group), term_i(term_i), term_j(term_j) {}
    int group;
    int term_i;
    int term_j;
};

struct NotHermitian : Error {
    using Error::Error;
};

struct OrderTooLarge : Error {
    OrderTooLarge(int requested, int supported)
        : Error("order " + std::to_string(requested) + " exceeds the supported maximum " +
                std::to_string(supported)),
          requested(requested), supported(supported) {}
    int requested;
    int supported;
};

struct NonAsymptoticGrid : Error {
    using Error::Error;
};

struct InvalidChain : Error {
    using Error::Error;
};

struct EmptySubspace : Error {
    using Error::Error;
};

struct RNotFoundWithinBudget : Error {
    explicit RNotFoundWithinBudget(long long cap)
        : Error("no Trotter number at or below " + std::to_string(cap) +
                " reaches the target error"),
          cap(cap) {}
    long long cap;
};

struct NonMonotoneBracket : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

}  // namespace lowtrot
