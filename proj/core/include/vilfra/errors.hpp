// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vilfra {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Inconsistent or out-of-range parameters (mismatched p, bad partitions, ...).
class ParameterError : public Error {
public:
    using Error::Error;
};

/// A coset or step function cannot be expressed at the requested resolution.
class ResolutionError : public Error {
public:
    using Error::Error;
};

/// Malformed tree node lists: cycles, several roots, dangling parents.
class StructuralError : public Error {
public:
    using Error::Error;
};

/// Backtracking search exhausted without finding an instance.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Frame construction failed; the message lists what went wrong.
class ConstructionError : public Error {
public:
    using Error::Error;
};

/// A computed object violates an invariant it is guaranteed to satisfy.
class InvariantError : public Error {
public:
    using Error::Error;
};

/// Weight sequences whose reciprocal tail sum does not converge.
class WeightError : public Error {
public:
    using Error::Error;
};

}  // namespace vilfra
