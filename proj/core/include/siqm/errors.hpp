#pragma once

#include <stdexcept>
#include <string>

namespace siqm {

/// Requested family name is not present in the registry.
class UnknownFamily : public std::runtime_error {
public:
    explicit UnknownFamily(const std::string& name)
        : std::runtime_error("unknown family: " + name) {}
};

/// A ParamValue was passed to a family with a different parameter count.
class ArityMismatch : public std::runtime_error {
public:
    ArityMismatch(std::size_t expected, std::size_t got)
        : std::runtime_error("parameter arity mismatch: expected " +
                             std::to_string(expected) + ", got " + std::to_string(got)) {}
};

/// A parameter orbit stepped outside the family's admissible set.
class ParameterDomainExit : public std::runtime_error {
public:
    explicit ParameterDomainExit(const std::string& what) : std::runtime_error(what) {}
};

/// A computed state profile fails to decay inside the box.
class NonNormalizable : public std::runtime_error {
public:
    explicit NonNormalizable(const std::string& what) : std::runtime_error(what) {}
};

/// Requested level exceeds the number of available bound states.
class LevelOutOfRange : public std::runtime_error {
public:
    explicit LevelOutOfRange(const std::string& what) : std::runtime_error(what) {}
};

/// Eigenvalue bisection cannot reach the requested bracket width.
class ToleranceUnreachable : public std::runtime_error {
public:
    explicit ToleranceUnreachable(const std::string& what) : std::runtime_error(what) {}
};

/// Inverse iteration failed to converge within the iteration cap.
class NoConvergence : public std::runtime_error {
public:
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

} // namespace siqm
