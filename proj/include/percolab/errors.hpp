#pragma once

#include <stdexcept>
#include <string>

namespace percolab {

/// Invalid or inconsistent input parameters (CLI exit code 2).
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

/// A formula evaluated outside its domain, e.g. an iterated log that is not positive.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Parameters sit exactly on a regime boundary where the requested formula is undefined.
class BoundaryError : public DomainError {
public:
    explicit BoundaryError(const std::string& what) : DomainError(what) {}
};

/// The operation is defined only for a subset of shapes or thresholds.
class UnsupportedError : public std::invalid_argument {
public:
    explicit UnsupportedError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact computation or enumeration would exceed its work budget (CLI exit code 3).
class BudgetError : public std::runtime_error {
public:
    explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace percolab
