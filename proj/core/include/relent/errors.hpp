#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace relent {

/// An argument lies outside the domain of the requested formula.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// Thrown by mgf_bound when t reaches the pole at n/2.
class PoleError : public DomainError {
public:
    PoleError(const std::string& what, double boundary)
        : DomainError(what), boundary_(boundary) {}

    double boundary() const noexcept { return boundary_; }

private:
    double boundary_;
};

/// Two vectors that must be paired have different lengths.
class ShapeError : public std::invalid_argument {
public:
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

/// An exact enumeration would exceed its configured composition budget.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, double compositions)
        : std::runtime_error(what), compositions_(compositions) {}

    double compositions() const noexcept { return compositions_; }

private:
    double compositions_;
};

}  // namespace relent
