#pragma once

#include <stdexcept>
#include <string>

namespace burgers2d {

// Thrown by the dense 4x4 kernel and the block Thomas sweep when a pivot
// block is numerically singular. `index` is the offending block row (or -1
// for a standalone dense solve).
class SingularBlock : public std::runtime_error {
public:
    explicit SingularBlock(int index, const std::string& what)
        : std::runtime_error(what), index_(index) {}
    int index() const noexcept { return index_; }

private:
    int index_;
};

// Signals blow-up of an explicit time step: a NaN/Inf or a value beyond the
// overflow guard appeared in an updated field.
class NonFinite : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Newton failed to reach the requested tolerance within the iteration cap.
class NewtonDiverged : public std::runtime_error {
public:
    NewtonDiverged(int line, double residual, const std::string& what)
        : std::runtime_error(what), line_(line), residual_(residual) {}
    int line() const noexcept { return line_; }
    double residual() const noexcept { return residual_; }

private:
    int line_;
    double residual_;
};

// The steady-solution denominator vanished at the requested point.
class DegeneratePhi : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Configuration parsing/validation failure; the message names the bad key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace burgers2d
