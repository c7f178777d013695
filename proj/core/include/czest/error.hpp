#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace czest {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Interval operation outside its mathematical domain (division by an interval
/// containing zero, tan across a pole, sqrt of a negative interval, ...).
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Operand shapes do not agree.
class DimensionError : public Error
{
public:
    using Error::Error;
};

/// A non-empty set was required but the constraint set B_inf(A, b) is empty.
class EmptySetError : public Error
{
public:
    using Error::Error;
};

/// The simplex iteration cap was reached.
class SolverStalledError : public Error
{
public:
    using Error::Error;
};

/// An expansion point selection rule could not produce a member point.
class StrategyError : public Error
{
public:
    using Error::Error;
};

/// A measurement update produced an empty set.
class InconsistentMeasurementError : public Error
{
public:
    InconsistentMeasurementError(const std::string& what, std::size_t step)
        : Error(what), step_(step)
    {
    }

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

} // namespace czest
