#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace sphereflow {

/// Base class for every error the library throws.
struct FlowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Input outside an operation's mathematical domain.
struct DomainError : FlowError {
    using FlowError::FlowError;
};

/// NaN or infinity where a finite value is required.
struct NonFiniteInput : DomainError {
    using DomainError::DomainError;
};

/// An iterative solver failed to meet its stopping tolerance.
struct ConvergenceError : FlowError {
    using FlowError::FlowError;
};

/// Radius queried at a time past the sphere's vanishing time.
struct VanishedError : FlowError {
    VanishedError(const std::string& msg, double when)
        : FlowError(msg), vanish_time(when) {}
    double vanish_time;
};

/// Adaptive integrator's step size underflowed before t_end was reached.
/// When the underflow happens in the vanishing endgame, crossing_estimate
/// carries the extrapolated time the radius reaches zero.
struct StiffnessError : FlowError {
    StiffnessError(const std::string& msg, double t, double r,
                   std::optional<double> crossing = std::nullopt)
        : FlowError(msg),
          time_reached(t),
          radius_reached(r),
          crossing_estimate(crossing) {}
    double time_reached;
    double radius_reached;
    std::optional<double> crossing_estimate;
};

/// Explicit time step exceeds the stable bound.
struct CFLViolation : FlowError {
    using FlowError::FlowError;
};

/// |grad phi| below threshold; curvature is undefined at this cell.
struct DegenerateGradient : FlowError {
    using FlowError::FlowError;
};

/// Every cell is outside the surface (phi > 0): the sphere is gone.
struct EmptySurface : FlowError {
    using FlowError::FlowError;
};

/// Zero level set reached the margin cells next to the grid boundary.
struct DomainEscape : FlowError {
    using FlowError::FlowError;
};

/// Too few trajectory samples for a fit.
struct InsufficientData : DomainError {
    using DomainError::DomainError;
};

/// File could not be opened, read, or parsed.
struct IoError : FlowError {
    using FlowError::FlowError;
};

}  // namespace sphereflow
