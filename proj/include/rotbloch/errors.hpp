// Copyright 2026 The rotbloch Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace rotbloch {

/// Invalid or incomplete experiment configuration. The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Base for failures of the numerics themselves. The CLI maps these to exit code 3.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Population reached the truncation buffer and the window could not be grown further.
class LeakageError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A fitted alignment series has no interior maximum.
class NoExtremumError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// Integrator step larger than the allowed maximum.
class StepSizeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace rotbloch
