#pragma once

#include <stdexcept>
#include <string>

namespace lfscan {

// Stage-tagged errors. The CLI maps each type to a distinct exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class SimulationError : public Error {
public:
    using Error::Error;
};

class CalibrationError : public Error {
public:
    using Error::Error;
};

class DecodeError : public Error {
public:
    using Error::Error;
};

class RegistrationError : public Error {
public:
    using Error::Error;
};

class FusionError : public Error {
public:
    using Error::Error;
};

// All input points collinear, empty sample set, ... anything that leaves
// no valid triangulation.
class DegenerateGeometryError : public FusionError {
public:
    using FusionError::FusionError;
};

class RestoreError : public Error {
public:
    using Error::Error;
};

class MetricsError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

} // namespace lfscan
