#pragma once

#include <stdexcept>
#include <string>

namespace meshref {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed or missing inputs (files, parameters, empty data). CLI exit code 2.
class InputError : public Error {
public:
    using Error::Error;
};

// Violated numeric contracts and unrecoverable numeric failures. CLI exit code 3.
class NumericError : public Error {
public:
    using Error::Error;
};

class BehindCameraError : public NumericError {
public:
    using NumericError::NumericError;
};

class NonPositiveDepthError : public NumericError {
public:
    using NumericError::NumericError;
};

class ZeroNormalError : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateFaceError : public NumericError {
public:
    using NumericError::NumericError;
};

class InvalidMeshError : public InputError {
public:
    using InputError::InputError;
};

class EmptyInputError : public InputError {
public:
    using InputError::InputError;
};

class NoMutualCoverageError : public InputError {
public:
    using InputError::InputError;
};

class InvalidParamsError : public InputError {
public:
    using InputError::InputError;
};

class IoError : public InputError {
public:
    using InputError::InputError;
};

} // namespace meshref
