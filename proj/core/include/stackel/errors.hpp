// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stackel {

/// Base for every error raised by the library. Each error carries the tag of
/// the module that raised it so front-ends can report where a failure came from.
class Error : public std::runtime_error {
public:
    Error(std::string_view module, const std::string& what)
        : std::runtime_error(what), module_(module) {}

    [[nodiscard]] const std::string& module() const noexcept { return module_; }

private:
    std::string module_;
};

/// A caller violated a documented precondition (bad step count, bad sign, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// numerics

class EvaluationError : public Error {
public:
    EvaluationError(double tau, const std::string& what)
        : Error("numerics", what), tau_(tau) {}
    [[nodiscard]] double tau() const noexcept { return tau_; }

private:
    double tau_;
};

class IntegrationBlowup : public Error {
public:
    IntegrationBlowup(double last_good_tau, const std::string& what)
        : Error("numerics", what), last_good_tau_(last_good_tau) {}
    [[nodiscard]] double last_good_tau() const noexcept { return last_good_tau_; }

private:
    double last_good_tau_;
};

class DomainError : public Error {
public:
    using Error::Error;
};

// curvature

class DegeneracyError : public Error {
public:
    DegeneracyError(double det, const std::string& what)
        : Error("curvature", what), det_(det) {}
    [[nodiscard]] double determinant() const noexcept { return det_; }

private:
    double det_;
};

class SingularVolumeError : public Error {
public:
    explicit SingularVolumeError(const std::string& what) : Error("curvature", what) {}
};

// canonical

class InvalidTransformError : public Error {
public:
    explicit InvalidTransformError(const std::string& what) : Error("canonical", what) {}
};

/// The structure matrix has no real eigendirection with an invariant
/// complement (a single 3x3 Jordan block), so no block split exists.
class NotSplittableError : public Error {
public:
    explicit NotSplittableError(const std::string& what) : Error("canonical", what) {}
};

// solutions

class DegenerateRotationError : public Error {
public:
    explicit DegenerateRotationError(const std::string& what) : Error("solutions", what) {}
};

class BranchError : public Error {
public:
    explicit BranchError(const std::string& what) : Error("solutions", what) {}
};

// assembly

class InconsistentInputsError : public Error {
public:
    explicit InconsistentInputsError(const std::string& what) : Error("assembly", what) {}
};

class SignatureError : public Error {
public:
    explicit SignatureError(const std::string& what) : Error("assembly", what) {}
};

class ConstraintError : public Error {
public:
    explicit ConstraintError(const std::string& what) : Error("assembly", what) {}
};

}  // namespace stackel
