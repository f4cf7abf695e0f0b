#pragma once

#include <stdexcept>
#include <string>

namespace gflab {

/// Base class for all errors thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class DomainError : public Error {
public:
    using Error::Error;
};

class UnknownTag : public Error {
public:
    using Error::Error;
};

class QuadratureFailure : public Error {
public:
    using Error::Error;
};

class SqrtOfNegative : public Error {
public:
    using Error::Error;
};

class CertificateViolation : public Error {
public:
    using Error::Error;
};

class NonDifferentiableNode : public Error {
public:
    using Error::Error;
};

class SearchFailure : public Error {
public:
    using Error::Error;
};

class ZeroDenominator : public Error {
public:
    using Error::Error;
};

class NoConnection : public Error {
public:
    using Error::Error;
};

class StiffnessFailure : public Error {
public:
    using Error::Error;
};

class CFLViolation : public Error {
public:
    using Error::Error;
};

class BlowupDetected : public Error {
public:
    using Error::Error;
};

class StabilityViolation : public Error {
public:
    using Error::Error;
};

class NonlinearSolveFailure : public Error {
public:
    using Error::Error;
};

class OverflowForLargeMode : public Error {
public:
    using Error::Error;
};

class SolverFailure : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    ConfigError(const std::string& field_path, const std::string& msg)
        : Error(field_path + ": " + msg), field_path_(field_path) {}
    const std::string& field_path() const { return field_path_; }

private:
    std::string field_path_;
};

class ExperimentError : public Error {
public:
    using Error::Error;
};

class UnknownExperiment : public Error {
public:
    using Error::Error;
};

}  // namespace gflab
