#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>

namespace tscheme {

// Caller supplied something malformed: bad sizes, bad ranges, shape mismatch.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class IncompatibleGrid : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class UnsupportedWidth : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidSample : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class SingularParameter : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class InvalidGraph : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class ConfigError : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class UnknownExperiment : public ConfigError {
public:
    using ConfigError::ConfigError;
};

// Anything that goes wrong inside the numerics. Training maps these to a penalty.
class NumericalFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DomainError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class SolverFailure : public NumericalFailure {
public:
    SolverFailure(const std::string& what, double residual)
        : NumericalFailure(what), residual_(residual) {}
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

class NonFiniteValue : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class PositivityViolation : public NumericalFailure {
public:
    PositivityViolation(const std::string& what, long cell)
        : NumericalFailure(what), cell_(cell) {}
    long cell() const noexcept { return cell_; }

private:
    long cell_;
};

class CflViolation : public NumericalFailure {
public:
    CflViolation(const std::string& what, double courant)
        : NumericalFailure(what), courant_(courant) {}
    double courant() const noexcept { return courant_; }

private:
    double courant_;
};

class GradientFailure : public NumericalFailure {
public:
    GradientFailure(const std::string& what, std::size_t entry)
        : NumericalFailure(what), entry_(entry) {}
    std::size_t entry() const noexcept { return entry_; }

private:
    std::size_t entry_;
};

class InvalidStart : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class UnmatchedError : public NumericalFailure {
public:
    using NumericalFailure::NumericalFailure;
};

class FileError : public std::runtime_error {
public:
    FileError(const std::string& what, std::filesystem::path path)
        : std::runtime_error(what + ": " + path.string()), path_(std::move(path)) {}
    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
};

}
