#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace sylv {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid caller-supplied argument (dimension mismatch, bad rank, ...).
class InvalidArgumentError : public Error {
public:
    using Error::Error;
};

/// Matrix Market parsing failure; carries the 1-based line number.
class IngestionError : public Error {
public:
    IngestionError(const std::string& path, long line, const std::string& what);
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// A shifted system (sigma I - A) was numerically singular.
class ShiftCollisionError : public Error {
public:
    explicit ShiftCollisionError(std::complex<double> shift);
    std::complex<double> shift() const noexcept { return shift_; }

private:
    std::complex<double> shift_;
};

/// b = 0, or the requested subspace collapsed entirely.
class DegenerateSubspaceError : public Error {
public:
    using Error::Error;
};

/// lambda_i(A) + lambda_j(B) = 0 for some pair: no unique solution.
class SpectralCollisionError : public Error {
public:
    SpectralCollisionError(std::complex<double> a, std::complex<double> b);
};

/// The direct Kronecker solve was asked for a problem above its cap.
class OracleTooLargeError : public Error {
public:
    using Error::Error;
};

/// Bad benchmark configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

std::string format_complex(std::complex<double> z);

}  // namespace sylv
