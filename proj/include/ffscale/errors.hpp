#ifndef FFSCALE_ERRORS_HPP
#define FFSCALE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ffscale {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Scenario / input validation problems. The CLI maps these to exit code 2.
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// Numeric failures (exit code 3 in the CLI).
class NumericError : public Error {
public:
    explicit NumericError(const std::string& msg) : Error(msg) {}
};

class DimensionMismatch : public NumericError {
public:
    explicit DimensionMismatch(const std::string& msg) : NumericError(msg) {}
};

class DomainError : public NumericError {
public:
    explicit DomainError(const std::string& msg) : NumericError(msg) {}
};

// Jacobi sweeps hit the cap; carries the remaining off-diagonal residual.
class EigNotConverged : public NumericError {
public:
    EigNotConverged(const std::string& msg, double off_residual)
        : NumericError(msg), off_residual(off_residual) {}
    double off_residual;
};

// Spectral gap fell below the degeneracy threshold at rescaled time s.
class DegenerateSpectrum : public NumericError {
public:
    DegenerateSpectrum(const std::string& msg, double s, double min_gap)
        : NumericError(msg), s(s), min_gap(min_gap) {}
    double s;
    double min_gap;
};

// Frame-to-frame overlap too small to identify levels.
class AmbiguousTracking : public NumericError {
public:
    AmbiguousTracking(const std::string& msg, double s, double best_overlap)
        : NumericError(msg), s(s), best_overlap(best_overlap) {}
    double s;
    double best_overlap;
};

// Nested-commutator series did not reach the requested tolerance.
// Carries the phase span because the terms scale with powers of it.
class SeriesNotConverged : public NumericError {
public:
    SeriesNotConverged(const std::string& msg, double phase_span, double last_term)
        : NumericError(msg), phase_span(phase_span), last_term(last_term) {}
    double phase_span;
    double last_term;
};

}  // namespace ffscale

#endif
