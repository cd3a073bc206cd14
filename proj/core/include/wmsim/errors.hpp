#pragma once

#include <stdexcept>
#include <string>

namespace wmsim {

/// Base class for all domain errors raised by the simulator.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// [A,B] != 0 beyond tolerance; carries the max-entry residual norm.
class NotCommuting : public Error {
public:
    double residual;
    explicit NotCommuting(double r)
        : Error("observables do not commute (max-entry residual " +
                std::to_string(r) + ")"),
          residual(r) {}
};

class DegeneracyResolutionFailed : public Error {
public:
    explicit DegeneracyResolutionFailed(double worst_residual)
        : Error("simultaneous diagonalization failed residual checks after retries "
                "(worst residual " + std::to_string(worst_residual) + ")") {}
};

/// |<f|i>| below threshold: the weak value diverges.
class NearOrthogonalSelection : public Error {
public:
    double overlap_abs;
    explicit NearOrthogonalSelection(double o)
        : Error("pre/post selection nearly orthogonal (|<f|i>| = " +
                std::to_string(o) + ")"),
          overlap_abs(o) {}
};

class SpecMismatch : public Error {
public:
    explicit SpecMismatch(const std::string& what) : Error(what) {}
};

class IncompatibleDims : public Error {
public:
    explicit IncompatibleDims(const std::string& what) : Error(what) {}
};

/// Analytic mode mass outside the grid exceeds the containment budget.
class ModeNotContained : public Error {
public:
    double tail_mass;
    explicit ModeNotContained(double m)
        : Error("pointer mode not contained in grid (tail mass " +
                std::to_string(m) + ")"),
          tail_mass(m) {}
};

class ZeroNorm : public Error {
public:
    ZeroNorm() : Error("wavefunction has zero norm") {}
};

/// Raw expectation ratio of a Hermitian meter had |Im| above tolerance.
class HermiticityViolation : public Error {
public:
    double imag_residue;
    explicit HermiticityViolation(double im)
        : Error("expectation of Hermitian meter has imaginary residue " +
                std::to_string(im)),
          imag_residue(im) {}
};

/// A coupling shift would wrap around the periodic grid.
class ShiftTooLarge : public Error {
public:
    double shift, limit;
    ShiftTooLarge(double s, double lim)
        : Error("coupling shift " + std::to_string(s) +
                " exceeds containment limit " + std::to_string(lim)),
          shift(s), limit(lim) {}
};

class TooLargeForOracle : public Error {
public:
    explicit TooLargeForOracle(const std::string& what) : Error(what) {}
};

class NonpositiveW : public Error {
public:
    explicit NonpositiveW(double w)
        : Error("normalization W must be positive, got " + std::to_string(w)) {}
};

class UnsupportedCombination : public Error {
public:
    explicit UnsupportedCombination(const std::string& what) : Error(what) {}
};

/// Scenario file rejected; message carries the field path and reason.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(what) {}
};

}  // namespace wmsim
