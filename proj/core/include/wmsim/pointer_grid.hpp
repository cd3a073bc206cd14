#pragma once

// Pointer wavefunctions on uniform periodic grids: Laguerre-Gauss / Gaussian
// mode construction, inner products, spectral position/momentum operators,
// and ordered moments <X^a Y^b Px^c Py^d>.
//
// Conventions (fixed once, all tests depend on them):
//   - nodes x_j = -L + j*dx, dx = 2L/n, j = 0..n-1 (grid spans [-L, L));
//   - 2D storage row-major with x as the major axis: index = ix*n + iy;
//   - momentum P = -i d/dx, Fourier synthesis kernel e^{+ikx};
//   - hbar = 1.

#include <array>
#include <iosfwd>

#include "wmsim/system_algebra.hpp"

namespace wmsim {

/// Geometry and mode parameters of the pointer grid.
struct PointerSpec {
    int dims = 1;          // 1 or 2
    int l = 0;             // OAM index, signed; dims must be 2 when l != 0
    double sigma = 1.0;    // mode width
    int grid_points = 64;  // per axis, power of two, >= 32
    double grid_extent = 8.0;  // half-width L

    void validate() const;
    double spacing() const { return 2.0 * grid_extent / grid_points; }
    long size() const {
        return dims == 1 ? grid_points : long(grid_points) * grid_points;
    }
    double node(int j) const { return -grid_extent + spacing() * j; }
};

/// Complex pointer amplitude sampled on the grid described by `spec`.
struct GridWavefunction {
    PointerSpec spec;
    Vector amplitudes;  // size spec.size(); 2D index = ix*n + iy

    /// Discrete squared norm  sum |psi|^2 * dx^dims.
    double norm2() const;
};

/// Pointer-side operator: a named tag or an ordered monomial
/// X^a Y^b Px^c Py^d (operators apply right to left, i.e. Py first).
struct MeterObservable {
    enum class Kind { X, Y, X2, Y2, XY, XPy, YPx, SymXPx, PX2, PY2, Custom };

    Kind kind = Kind::X;
    std::array<int, 4> powers{0, 0, 0, 0};  // (a, b, c, d), Custom only

    static MeterObservable x() { return {Kind::X}; }
    static MeterObservable y() { return {Kind::Y}; }
    static MeterObservable x2() { return {Kind::X2}; }
    static MeterObservable y2() { return {Kind::Y2}; }
    static MeterObservable xy() { return {Kind::XY}; }
    static MeterObservable x_py() { return {Kind::XPy}; }
    static MeterObservable y_px() { return {Kind::YPx}; }
    static MeterObservable sym_x_px() { return {Kind::SymXPx}; }
    static MeterObservable px2() { return {Kind::PX2}; }
    static MeterObservable py2() { return {Kind::PY2}; }
    static MeterObservable custom(int a, int b, int c, int d) {
        return {Kind::Custom, {a, b, c, d}};
    }

    bool needs_second_axis() const;
    const char* name() const;
};

/// Normalization constant of the 2D mode, l taken as |l|:
/// 1/sqrt(pi 2^{|l|+1} sigma^{2|l|+2} |l|!).
double normalization_constant(int l, double sigma);

/// Sample the mode on the grid and renormalize discretely to unit norm.
/// dims=1 gives the Gaussian (2 pi sigma^2)^{-1/4} exp(-x^2/4sigma^2);
/// dims=2 gives N (x + i sgn(l) y)^{|l|} exp(-(x^2+y^2)/4sigma^2).
/// Throws ModeNotContained when the analytic tail mass outside the grid
/// exceeds 1e-10.
GridWavefunction make_lg_mode(const PointerSpec& spec);

/// Discrete quadrature <psi|phi> = sum conj(psi) phi dx^dims.
Complex inner_product(const GridWavefunction& psi, const GridWavefunction& phi);

/// Exact periodic translation via Fourier phase ramp e^{-i k.shift}.
GridWavefunction translate(const GridWavefunction& psi, double dx, double dy = 0.0);

/// Apply the meter operator: positions pointwise, momenta spectrally.
GridWavefunction apply_meter(const GridWavefunction& psi, const MeterObservable& m);

/// Re[<psi|m psi>] / <psi|psi>. Throws HermiticityViolation if the raw
/// ratio has |Im| > 1e-8 and ZeroNorm on an empty state.
double expectation(const GridWavefunction& psi, const MeterObservable& m);

/// Ordered complex moment <X^a Y^b Px^c Py^d> / <psi|psi>, a+b+c+d <= 4.
Complex moment(const GridWavefunction& psi, int a, int b, int c, int d);

/// Text dump: header "dims n L sigma l", then one "x [y] re im" line per node.
void write_wavefunction(std::ostream& os, const GridWavefunction& psi);
GridWavefunction read_wavefunction(std::istream& is);

}  // namespace wmsim
