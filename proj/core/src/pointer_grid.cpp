#include "wmsim/pointer_grid.hpp"

#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "fft.hpp"

namespace wmsim {

namespace {

constexpr double kTailBudget = 1e-10;
constexpr double kNormTol = 1e-8;
constexpr double kImagTol = 1e-8;

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// Analytic mode mass outside the grid, from the radial (2D) or erfc (1D) tail.
double tail_mass(const PointerSpec& s) {
    const double L = s.grid_extent;
    if (s.dims == 1) return std::erfc(L / (std::numbers::sqrt2 * s.sigma));
    // 2D: P(r > L) = Q(|l|+1, u), u = L^2/(2 sigma^2); exact for integer |l|.
    const double u = L * L / (2.0 * s.sigma * s.sigma);
    double sum = 0.0, term = 1.0;
    for (int j = 0; j <= std::abs(s.l); ++j) {
        sum += term;
        term *= u / (j + 1);
    }
    return std::exp(-u) * sum;
}

}  // namespace

void PointerSpec::validate() const {
    if (dims != 1 && dims != 2) throw Error("pointer dims must be 1 or 2");
    if (sigma <= 0.0) throw Error("pointer sigma must be positive");
    if (grid_points < 32 || !power_of_two(grid_points))
        throw Error("grid_points must be a power of two >= 32");
    if (l != 0 && dims != 2) throw IncompatibleDims("l != 0 requires dims = 2");
    const double min_extent = 6.0 * sigma * std::sqrt(std::abs(l) + 1.0);
    if (grid_extent < min_extent * (1.0 - 1e-12))
        throw Error("grid_extent below containment rule 6*sigma*sqrt(|l|+1)");
}

double GridWavefunction::norm2() const {
    const double w = std::pow(spec.spacing(), spec.dims);
    return amplitudes.squaredNorm() * w;
}

bool MeterObservable::needs_second_axis() const {
    switch (kind) {
        case Kind::Y:
        case Kind::Y2:
        case Kind::XY:
        case Kind::XPy:
        case Kind::YPx:
        case Kind::PY2:
            return true;
        case Kind::Custom:
            return powers[1] > 0 || powers[3] > 0;
        default:
            return false;
    }
}

const char* MeterObservable::name() const {
    switch (kind) {
        case Kind::X: return "X";
        case Kind::Y: return "Y";
        case Kind::X2: return "X2";
        case Kind::Y2: return "Y2";
        case Kind::XY: return "XY";
        case Kind::XPy: return "XPy";
        case Kind::YPx: return "YPx";
        case Kind::SymXPx: return "SymXPx";
        case Kind::PX2: return "PX2";
        case Kind::PY2: return "PY2";
        case Kind::Custom: return "custom";
    }
    return "?";
}

double normalization_constant(int l, double sigma) {
    if (sigma <= 0.0) throw Error("sigma must be positive");
    const int al = std::abs(l);
    // pi * 2^{|l|+1} * sigma^{2|l|+2} * |l|!
    double denom = std::numbers::pi * 2.0 * sigma * sigma;
    for (int j = 1; j <= al; ++j) denom *= 2.0 * sigma * sigma * j;
    return 1.0 / std::sqrt(denom);
}

GridWavefunction make_lg_mode(const PointerSpec& spec) {
    spec.validate();
    const double tail = tail_mass(spec);
    if (tail > kTailBudget) throw ModeNotContained(tail);

    const int n = spec.grid_points;
    GridWavefunction psi{spec, Vector(spec.size())};
    const double s4 = 4.0 * spec.sigma * spec.sigma;

    if (spec.dims == 1) {
        const double n1 = std::pow(2.0 * std::numbers::pi * spec.sigma * spec.sigma, -0.25);
        for (int j = 0; j < n; ++j) {
            const double x = spec.node(j);
            psi.amplitudes[j] = n1 * std::exp(-x * x / s4);
        }
    } else {
        const double nc = normalization_constant(spec.l, spec.sigma);
        const int al = std::abs(spec.l);
        const double sgn = spec.l > 0 ? 1.0 : (spec.l < 0 ? -1.0 : 0.0);
        for (int ix = 0; ix < n; ++ix) {
            const double x = spec.node(ix);
            for (int iy = 0; iy < n; ++iy) {
                const double y = spec.node(iy);
                Complex vortex = 1.0;
                const Complex u(x, sgn * y);
                for (int p = 0; p < al; ++p) vortex *= u;
                psi.amplitudes[long(ix) * n + iy] =
                    nc * vortex * std::exp(-(x * x + y * y) / s4);
            }
        }
    }

    // Discrete renormalization keeps expectation ratios quadrature-bias free.
    psi.amplitudes /= std::sqrt(psi.norm2());
    return psi;
}

namespace {

void check_same_grid(const PointerSpec& a, const PointerSpec& b) {
    if (a.dims != b.dims || a.grid_points != b.grid_points ||
        a.grid_extent != b.grid_extent)
        throw SpecMismatch("wavefunctions live on different grids");
}

void forward(GridWavefunction& psi) {
    if (psi.spec.dims == 1)
        detail::dft_1d(psi.amplitudes.data(), psi.spec.grid_points, -1);
    else
        detail::dft_2d(psi.amplitudes.data(), psi.spec.grid_points, -1);
}

void backward(GridWavefunction& psi) {
    if (psi.spec.dims == 1)
        detail::dft_1d(psi.amplitudes.data(), psi.spec.grid_points, +1);
    else
        detail::dft_2d(psi.amplitudes.data(), psi.spec.grid_points, +1);
    psi.amplitudes /= double(psi.spec.size());
}

// Multiply the spectrum by kx^c * ky^d (ky ignored in 1D).
void spectral_multiply(GridWavefunction& psi, int c, int d) {
    const int n = psi.spec.grid_points;
    const auto k = detail::wavenumbers(n, psi.spec.spacing());
    if (psi.spec.dims == 1) {
        for (int j = 0; j < n; ++j)
            psi.amplitudes[j] *= std::pow(k[j], c);
        return;
    }
    for (int ix = 0; ix < n; ++ix) {
        const double fx = std::pow(k[ix], c);
        for (int iy = 0; iy < n; ++iy)
            psi.amplitudes[long(ix) * n + iy] *= fx * std::pow(k[iy], d);
    }
}

// Multiply pointwise by x^a * y^b.
void position_multiply(GridWavefunction& psi, int a, int b) {
    const int n = psi.spec.grid_points;
    if (psi.spec.dims == 1) {
        for (int j = 0; j < n; ++j)
            psi.amplitudes[j] *= std::pow(psi.spec.node(j), a);
        return;
    }
    for (int ix = 0; ix < n; ++ix) {
        const double fx = std::pow(psi.spec.node(ix), a);
        for (int iy = 0; iy < n; ++iy)
            psi.amplitudes[long(ix) * n + iy] *= fx * std::pow(psi.spec.node(iy), b);
    }
}

// Ordered monomial X^a Y^b Px^c Py^d: momenta first (rightmost), then positions.
GridWavefunction apply_monomial(const GridWavefunction& psi, int a, int b, int c,
                                int d) {
    GridWavefunction out = psi;
    if (c > 0 || d > 0) {
        forward(out);
        spectral_multiply(out, c, d);
        backward(out);
    }
    if (a > 0 || b > 0) position_multiply(out, a, b);
    return out;
}

}  // namespace

Complex inner_product(const GridWavefunction& psi, const GridWavefunction& phi) {
    check_same_grid(psi.spec, phi.spec);
    const double w = std::pow(psi.spec.spacing(), psi.spec.dims);
    return Complex(psi.amplitudes.dot(phi.amplitudes)) * w;
}

GridWavefunction translate(const GridWavefunction& psi, double dx, double dy) {
    if (psi.spec.dims == 1 && dy != 0.0)
        throw IncompatibleDims("y-translation on a 1D grid");
    GridWavefunction out = psi;
    forward(out);
    const int n = out.spec.grid_points;
    const auto k = detail::wavenumbers(n, out.spec.spacing());
    const Complex mi(0.0, -1.0);
    if (out.spec.dims == 1) {
        for (int j = 0; j < n; ++j) out.amplitudes[j] *= std::exp(mi * k[j] * dx);
    } else {
        for (int ix = 0; ix < n; ++ix) {
            const Complex px = std::exp(mi * k[ix] * dx);
            for (int iy = 0; iy < n; ++iy)
                out.amplitudes[long(ix) * n + iy] *= px * std::exp(mi * k[iy] * dy);
        }
    }
    backward(out);
    return out;
}

GridWavefunction apply_meter(const GridWavefunction& psi, const MeterObservable& m) {
    if (m.needs_second_axis() && psi.spec.dims != 2)
        throw IncompatibleDims(std::string(m.name()) + " needs a 2D pointer");
    using K = MeterObservable::Kind;
    switch (m.kind) {
        case K::X: return apply_monomial(psi, 1, 0, 0, 0);
        case K::Y: return apply_monomial(psi, 0, 1, 0, 0);
        case K::X2: return apply_monomial(psi, 2, 0, 0, 0);
        case K::Y2: return apply_monomial(psi, 0, 2, 0, 0);
        case K::XY: return apply_monomial(psi, 1, 1, 0, 0);
        case K::XPy: return apply_monomial(psi, 1, 0, 0, 1);
        case K::YPx: return apply_monomial(psi, 0, 1, 1, 0);
        case K::PX2: return apply_monomial(psi, 0, 0, 2, 0);
        case K::PY2: return apply_monomial(psi, 0, 0, 0, 2);
        case K::SymXPx: {
            // (X Px + Px X)/2
            GridWavefunction xp = apply_monomial(psi, 1, 0, 1, 0);
            GridWavefunction px = apply_monomial(apply_monomial(psi, 1, 0, 0, 0),
                                                 0, 0, 1, 0);
            xp.amplitudes = 0.5 * (xp.amplitudes + px.amplitudes);
            return xp;
        }
        case K::Custom:
            return apply_monomial(psi, m.powers[0], m.powers[1], m.powers[2],
                                  m.powers[3]);
    }
    throw Error("unreachable meter kind");
}

double expectation(const GridWavefunction& psi, const MeterObservable& m) {
    const double n2 = psi.norm2();
    if (n2 <= 0.0) throw ZeroNorm();
    const Complex raw = inner_product(psi, apply_meter(psi, m)) / n2;
    if (std::abs(raw.imag()) > kImagTol) throw HermiticityViolation(raw.imag());
    return raw.real();
}

Complex moment(const GridWavefunction& psi, int a, int b, int c, int d) {
    if (a < 0 || b < 0 || c < 0 || d < 0 || a + b + c + d > 4)
        throw Error("moment orders must be non-negative with total <= 4");
    if ((b > 0 || d > 0) && psi.spec.dims != 2)
        throw IncompatibleDims("y-moment on a 1D pointer");
    const double n2 = psi.norm2();
    if (n2 <= 0.0) throw ZeroNorm();
    return inner_product(psi, apply_monomial(psi, a, b, c, d)) / n2;
}

void write_wavefunction(std::ostream& os, const GridWavefunction& psi) {
    const auto& s = psi.spec;
    os.precision(17);
    os << s.dims << ' ' << s.grid_points << ' ' << s.grid_extent << ' '
       << s.sigma << ' ' << s.l << '\n';
    const int n = s.grid_points;
    if (s.dims == 1) {
        for (int j = 0; j < n; ++j)
            os << s.node(j) << ' ' << psi.amplitudes[j].real() << ' '
               << psi.amplitudes[j].imag() << '\n';
        return;
    }
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy) {
            const Complex& a = psi.amplitudes[long(ix) * n + iy];
            os << s.node(ix) << ' ' << s.node(iy) << ' ' << a.real() << ' '
               << a.imag() << '\n';
        }
}

GridWavefunction read_wavefunction(std::istream& is) {
    PointerSpec s;
    if (!(is >> s.dims >> s.grid_points >> s.grid_extent >> s.sigma >> s.l))
        throw ParseError("wavefunction dump: bad header");
    s.validate();
    GridWavefunction psi{s, Vector(s.size())};
    double x, y, re, im;
    for (long j = 0; j < s.size(); ++j) {
        const bool ok = s.dims == 1 ? bool(is >> x >> re >> im)
                                    : bool(is >> x >> y >> re >> im);
        if (!ok) throw ParseError("wavefunction dump: truncated at node " +
                                  std::to_string(j));
        if (!std::isfinite(re) || !std::isfinite(im))
            throw ParseError("wavefunction dump: non-finite amplitude");
        psi.amplitudes[j] = Complex(re, im);
    }
    return psi;
}

}  // namespace wmsim
