#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wmsim/dynamics.hpp"

using namespace wmsim;

namespace {

Observable diag3(double d0, double d1, double d2) {
    Matrix m = Matrix::Zero(3, 3);
    m(0, 0) = d0;
    m(1, 1) = d1;
    m(2, 2) = d2;
    return Observable(m);
}

Observable zero3() { return Observable(Matrix::Zero(3, 3)); }

Vector unit3(Complex a, Complex b, Complex c) {
    Vector v(3);
    v << a, b, c;
    v.normalize();
    return v;
}

const Vector kPre = unit3(1, 1, 1);
// generic complex post-selection, |<f|i>| = 0.5
const Vector kPost = unit3(Complex(0.63688838985650631, 0.0),
                           Complex(0.4503480993265172, 0.45034809932651715),
                           Complex(-0.42183227783991617, 0.10394174861123653));

PointerSpec spec1d(int n = 512, double extent = 12.0) {
    PointerSpec s;
    s.dims = 1;
    s.sigma = 1.0;
    s.grid_points = n;
    s.grid_extent = extent;
    return s;
}

PointerSpec spec2d(int n = 128, double extent = 14.0) {
    PointerSpec s;
    s.dims = 2;
    s.l = 1;
    s.sigma = 1.0;
    s.grid_points = n;
    s.grid_extent = extent;
    return s;
}

double state_distance(const PostSelectedPointer& u, const PostSelectedPointer& v) {
    const Vector d = u.wavefunction.amplitudes - v.wavefunction.amplitudes;
    const double w = std::pow(u.wavefunction.spec.spacing(), u.wavefunction.spec.dims);
    return std::sqrt(d.squaredNorm() * w);
}

}  // namespace

TEST_CASE("zero coupling is the identity up to the overlap factor") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec2d());

    const auto fin = evolve_exact_translation(a, b, sel, psi0, 0.0);
    CHECK(std::abs(fin.w - 1.0) < 1e-10);
    const Complex ov = sel.overlap();
    Vector expected = ov * psi0.amplitudes;
    const Vector d = fin.wavefunction.amplitudes - expected;
    CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("single-branch selection shifts the mode rigidly") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const GridWavefunction psi0 = make_lg_mode(spec2d());
    const Vector e1 = unit3(0, 1, 0);
    const SelectionPair sel(e1, e1);
    const double g = 0.3;

    const auto fin = evolve_exact_translation(a, b, sel, psi0, g);
    CHECK(std::abs(fin.w - 1.0) < 1e-12);
    const GridWavefunction ref = translate(psi0, g * 1.0, g * 2.0);
    const Vector d = fin.wavefunction.amplitudes - ref.amplitudes;
    CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("surviving-branch bookkeeping on the qutrit fixture") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel(kPre, unit3(1, 0, 0));
    const GridWavefunction psi0 = make_lg_mode(spec2d());

    const auto fin = evolve_exact_translation(a, b, sel, psi0, 0.25);
    // only the (0,0) branch survives: W = (1/3) / |<f|i>|^2 = 1, <X> = 0
    CHECK(std::abs(fin.w - 1.0) < 1e-10);
    CHECK(std::abs(expectation(fin.wavefunction, MeterObservable::x())) < 1e-10);
}

TEST_CASE("containment guard") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    CHECK_THROWS_AS(evolve_exact_translation(a, zero3(), sel, psi0, 50.0),
                    ShiftTooLarge);
}

TEST_CASE("1d translation demands b = 0") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    CHECK_THROWS_AS(evolve_exact_translation(a, b, sel, psi0, 0.1),
                    IncompatibleDims);
    CHECK_NOTHROW(evolve_exact_translation(a, zero3(), sel, psi0, 0.1));
}

TEST_CASE("displacement with g_b = 0 reduces to pure translation") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    const auto disp = evolve_exact_displacement(a, b, sel, psi0, 0.2, 0.0);
    const auto trans = evolve_exact_translation(a, zero3(), sel, psi0, 0.2);
    CHECK(state_distance(disp, trans) < 1e-12);
}

TEST_CASE("displacement with g_a = 0 preserves the modulus per eigenstate") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const Vector e2 = unit3(0, 0, 1);
    const SelectionPair sel(e2, e2);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    const auto fin = evolve_exact_displacement(a, b, sel, psi0, 0.0, 0.4);
    for (int j = 0; j < psi0.spec.grid_points; ++j)
        CHECK(std::abs(std::abs(fin.wavefunction.amplitudes[j]) -
                       std::abs(psi0.amplitudes[j])) < 1e-12);
}

TEST_CASE("bch phase convention frozen against the dense oracle") {
    // two-level system, both couplings on: the relative phase between
    // branches exposes the exp(-i alpha beta / 2) factor sign
    Matrix m = Matrix::Zero(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    const Observable a2(m);
    Vector pre(2), post(2);
    pre << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
    post = pre;
    const SelectionPair sel(pre, post);

    PointerSpec s = spec1d(64, 10.0);
    const GridWavefunction psi0 = make_lg_mode(s);
    const auto fact = evolve_exact_displacement(a2, a2, sel, psi0, 0.1, 0.1);
    const auto dense =
        brute_force_evolve(a2, a2, sel, psi0, CouplingSpec::phase_space_1d(0.1, 0.1));
    CHECK(state_distance(fact, dense) < 1e-8);

    // flipping the frozen sign must break the agreement
    GridWavefunction flipped{psi0.spec, Vector::Zero(64)};
    const JointSpectrum js = joint_eigendecomposition(a2, a2);
    for (int k = 0; k < 2; ++k) {
        const Complex weight = Complex(sel.post.dot(js.vectors.col(k))) *
                               Complex(js.vectors.col(k).dot(sel.pre));
        const double alpha = 0.1 * js.eigen_a[k], beta = 0.1 * js.eigen_b[k];
        GridWavefunction branch = psi0;
        for (int j = 0; j < 64; ++j)
            branch.amplitudes[j] *=
                std::polar(1.0, -beta * psi0.spec.node(j));
        branch = translate(branch, alpha);
        flipped.amplitudes += weight * std::polar(1.0, +alpha * beta / 2.0) *
                              branch.amplitudes;
    }
    const Vector d = flipped.amplitudes - dense.wavefunction.amplitudes;
    CHECK(std::sqrt(d.squaredNorm() * s.spacing()) > 1e-4);
}

TEST_CASE("perturbative evolution at g = 0 and first order") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d());

    const auto z0 = evolve_perturbative(a, zero3(), sel, psi0,
                                        CouplingSpec::translation_xy(0.0));
    const Vector d = z0.wavefunction.amplitudes - sel.overlap() * psi0.amplitudes;
    CHECK(d.cwiseAbs().maxCoeff() < 1e-14);

    // first-order pointer displacement <X>_f ~ g Re[A_w]: fixture with
    // A_w = 1 exactly (all weak values real)
    const Vector post_real = unit3(-0.25, 1.0, -0.25);
    const SelectionPair sel_r(kPre, post_real);
    const WeakValueSet wv = weak_value_set(a, zero3(), sel_r);
    REQUIRE(std::abs(wv.a_w - Complex(1.0)) < 1e-12);
    auto x_err = [&](double g) {
        const auto fin = evolve_exact_translation(a, zero3(), sel_r, psi0, g);
        return std::abs(expectation(fin.wavefunction, MeterObservable::x()) -
                        g * std::real(wv.a_w));
    };
    CHECK(x_err(0.04) < 10.0 * 0.04 * 0.04);
    CHECK(x_err(0.02) <= x_err(0.04) / 3.0 + 1e-12);  // O(g^2) remainder
}

TEST_CASE("perturbative W converges to the exact W at third order") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    auto dw = [&](double g) {
        const auto ex = evolve_exact_translation(a, zero3(), sel, psi0, g);
        const auto pe = evolve_perturbative(a, zero3(), sel, psi0,
                                            CouplingSpec::translation_xy(g));
        return std::abs(ex.w - pe.w);
    };
    CHECK(dw(0.05) <= dw(0.1) / 6.0 + 1e-14);
}

TEST_CASE("order of accuracy for the 1d <X> readout") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    std::vector<double> gs{0.1, 0.05, 0.025, 0.0125}, deltas;
    for (double g : gs) {
        const auto ex = evolve_exact_translation(a, zero3(), sel, psi0, g);
        const auto pe = evolve_perturbative(a, zero3(), sel, psi0,
                                            CouplingSpec::translation_xy(g));
        deltas.push_back(std::abs(expectation(ex.wavefunction, MeterObservable::x()) -
                                  expectation(pe.wavefunction, MeterObservable::x())));
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < gs.size(); ++i) {
        const double lx = std::log(gs[i]), ly = std::log(deltas[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = double(gs.size());
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    CHECK(slope >= 2.7);
}

TEST_CASE("perturbative phase-space operator truncates at second order") {
    // the three second-order monomials come from squaring the coupling sum
    // literally; wrong ordering or a missing cross term breaks the O(g^3)
    // agreement with the exact displacement evolver
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d(256));
    auto gap = [&](double g) {
        const auto ex = evolve_exact_displacement(a, b, sel, psi0, g, 0.7 * g);
        const auto pe = evolve_perturbative(a, b, sel, psi0,
                                            CouplingSpec::phase_space_1d(g, 0.7 * g));
        return std::abs(expectation(ex.wavefunction, MeterObservable::sym_x_px()) -
                        expectation(pe.wavefunction, MeterObservable::sym_x_px()));
    };
    CHECK(gap(0.05) <= gap(0.1) / 6.0 + 1e-13);
}

TEST_CASE("brute force: zero coupling is the identity") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d(256));
    const auto fin =
        brute_force_evolve(a, zero3(), sel, psi0, CouplingSpec::translation_xy(0.0));
    const Vector d = fin.wavefunction.amplitudes - sel.overlap() * psi0.amplitudes;
    CHECK(d.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("brute force size guard") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d(512));
    CHECK_THROWS_AS(
        brute_force_evolve(a, zero3(), sel, psi0, CouplingSpec::translation_xy(0.1)),
        TooLargeForOracle);
}

TEST_CASE("exact translation matches the dense oracle even at g = 1") {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel(kPre, kPost);
    const GridWavefunction psi0 = make_lg_mode(spec1d(256));
    const auto ex = evolve_exact_translation(a, zero3(), sel, psi0, 1.0);
    const auto bf =
        brute_force_evolve(a, zero3(), sel, psi0, CouplingSpec::translation_xy(1.0));
    CHECK(state_distance(ex, bf) < 1e-8);
}

TEST_CASE("global phase of the post-selection is unobservable") {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const GridWavefunction psi0 = make_lg_mode(spec2d());
    const SelectionPair sel(kPre, kPost);
    const SelectionPair sel_phase(kPre, Vector(std::polar(1.0, 1.234) * kPost));

    const auto u = evolve_exact_translation(a, b, sel, psi0, 0.2);
    const auto v = evolve_exact_translation(a, b, sel_phase, psi0, 0.2);
    CHECK(std::abs(u.w - v.w) < 1e-10);
    CHECK(std::abs(expectation(u.wavefunction, MeterObservable::xy()) -
                   expectation(v.wavefunction, MeterObservable::xy())) < 1e-10);
    CHECK(std::abs(expectation(u.wavefunction, MeterObservable::x2()) -
                   expectation(v.wavefunction, MeterObservable::x2())) < 1e-10);
}

TEST_CASE("completeness over an orthonormal post-selection basis in 1d") {
    const Observable a = diag3(0, 1, 2);
    const GridWavefunction psi0 = make_lg_mode(spec1d());
    double total = 0.0;
    for (int f = 0; f < 3; ++f) {
        Vector post = Vector::Zero(3);
        post[f] = 1.0;
        const SelectionPair sel(kPre, post);
        const auto fin = evolve_exact_displacement(a, a, sel, psi0, 0.3, 0.3);
        total += fin.squared_norm();
    }
    CHECK(std::abs(total - 1.0) < 1e-8);
}
