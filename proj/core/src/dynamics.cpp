#include "wmsim/dynamics.hpp"

#include <cmath>
#include <numbers>

#include "fft.hpp"

namespace wmsim {

namespace {

bool is_zero(const Matrix& m) { return m.cwiseAbs().maxCoeff() == 0.0; }

void check_overlap(const Complex& ov) {
    if (std::abs(ov) < 1e-300) throw NearOrthogonalSelection(std::abs(ov));
}

void check_shift(double shift, double limit) {
    if (std::abs(shift) > limit) throw ShiftTooLarge(std::abs(shift), limit);
}

PostSelectedPointer finish(GridWavefunction phi, const Complex& ov) {
    check_overlap(ov);
    const double w = phi.norm2() / std::norm(ov);
    return PostSelectedPointer{std::move(phi), ov, w};
}

}  // namespace

PostSelectedPointer evolve_exact_translation(const Observable& a,
                                             const Observable& b,
                                             const SelectionPair& sel,
                                             const GridWavefunction& psi0,
                                             double g, std::uint64_t seed) {
    const bool b_zero = is_zero(b.matrix());
    if (psi0.spec.dims == 1 && !b_zero)
        throw IncompatibleDims("translation coupling with B != 0 needs dims = 2");

    const JointSpectrum js = joint_eigendecomposition(a, b, seed);
    const double limit = psi0.spec.grid_extent / 4.0;
    check_shift(g * js.eigen_a.cwiseAbs().maxCoeff(), limit);
    check_shift(g * js.eigen_b.cwiseAbs().maxCoeff(), limit);

    GridWavefunction phi{psi0.spec, Vector::Zero(psi0.spec.size())};
    for (int k = 0; k < js.dim(); ++k) {
        const Complex weight = Complex(sel.post.dot(js.vectors.col(k))) *
                               Complex(js.vectors.col(k).dot(sel.pre));
        if (weight == Complex(0.0)) continue;
        const double dy = psi0.spec.dims == 2 ? g * js.eigen_b[k] : 0.0;
        const GridWavefunction shifted = translate(psi0, g * js.eigen_a[k], dy);
        phi.amplitudes += weight * shifted.amplitudes;
    }
    return finish(std::move(phi), sel.overlap());
}

PostSelectedPointer evolve_exact_displacement(const Observable& a,
                                              const Observable& b,
                                              const SelectionPair& sel,
                                              const GridWavefunction& psi0,
                                              double g_a, double g_b,
                                              std::uint64_t seed) {
    if (psi0.spec.dims != 1)
        throw IncompatibleDims("phase-space coupling needs a 1D pointer");

    const JointSpectrum js = joint_eigendecomposition(a, b, seed);
    const int n = psi0.spec.grid_points;
    const double dx = psi0.spec.spacing();
    check_shift(g_a * js.eigen_a.cwiseAbs().maxCoeff(), psi0.spec.grid_extent / 4.0);
    // Momentum kicks must stay inside the resolved band as well.
    check_shift(g_b * js.eigen_b.cwiseAbs().maxCoeff(),
                std::numbers::pi / dx / 4.0);

    GridWavefunction phi{psi0.spec, Vector::Zero(n)};
    const Complex mi(0.0, -1.0);
    for (int k = 0; k < js.dim(); ++k) {
        const Complex weight = Complex(sel.post.dot(js.vectors.col(k))) *
                               Complex(js.vectors.col(k).dot(sel.pre));
        if (weight == Complex(0.0)) continue;
        const double alpha = g_a * js.eigen_a[k];
        const double beta = g_b * js.eigen_b[k];

        GridWavefunction branch = psi0;
        for (int j = 0; j < n; ++j)
            branch.amplitudes[j] *= std::exp(mi * beta * psi0.spec.node(j));
        branch = translate(branch, alpha);
        phi.amplitudes +=
            weight * std::exp(mi * (alpha * beta / 2.0)) * branch.amplitudes;
    }
    return finish(std::move(phi), sel.overlap());
}

PostSelectedPointer evolve_perturbative(const Observable& a, const Observable& b,
                                        const SelectionPair& sel,
                                        const GridWavefunction& psi0,
                                        const CouplingSpec& coupling) {
    const WeakValueSet wv = weak_value_set(a, b, sel);
    const Complex i1(0.0, 1.0);
    GridWavefunction z = psi0;

    if (coupling.kind == CouplingSpec::Kind::TranslationXY) {
        const bool b_zero = is_zero(b.matrix());
        if (psi0.spec.dims == 1 && !b_zero)
            throw IncompatibleDims("translation coupling with B != 0 needs dims = 2");
        const double g = coupling.g;
        const auto px = MeterObservable::custom(0, 0, 1, 0);
        const GridWavefunction px1 = apply_meter(psi0, px);
        const GridWavefunction px2 = apply_meter(px1, px);
        z.amplitudes -= i1 * g * wv.a_w * px1.amplitudes;
        z.amplitudes -= 0.5 * g * g * wv.a2_w * px2.amplitudes;
        if (psi0.spec.dims == 2) {
            const auto py = MeterObservable::custom(0, 0, 0, 1);
            const GridWavefunction py1 = apply_meter(psi0, py);
            const GridWavefunction py2 = apply_meter(py1, py);
            const GridWavefunction pxpy = apply_meter(px1, py);
            z.amplitudes -= i1 * g * wv.b_w * py1.amplitudes;
            z.amplitudes -= 0.5 * g * g * wv.b2_w * py2.amplitudes;
            z.amplitudes -= g * g * wv.ab_w * pxpy.amplitudes;
        }
    } else {
        if (psi0.spec.dims != 1)
            throw IncompatibleDims("phase-space coupling needs a 1D pointer");
        const double ga = coupling.g_a, gb = coupling.g_b;
        const auto px = MeterObservable::custom(0, 0, 1, 0);
        const auto x = MeterObservable::custom(1, 0, 0, 0);
        const GridWavefunction p1 = apply_meter(psi0, px);
        const GridWavefunction x1 = apply_meter(psi0, x);
        const GridWavefunction p2 = apply_meter(p1, px);
        const GridWavefunction x2 = apply_meter(x1, x);
        // (g_a A P + g_b B X)^2 expanded literally, operator order kept:
        // cross term g_a g_b (AB)_w (P X + X P).
        const GridWavefunction px_ord = apply_meter(x1, px);  // P (X psi)
        const GridWavefunction xp_ord = apply_meter(p1, x);   // X (P psi)
        z.amplitudes -= i1 * ga * wv.a_w * p1.amplitudes;
        z.amplitudes -= i1 * gb * wv.b_w * x1.amplitudes;
        z.amplitudes -= 0.5 * ga * ga * wv.a2_w * p2.amplitudes;
        z.amplitudes -= 0.5 * gb * gb * wv.b2_w * x2.amplitudes;
        z.amplitudes -= 0.5 * ga * gb * wv.ab_w *
                        (px_ord.amplitudes + xp_ord.amplitudes);
    }

    z.amplitudes *= wv.overlap;
    return finish(std::move(z), wv.overlap);
}

PostSelectedPointer brute_force_evolve(const Observable& a, const Observable& b,
                                       const SelectionPair& sel,
                                       const GridWavefunction& psi0,
                                       const CouplingSpec& coupling,
                                       std::uint64_t seed) {
    (void)seed;  // the dense route never draws gamma
    if (psi0.spec.dims != 1)
        throw TooLargeForOracle("dense oracle is restricted to 1D pointers");
    const int d = a.dim();
    const int n = psi0.spec.grid_points;
    if (long(d) * n > 1024)
        throw TooLargeForOracle("dense oracle needs dim*grid_points <= 1024");
    assert_commuting(a, b);

    // Dense spectral derivative: columns of P are ifft(k .* fft(e_j)).
    Matrix pmat(n, n);
    {
        const auto k = detail::wavenumbers(n, psi0.spec.spacing());
        Vector col(n);
        for (int j = 0; j < n; ++j) {
            col.setZero();
            col[j] = 1.0;
            detail::dft_1d(col.data(), n, -1);
            for (int m = 0; m < n; ++m) col[m] *= k[m];
            detail::dft_1d(col.data(), n, +1);
            pmat.col(j) = col / double(n);
        }
    }
    Matrix xmat = Matrix::Zero(n, n);
    for (int j = 0; j < n; ++j) xmat(j, j) = psi0.spec.node(j);

    // H on system (x) grid, system index major: H = kron(A, Ka) + kron(B, Kb).
    Matrix ka, kb;
    if (coupling.kind == CouplingSpec::Kind::TranslationXY) {
        if (!is_zero(b.matrix()))
            throw TooLargeForOracle(
                "1D oracle supports the translation coupling only with B = 0");
        ka = coupling.g * pmat;
        kb = Matrix::Zero(n, n);
    } else {
        ka = coupling.g_a * pmat;
        kb = coupling.g_b * xmat;
    }
    Matrix h = Matrix::Zero(long(d) * n, long(d) * n);
    for (int s = 0; s < d; ++s)
        for (int t = 0; t < d; ++t)
            h.block(long(s) * n, long(t) * n, n, n) =
                a.matrix()(s, t) * ka + b.matrix()(s, t) * kb;

    // exp(-iH) via Hermitian eigendecomposition, applied to |i> x psi0.
    Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
    if (solver.info() != Eigen::Success)
        throw Error("oracle eigendecomposition failed");
    Vector full(long(d) * n);
    for (int s = 0; s < d; ++s)
        full.segment(long(s) * n, n) = sel.pre[s] * psi0.amplitudes;
    Vector coeff = solver.eigenvectors().adjoint() * full;
    for (long j = 0; j < coeff.size(); ++j)
        coeff[j] *= std::exp(Complex(0.0, -solver.eigenvalues()[j]));
    full = solver.eigenvectors() * coeff;

    GridWavefunction phi{psi0.spec, Vector::Zero(n)};
    for (int s = 0; s < d; ++s)
        phi.amplitudes += std::conj(sel.post[s]) * full.segment(long(s) * n, n);
    return finish(std::move(phi), sel.overlap());
}

}  // namespace wmsim
