#include "wmsim/validation.hpp"

#include <cmath>
#include <sstream>

#include "wmsim/readout.hpp"

namespace wmsim {

namespace {

// ---------------------------------------------------------------------------
// fixtures
// ---------------------------------------------------------------------------

Observable qutrit_a() {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 1) = 1.0;
    m(2, 2) = 2.0;
    return Observable(m);
}

Observable qutrit_b() {
    Matrix m = Matrix::Zero(3, 3);
    m(1, 1) = 2.0;
    m(2, 2) = 1.0;
    return Observable(m);
}

Observable zero_obs(int d) { return Observable(Matrix::Zero(d, d)); }

Vector uniform_pre(int d) {
    return Vector::Constant(d, Complex(1.0 / std::sqrt(double(d)), 0.0));
}

Vector vec3(Complex c0, Complex c1, Complex c2) {
    Vector v(3);
    v << c0, c1, c2;
    return v;
}

// Generic complex post-selection with |<f|i>| = 0.5 exactly.
const Vector kPostGeneric = vec3({0.63688838985650631, 0.0},
                                 {0.4503480993265172, 0.45034809932651715},
                                 {-0.42183227783991617, 0.10394174861123653});

// Im[A2w] = 0 and Re[(AB)w] = Re[Aw* Bw]; Im[B2w] = 1.
const Vector kPostLScan = vec3({0.17491154476923795, 0.26766372654079529},
                               {0.78867787077762508, -0.3568849687210604},
                               {0.37472921715711344, 0.089221242180265101});

// Aw = 0, A2w = 1.2: the pure higher-order displacement fixture.
const Vector kPostPureHigher = vec3({0.7662610281769211, 0.0},
                                    {-0.57469577113269077, 0.0},
                                    {0.28734788556634538, 0.0});

// Aw = 0.9i, A2w = (0.9i)^2: the symmetry-degenerate (A2w = Aw^2) fixture.
const Vector kPostDegenerate = vec3({0.23447832047952838, 0.53200963470145102},
                                    {0.31920578082087059, -0.70934617960193458},
                                    {-0.15960289041043529, 0.17733654490048364});

// SymXPx pair: identical Aw = 1, A2w = 2 vs 2 + i (delta Im = 1).
const Vector kPostProbeReal2 = vec3({0.70710678118654757, 0.0}, {0.0, 0.0},
                                    {0.70710678118654757, 0.0});
const Vector kPostProbeImag = vec3({0.35355339059327379, -0.35355339059327379},
                                   {0.0, 0.70710678118654757},
                                   {0.35355339059327379, -0.35355339059327379});
// All weak values real (Aw = 1, A2w = (A^n)w all real): reading = O(g^3).
const Vector kPostProbeAllReal = vec3({-0.23570226039551584, 0.0},
                                      {0.94280904158206336, 0.0},
                                      {-0.23570226039551584, 0.0});

PointerSpec spec_2d(int l, double sigma = 1.0, int n = 256, double extent = 14.0) {
    PointerSpec s;
    s.dims = 2;
    s.l = l;
    s.sigma = sigma;
    s.grid_points = n;
    s.grid_extent = extent;
    return s;
}

PointerSpec spec_1d(double sigma = 1.0, int n = 1024, double extent = 12.0) {
    PointerSpec s;
    s.dims = 1;
    s.sigma = sigma;
    s.grid_points = n;
    s.grid_extent = extent;
    return s;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(xs.size());
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double loglog_slope(const std::vector<double>& g, const std::vector<double>& d) {
    std::vector<double> lx, ly;
    for (size_t i = 0; i < g.size(); ++i) {
        lx.push_back(std::log(g[i]));
        ly.push_back(std::log(std::max(d[i], 1e-300)));
    }
    return fit_slope(lx, ly);
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
}

// ---------------------------------------------------------------------------
// criteria
// ---------------------------------------------------------------------------

CriterionResult a1() {
    CriterionResult r{"A1", "second-order truncation: |exact - perturbative| slope >= 2.7", false, ""};
    const Observable a = qutrit_a(), b = qutrit_b();
    const SelectionPair sel(uniform_pre(3), kPostGeneric);
    const PointerSpec spec = spec_2d(1);
    const GridWavefunction psi0 = make_lg_mode(spec);
    const std::vector<double> gs{0.1, 0.05, 0.025, 0.0125};

    std::vector<double> d_xy, d_x2;
    for (double g : gs) {
        const auto exact = evolve_exact_translation(a, b, sel, psi0, g);
        const auto pert =
            evolve_perturbative(a, b, sel, psi0, CouplingSpec::translation_xy(g));
        d_xy.push_back(std::abs(expectation(exact.wavefunction, MeterObservable::xy()) -
                                expectation(pert.wavefunction, MeterObservable::xy())));
        d_x2.push_back(std::abs(expectation(exact.wavefunction, MeterObservable::x2()) -
                                expectation(pert.wavefunction, MeterObservable::x2())));
    }
    const double s_xy = loglog_slope(gs, d_xy);
    const double s_x2 = loglog_slope(gs, d_x2);
    r.passed = s_xy >= 2.7 && s_x2 >= 2.7;
    r.detail = "slope XY = " + fmt(s_xy) + ", slope X2 = " + fmt(s_x2) +
               " (threshold 2.7)";
    return r;
}

CriterionResult a2() {
    CriterionResult r{"A2", "joint-meter l-term: exact <XY> affine in l, slope within 5%", false, ""};
    const Observable a = qutrit_a(), b = qutrit_b();
    const SelectionPair sel(uniform_pre(3), kPostLScan);
    const WeakValueSet wv = weak_value_set(a, b, sel);
    const double g = 0.05;

    auto exact_xy = [&](int l, double gv) {
        const PointerSpec spec = spec_2d(l);
        const GridWavefunction psi0 = make_lg_mode(spec);
        const auto fin = evolve_exact_translation(a, b, sel, psi0, gv);
        return expectation(fin.wavefunction, MeterObservable::xy());
    };

    const double v0 = exact_xy(0, g), v1 = exact_xy(1, g), v2 = exact_xy(2, g);
    const double slope = fit_slope({0.0, 1.0, 2.0}, {v0, v1, v2});
    const double slope_formula =
        0.5 * g * g * (std::imag(wv.a2_w) + std::imag(wv.b2_w));
    const double rel = std::abs(slope - slope_formula) / std::abs(slope_formula);
    const double second_diff = std::abs(v0 - 2.0 * v1 + v2);

    // l = 0: no imaginary higher-order contribution; residual from the
    // l-independent part must shrink at least 6x when g halves.
    const double lind = 0.5 * g * g *
                        (std::real(wv.ab_w) + std::real(std::conj(wv.a_w) * wv.b_w));
    const double res_g = std::abs(v0 - lind);
    const double res_h = std::abs(exact_xy(0, g / 2) -
                                  0.25 * lind);  // l-indep part scales as g^2
    const bool l0_ok = res_h <= res_g / 6.0 + 1e-12;

    // Open-question report: the l-term is odd in signed l.
    const double vm1 = exact_xy(-1, g);
    const double odd_defect = std::abs((v1 - v0) + (vm1 - v0));

    r.passed = rel <= 0.05 && second_diff <= 0.05 * std::abs(slope) && l0_ok;
    r.detail = "slope rel err = " + fmt(rel * 100) + "% (limit 5%), affinity defect = " +
               fmt(second_diff) + ", l=0 residual " + fmt(res_g) + " -> " + fmt(res_h) +
               " on g halving; signed-l check: slope odd in l within " + fmt(odd_defect);
    return r;
}

CriterionResult a3() {
    CriterionResult r{"A3", "Gaussian pointer accesses Re of the higher-order weak value via <X2>", false, ""};
    const Observable a = qutrit_a(), b0 = zero_obs(3);
    const PointerSpec spec = spec_1d();
    const GridWavefunction psi0 = make_lg_mode(spec);
    const double x2_init = expectation(psi0, MeterObservable::x2());

    // (i) Aw = 0, A2w = 1.2: the pure higher-order displacement.
    const SelectionPair sel_h(uniform_pre(3), kPostPureHigher);
    const WeakValueSet wv_h = weak_value_set(a, b0, sel_h);
    auto gaps = [&](double g) {
        const auto exact = evolve_exact_translation(a, b0, sel_h, psi0, g);
        const double x2 = expectation(exact.wavefunction, MeterObservable::x2());
        const double w_pert =
            evolve_perturbative(a, b0, sel_h, psi0, CouplingSpec::translation_xy(g)).w;
        return std::pair{std::abs(x2 - formula_x2(wv_h, g, x2_init, 1.0)),
                         std::abs(x2 - formula_x2(wv_h, g, x2_init, w_pert))};
    };
    const auto [g1_w1, g1_w] = gaps(0.1);
    const auto [g2_w1, g2_w] = gaps(0.05);
    const bool shrink_ok = g2_w1 <= g1_w1 / 6.0 + 1e-12;
    const double shift = std::abs(
        expectation(evolve_exact_translation(a, b0, sel_h, psi0, 0.1).wavefunction,
                    MeterObservable::x2()) -
        x2_init);
    const bool nonzero_ok = shift > 1e-5;  // g^2/2 * 1.2 = 6e-3 at g = 0.1

    // (ii) symmetry-degenerate A2w = Aw^2: the g^2 displacement vanishes.
    const SelectionPair sel_d(uniform_pre(3), kPostDegenerate);
    auto residual = [&](double g) {
        const auto exact = evolve_exact_translation(a, b0, sel_d, psi0, g);
        return std::abs(expectation(exact.wavefunction, MeterObservable::x2()) -
                        x2_init);
    };
    const double res1 = residual(0.1), res2 = residual(0.05);
    const bool degenerate_ok = res2 <= res1 / 6.0 + 1e-12;

    r.passed = shrink_ok && nonzero_ok && degenerate_ok;
    r.detail = "W=1 gap " + fmt(g1_w1) + " -> " + fmt(g2_w1) + " (x" +
               fmt(g1_w1 / std::max(g2_w1, 1e-300)) + ", need >= 6); W-divided variant " +
               fmt(g1_w) + " -> " + fmt(g2_w) + " (x" +
               fmt(g1_w / std::max(g2_w, 1e-300)) +
               ", tracks worse - reported); degenerate residual " + fmt(res1) +
               " -> " + fmt(res2);
    return r;
}

CriterionResult a4() {
    CriterionResult r{"A4", "exact evolvers match the dense matrix-exponential oracle to 1e-8", false, ""};
    // L = 10 keeps the Gaussian boundary tail (~e^{-L^2/4}) below the
    // 1e-8 budget; the factored displacement assumes [X,P] = i, which the
    // discrete pair only honors away from the wrap point.
    PointerSpec spec = spec_1d(1.0, 64, 10.0);
    const GridWavefunction psi0 = make_lg_mode(spec);
    const double g = 0.2;

    auto norm_diff = [&](const PostSelectedPointer& u, const PostSelectedPointer& v) {
        Vector d = u.wavefunction.amplitudes - v.wavefunction.amplitudes;
        return std::sqrt(d.squaredNorm() * spec.spacing());
    };

    double worst = 0.0;
    // d = 2
    {
        Matrix m = Matrix::Zero(2, 2);
        m(0, 0) = 1.0;
        m(1, 1) = -1.0;
        const Observable a2(m);
        const Observable b0 = zero_obs(2);
        Vector post(2);
        post << Complex(0.8, 0.0), Complex(0.6) * std::polar(1.0, 0.7);
        const SelectionPair sel(uniform_pre(2), post);

        const auto tr = evolve_exact_translation(a2, b0, sel, psi0, g);
        const auto tr_bf = brute_force_evolve(a2, b0, sel, psi0,
                                              CouplingSpec::translation_xy(g));
        worst = std::max(worst, norm_diff(tr, tr_bf));

        const auto ds = evolve_exact_displacement(a2, a2, sel, psi0, g, g);
        const auto ds_bf =
            brute_force_evolve(a2, a2, sel, psi0, CouplingSpec::phase_space_1d(g, g));
        worst = std::max(worst, norm_diff(ds, ds_bf));
    }
    // d = 3
    {
        const Observable a = qutrit_a(), b = qutrit_b(), b0 = zero_obs(3);
        const SelectionPair sel(uniform_pre(3), kPostGeneric);

        const auto tr = evolve_exact_translation(a, b0, sel, psi0, g);
        const auto tr_bf =
            brute_force_evolve(a, b0, sel, psi0, CouplingSpec::translation_xy(g));
        worst = std::max(worst, norm_diff(tr, tr_bf));

        const auto ds = evolve_exact_displacement(a, b, sel, psi0, g, g);
        const auto ds_bf =
            brute_force_evolve(a, b, sel, psi0, CouplingSpec::phase_space_1d(g, g));
        worst = std::max(worst, norm_diff(ds, ds_bf));
    }
    r.passed = worst <= 1e-8;
    r.detail = "worst state-norm difference = " + fmt(worst) + " (limit 1e-8)";
    return r;
}

CriterionResult a5() {
    CriterionResult r{"A5", "SymXPx probe: Im[A2w] sensitivity scales as g^2; all-real fixtures stay O(g^3)", false, ""};
    const Observable a = qutrit_a();
    const PointerSpec spec = spec_1d(1.0, 256, 12.0);
    const SelectionPair s_real2(uniform_pre(3), kPostProbeReal2);
    const SelectionPair s_imag(uniform_pre(3), kPostProbeImag);
    const SelectionPair s_allreal(uniform_pre(3), kPostProbeAllReal);

    const std::vector<double> gs{0.2, 0.1, 0.05, 0.025};
    std::vector<double> diffs, reals;
    for (double g : gs) {
        const double va = imaginary_part_probe(a, s_real2, spec, g, g);
        const double vb = imaginary_part_probe(a, s_imag, spec, g, g);
        diffs.push_back(std::abs(va - vb));
        reals.push_back(std::abs(imaginary_part_probe(a, s_allreal, spec, g, g)));
    }
    const double slope = loglog_slope(gs, diffs);
    bool real_ok = true;
    for (size_t i = 0; i + 1 < reals.size(); ++i)
        real_ok = real_ok && reals[i + 1] <= reals[i] / 6.0 + 1e-12;

    r.passed = std::abs(slope - 2.0) <= 0.2 && real_ok;
    r.detail = "pair-difference slope = " + fmt(slope) +
               " (2 +- 0.2); all-real readings " + fmt(reals[0]) + " -> " +
               fmt(reals[3]) + " over g halvings";
    return r;
}

CriterionResult a6() {
    CriterionResult r{"A6", "pointer-grid fidelity across l and sigma", false, ""};
    double worst_norm = 0.0, worst_x2 = 0.0, worst_xy = 0.0, worst_refine = 0.0;
    for (int l : {0, 1, 2, 3}) {
        for (double sigma : {0.5, 1.0, 2.0}) {
            const double extent = 8.0 * sigma * std::sqrt(double(l) + 1.0);
            const PointerSpec coarse = spec_2d(l, sigma, 256, extent);
            const PointerSpec fine = spec_2d(l, sigma, 512, extent);
            const GridWavefunction psi = make_lg_mode(coarse);
            const GridWavefunction psi2 = make_lg_mode(fine);

            worst_norm = std::max(worst_norm, std::abs(psi.norm2() - 1.0));
            const double x2 = expectation(psi, MeterObservable::x2());
            const double xy = expectation(psi, MeterObservable::xy());
            worst_x2 = std::max(worst_x2,
                                std::abs(x2 - (double(l) + 1.0) * sigma * sigma));
            worst_xy = std::max(worst_xy, std::abs(xy));
            worst_refine = std::max(
                {worst_refine,
                 std::abs(x2 - expectation(psi2, MeterObservable::x2())),
                 std::abs(xy - expectation(psi2, MeterObservable::xy()))});
        }
    }
    r.passed = worst_norm <= 1e-8 && worst_x2 <= 1e-6 && worst_xy <= 1e-8 &&
               worst_refine < 1e-6;
    r.detail = "worst |norm-1| = " + fmt(worst_norm) + ", |<X2>-(|l|+1)s^2| = " +
               fmt(worst_x2) + ", |<XY>| = " + fmt(worst_xy) +
               ", refinement move = " + fmt(worst_refine);
    return r;
}

CriterionResult a7() {
    CriterionResult r{"A7", "probability bookkeeping over a complete post-selection basis", false, ""};
    const Observable a = qutrit_a(), b = qutrit_b();
    const PointerSpec spec = spec_2d(1);
    const GridWavefunction psi0 = make_lg_mode(spec);
    const Vector pre = uniform_pre(3);
    const double g = 0.3;

    double total = 0.0;
    for (int f = 0; f < 3; ++f) {
        Vector post = Vector::Zero(3);
        post[f] = 1.0;
        const SelectionPair sel(pre, post);
        const auto fin = evolve_exact_translation(a, b, sel, psi0, g);
        total += fin.w * std::norm(fin.overlap);
    }
    r.passed = std::abs(total - 1.0) <= 1e-8;
    r.detail = "sum_f W_f |<f|i>|^2 = 1 + (" + fmt(total - 1.0) + ") (limit 1e-8)";
    return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& filter) {
    const std::pair<const char*, CriterionResult (*)()> criteria[] = {
        {"A1", a1}, {"A2", a2}, {"A3", a3}, {"A4", a4},
        {"A5", a5}, {"A6", a6}, {"A7", a7}};
    std::vector<CriterionResult> out;
    for (const auto& [id, fn] : criteria)
        if (filter.empty() || std::string(id).rfind(filter, 0) == 0)
            out.push_back(fn());
    return out;
}

}  // namespace wmsim
