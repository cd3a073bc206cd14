#include <benchmark/benchmark.h>

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

SelectionPair qutrit_selection() {
    Vector pre = Vector::Constant(3, Complex(1.0 / std::sqrt(3.0), 0.0));
    Vector post(3);
    post << Complex(0.63688838985650631, 0.0),
        Complex(0.4503480993265172, 0.45034809932651715),
        Complex(-0.42183227783991617, 0.10394174861123653);
    return SelectionPair(pre, post);
}

GridWavefunction mode2d(int n) {
    PointerSpec s;
    s.dims = 2;
    s.l = 1;
    s.sigma = 1.0;
    s.grid_points = n;
    s.grid_extent = 14.0;
    return make_lg_mode(s);
}

GridWavefunction mode1d(int n) {
    PointerSpec s;
    s.dims = 1;
    s.sigma = 1.0;
    s.grid_points = n;
    s.grid_extent = 12.0;
    return make_lg_mode(s);
}

}  // namespace

static void BM_ExactTranslation2D(benchmark::State& state) {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel = qutrit_selection();
    const GridWavefunction psi0 = mode2d(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_exact_translation(a, b, sel, psi0, 0.1));
}
BENCHMARK(BM_ExactTranslation2D)->Arg(128)->Arg(256);

static void BM_Perturbative2D(benchmark::State& state) {
    const Observable a = diag3(0, 1, 2), b = diag3(0, 2, 1);
    const SelectionPair sel = qutrit_selection();
    const GridWavefunction psi0 = mode2d(int(state.range(0)));
    const CouplingSpec c = CouplingSpec::translation_xy(0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_perturbative(a, b, sel, psi0, c));
}
BENCHMARK(BM_Perturbative2D)->Arg(128)->Arg(256);

static void BM_ExactDisplacement1D(benchmark::State& state) {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel = qutrit_selection();
    const GridWavefunction psi0 = mode1d(int(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(evolve_exact_displacement(a, a, sel, psi0, 0.1, 0.1));
}
BENCHMARK(BM_ExactDisplacement1D)->Arg(256)->Arg(1024);

static void BM_BruteForceOracle(benchmark::State& state) {
    const Observable a = diag3(0, 1, 2);
    const SelectionPair sel = qutrit_selection();
    const GridWavefunction psi0 = mode1d(int(state.range(0)));
    const CouplingSpec c = CouplingSpec::phase_space_1d(0.1, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(brute_force_evolve(a, a, sel, psi0, c));
}
BENCHMARK(BM_BruteForceOracle)->Arg(64)->Arg(128)->Arg(256);

static void BM_JointEigendecomposition(benchmark::State& state) {
    const int d = int(state.range(0));
    Matrix raw = Matrix::Random(d, d);
    Eigen::HouseholderQR<Matrix> qr(raw);
    Matrix q = qr.householderQ();
    Eigen::VectorXd da = Eigen::VectorXd::LinSpaced(d, 0.0, 1.0);
    Eigen::VectorXd db = Eigen::VectorXd::LinSpaced(d, 1.0, -1.0);
    Matrix ma = q * da.asDiagonal() * q.adjoint();
    Matrix mb = q * db.asDiagonal() * q.adjoint();
    const Observable a(0.5 * (ma + Matrix(ma.adjoint())));
    const Observable b(0.5 * (mb + Matrix(mb.adjoint())));
    for (auto _ : state) benchmark::DoNotOptimize(joint_eigendecomposition(a, b));
}
BENCHMARK(BM_JointEigendecomposition)->Arg(4)->Arg(8)->Arg(16);

BENCHMARK_MAIN();
