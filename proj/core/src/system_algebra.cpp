#include "wmsim/system_algebra.hpp"

#include <random>

namespace wmsim {

double Observable::hermiticity_defect(const Matrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Observable::Observable(Matrix m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() < 2)
        throw Error("observable must be square with dim >= 2");
    const double defect = hermiticity_defect(m_);
    if (defect > kHermitianTol)
        throw Error("observable not Hermitian (max-entry defect " +
                    std::to_string(defect) + ")");
}

SelectionPair::SelectionPair(Vector pre_, Vector post_)
    : pre(std::move(pre_)), post(std::move(post_)) {
    if (pre.size() != post.size() || pre.size() < 2)
        throw Error("selection vectors must have equal length >= 2");
    if (std::abs(pre.norm() - 1.0) > kHermitianTol ||
        std::abs(post.norm() - 1.0) > kHermitianTol)
        throw Error("selection states must be unit norm within 1e-12");
}

void assert_commuting(const Observable& a, const Observable& b) {
    if (a.dim() != b.dim())
        throw IncompatibleDims("observables have different dimensions");
    const Matrix comm = a.matrix() * b.matrix() - b.matrix() * a.matrix();
    const double residual = comm.cwiseAbs().maxCoeff();
    if (residual > kCommutatorTol) throw NotCommuting(residual);
}

namespace {

// Worst max-entry residual over both eigenpair sets.
double eigenpair_residual(const Matrix& m, const Eigen::VectorXd& vals,
                          const Matrix& vecs) {
    double worst = 0.0;
    for (int k = 0; k < vals.size(); ++k) {
        const Vector r = m * vecs.col(k) - vals[k] * vecs.col(k);
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace

JointSpectrum joint_eigendecomposition(const Observable& a, const Observable& b,
                                       std::uint64_t seed) {
    assert_commuting(a, b);
    const int d = a.dim();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> gamma_dist(0.5, 1.5);

    double worst = 0.0;
    for (int attempt = 0; attempt < 5; ++attempt) {
        const double gamma = gamma_dist(rng);
        const Matrix mix = a.matrix() + gamma * b.matrix();
        Eigen::SelfAdjointEigenSolver<Matrix> solver(mix);
        if (solver.info() != Eigen::Success) continue;
        const Matrix vecs = solver.eigenvectors();

        JointSpectrum js;
        js.vectors = vecs;
        js.eigen_a.resize(d);
        js.eigen_b.resize(d);
        for (int k = 0; k < d; ++k) {
            js.eigen_a[k] = std::real(Complex(vecs.col(k).dot(a.matrix() * vecs.col(k))));
            js.eigen_b[k] = std::real(Complex(vecs.col(k).dot(b.matrix() * vecs.col(k))));
        }
        const double res = std::max(eigenpair_residual(a.matrix(), js.eigen_a, vecs),
                                    eigenpair_residual(b.matrix(), js.eigen_b, vecs));
        if (res <= kEigenpairTol) return js;
        worst = std::max(worst, res);
    }
    throw DegeneracyResolutionFailed(worst);
}

Complex weak_value(const Observable& o, const SelectionPair& sel,
                   double eps_overlap) {
    if (o.dim() != sel.dim())
        throw IncompatibleDims("observable and selection dims differ");
    const Complex ov = sel.overlap();
    if (std::abs(ov) <= eps_overlap) throw NearOrthogonalSelection(std::abs(ov));
    return sel.post.dot(o.matrix() * sel.pre) / ov;
}

WeakValueSet weak_value_set(const Observable& a, const Observable& b,
                            const SelectionPair& sel, double eps_overlap) {
    assert_commuting(a, b);
    if (a.dim() != sel.dim())
        throw IncompatibleDims("observables and selection dims differ");
    const Complex ov = sel.overlap();
    if (std::abs(ov) <= eps_overlap) throw NearOrthogonalSelection(std::abs(ov));

    const Matrix& ma = a.matrix();
    const Matrix& mb = b.matrix();
    auto wv = [&](const Matrix& m) { return Complex(sel.post.dot(m * sel.pre)) / ov; };

    WeakValueSet out;
    out.a_w = wv(ma);
    out.b_w = wv(mb);
    out.a2_w = wv(Matrix(ma * ma));
    out.b2_w = wv(Matrix(mb * mb));
    out.ab_w = wv(Matrix(ma * mb));
    out.overlap = ov;
    return out;
}

}  // namespace wmsim
