#pragma once

// Finite-dimensional operator algebra: Hermitian observables, commuting-pair
// joint diagonalization, and weak values <f|O|i>/<f|i>.

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "wmsim/errors.hpp"

namespace wmsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kCommutatorTol = 1e-10;
inline constexpr double kEigenpairTol = 1e-9;
inline constexpr double kDefaultOverlapEps = 1e-10;
inline constexpr std::uint64_t kSpectrumSeed = 0x77EA5EEDULL;

/// Hermitian observable of the measured system (dimensionless eigenvalues).
/// Construction enforces hermiticity to 1e-12 (max-entry) and dim >= 2.
class Observable {
public:
    explicit Observable(Matrix m);

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }

    /// Max-entry norm of the hermiticity defect ||M - M^dagger||_inf.
    static double hermiticity_defect(const Matrix& m);

private:
    Matrix m_;
};

/// Pre-selected state |i> and post-selected state |f>, both unit norm.
struct SelectionPair {
    Vector pre;
    Vector post;

    SelectionPair(Vector pre_, Vector post_);

    int dim() const { return static_cast<int>(pre.size()); }
    Complex overlap() const { return post.dot(pre); }  // <f|i>
};

/// The five weak values entering the second-order readout operator.
struct WeakValueSet {
    Complex a_w;
    Complex b_w;
    Complex a2_w;
    Complex b2_w;
    Complex ab_w;
    Complex overlap;  // <f|i>
};

/// Orthonormal basis simultaneously diagonalizing a commuting pair.
struct JointSpectrum {
    Eigen::VectorXd eigen_a;  // a_k
    Eigen::VectorXd eigen_b;  // b_k
    Matrix vectors;           // columns |k>
    int dim() const { return static_cast<int>(eigen_a.size()); }
};

/// Max-entry norm of the commutator [A,B]; throws NotCommuting above 1e-10.
void assert_commuting(const Observable& a, const Observable& b);

/// Simultaneous eigenbasis of a commuting pair via a randomized combination
/// A + gamma*B, gamma in [0.5, 1.5]; retries with fresh gamma (<= 5 times)
/// until eigenpair residuals are below 1e-9.
JointSpectrum joint_eigendecomposition(const Observable& a, const Observable& b,
                                       std::uint64_t seed = kSpectrumSeed);

/// <f|O|i>/<f|i>; throws NearOrthogonalSelection when |<f|i>| <= eps.
Complex weak_value(const Observable& o, const SelectionPair& sel,
                   double eps_overlap = kDefaultOverlapEps);

/// All five weak values computed from the same overlap; ab uses the matrix
/// product A*B. Requires [A,B] = 0.
WeakValueSet weak_value_set(const Observable& a, const Observable& b,
                            const SelectionPair& sel,
                            double eps_overlap = kDefaultOverlapEps);

}  // namespace wmsim
