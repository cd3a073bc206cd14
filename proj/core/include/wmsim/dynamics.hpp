#pragma once

// System-pointer coupling and post-selection in the impulsive limit: exact
// evolution via joint spectral decomposition (translation and phase-space
// displacement couplings), second-order perturbative evolution, and a dense
// matrix-exponential oracle on the product space.

#include "wmsim/pointer_grid.hpp"
#include "wmsim/system_algebra.hpp"

namespace wmsim {

/// Integrated coupling strengths; only the time integral of g(t) matters.
struct CouplingSpec {
    enum class Kind { TranslationXY, PhaseSpace1D };

    Kind kind = Kind::TranslationXY;
    double g = 0.0;              // TranslationXY: exp(-i g (A Px + B Py))
    double g_a = 0.0, g_b = 0.0; // PhaseSpace1D:  exp(-i (g_a A P + g_b B X))

    static CouplingSpec translation_xy(double g_) {
        CouplingSpec c;
        c.kind = Kind::TranslationXY;
        c.g = g_;
        return c;
    }
    static CouplingSpec phase_space_1d(double ga, double gb) {
        CouplingSpec c;
        c.kind = Kind::PhaseSpace1D;
        c.g_a = ga;
        c.g_b = gb;
        return c;
    }
};

/// Conditional (unnormalized) pointer state after post-selection.
struct PostSelectedPointer {
    GridWavefunction wavefunction;  // <f| U |i> psi0, not renormalized
    Complex overlap;                // <f|i>
    double w;                       // <psi_f|psi_f> / |<f|i>|^2

    double squared_norm() const { return w * std::norm(overlap); }
};

/// phi = sum_k <f|k><k|i> psi0(x - g a_k, y - g b_k), shifts as Fourier
/// phase ramps. Accepts a 1D pointer only when B is identically zero.
PostSelectedPointer evolve_exact_translation(const Observable& a,
                                             const Observable& b,
                                             const SelectionPair& sel,
                                             const GridWavefunction& psi0,
                                             double g,
                                             std::uint64_t seed = kSpectrumSeed);

/// Branch-wise exact unitary exp(-i(alpha_k P + beta_k X)) with
/// alpha_k = g_a a_k, beta_k = g_b b_k, factored as
/// exp(-i alpha beta / 2) * translate(e^{-i beta x} psi, alpha)
/// (phase sign frozen against the dense matrix-exponential oracle).
PostSelectedPointer evolve_exact_displacement(const Observable& a,
                                              const Observable& b,
                                              const SelectionPair& sel,
                                              const GridWavefunction& psi0,
                                              double g_a, double g_b,
                                              std::uint64_t seed = kSpectrumSeed);

/// <f|i> * Z psi0 with Z the second-order expansion of the coupling
/// unitary, built term-by-term from the spectral pointer primitives.
PostSelectedPointer evolve_perturbative(const Observable& a, const Observable& b,
                                        const SelectionPair& sel,
                                        const GridWavefunction& psi0,
                                        const CouplingSpec& coupling);

/// Dense product-space oracle (1D, dim*grid_points <= 1024): exponentiates
/// -i H on system x grid via Hermitian eigendecomposition and projects on
/// <f|. Validates both exact evolvers and the perturbative expansion.
PostSelectedPointer brute_force_evolve(const Observable& a, const Observable& b,
                                       const SelectionPair& sel,
                                       const GridWavefunction& psi0,
                                       const CouplingSpec& coupling,
                                       std::uint64_t seed = kSpectrumSeed);

}  // namespace wmsim
