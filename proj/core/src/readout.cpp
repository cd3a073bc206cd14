#include "wmsim/readout.hpp"

namespace wmsim {

const char* method_name(Method m) {
    switch (m) {
        case Method::ClosedForm: return "closed_form";
        case Method::Perturbative: return "perturbative";
        case Method::Exact: return "exact";
        case Method::BruteForce: return "brute_force";
    }
    return "?";
}

double formula_xy(const WeakValueSet& wv, int l, double g, double xy_initial) {
    const double re_part =
        std::real(wv.ab_w) + std::real(std::conj(wv.a_w) * wv.b_w);
    const double im_part = double(l) * (std::imag(wv.a2_w) + std::imag(wv.b2_w));
    return xy_initial + 0.5 * g * g * (re_part + im_part);
}

double formula_x2(const WeakValueSet& wv, double g, double x2_initial, double w) {
    if (w <= 0.0) throw NonpositiveW(w);
    const double bracket =
        x2_initial + 0.5 * g * g *
                         (std::norm(wv.b_w) - std::norm(wv.a_w) +
                          std::real(wv.a2_w) - std::real(wv.b2_w));
    return bracket / w;
}

namespace {

PostSelectedPointer evolve_by(Method method, const Observable& a,
                              const Observable& b, const SelectionPair& sel,
                              const GridWavefunction& psi0,
                              const CouplingSpec& coupling, std::uint64_t seed) {
    switch (method) {
        case Method::Perturbative:
            return evolve_perturbative(a, b, sel, psi0, coupling);
        case Method::BruteForce:
            return brute_force_evolve(a, b, sel, psi0, coupling, seed);
        case Method::Exact:
            if (coupling.kind == CouplingSpec::Kind::TranslationXY)
                return evolve_exact_translation(a, b, sel, psi0, coupling.g, seed);
            return evolve_exact_displacement(a, b, sel, psi0, coupling.g_a,
                                             coupling.g_b, seed);
        case Method::ClosedForm:
            break;
    }
    throw Error("closed form does not evolve a state");
}

}  // namespace

MeterReading readout(const Observable& a, const Observable& b,
                     const SelectionPair& sel, const PointerSpec& spec,
                     const CouplingSpec& coupling, const ReadoutRequest& req,
                     std::uint64_t seed) {
    spec.validate();
    MeterReading out;
    out.method = req.method;
    out.meta.l = spec.l;
    out.meta.sigma = spec.sigma;
    if (coupling.kind == CouplingSpec::Kind::TranslationXY)
        out.meta.g = coupling.g;
    else {
        out.meta.g_a = coupling.g_a;
        out.meta.g_b = coupling.g_b;
    }

    const GridWavefunction psi0 = make_lg_mode(spec);

    if (req.method == Method::ClosedForm) {
        using K = MeterObservable::Kind;
        if (req.meter.kind != K::XY && req.meter.kind != K::X2)
            throw UnsupportedCombination(
                std::string("closed form is printed only for XY and X2, not ") +
                req.meter.name());
        if (coupling.kind != CouplingSpec::Kind::TranslationXY)
            throw UnsupportedCombination(
                "closed forms apply to the translation coupling");
        const WeakValueSet wv = weak_value_set(a, b, sel);
        const double g = coupling.g;
        // Initial moment measured on the same discrete footing as the
        // numeric methods, never hardcoded.
        const double initial = expectation(psi0, req.meter);
        double w_eff = 1.0;
        if (req.normalize_closed_form)
            w_eff = evolve_perturbative(a, b, sel, psi0, coupling).w;
        out.w = w_eff;
        out.value = req.meter.kind == K::XY
                        ? formula_xy(wv, spec.l, g, initial) / w_eff
                        : formula_x2(wv, g, initial, w_eff);
        return out;
    }

    const PostSelectedPointer evolved =
        evolve_by(req.method, a, b, sel, psi0, coupling, seed);
    out.w = evolved.w;
    out.value = expectation(evolved.wavefunction, req.meter);
    return out;
}

double imaginary_part_probe(const Observable& a, const SelectionPair& sel,
                            const PointerSpec& spec, double g_a, double g_b) {
    return imaginary_part_probe(a, a, sel, spec, g_a, g_b);
}

double imaginary_part_probe(const Observable& a, const Observable& b,
                            const SelectionPair& sel, const PointerSpec& spec,
                            double g_a, double g_b) {
    spec.validate();
    if (spec.dims != 1 || spec.l != 0)
        throw IncompatibleDims("the probe uses a 1D Gaussian pointer");
    const GridWavefunction psi0 = make_lg_mode(spec);
    const PostSelectedPointer fin =
        evolve_exact_displacement(a, b, sel, psi0, g_a, g_b);
    // <SymXPx>_i = 0 for the real Gaussian mode; report the displacement.
    return expectation(fin.wavefunction, MeterObservable::sym_x_px());
}

}  // namespace wmsim
