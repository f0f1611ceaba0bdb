#pragma once

#include <vector>

namespace viscobeam {

/// Standard Linear Solid relaxation law
///   E(t) = E_inf + sum_i c_i exp(-t / tau_i),
/// one term when built from spring constants (k1, k2) and viscosity eta:
///   E_inf = k1 k2 / (k1 + k2),  c = k1 - E_inf,  tau = eta / (k1 + k2).
/// The memory kernel it induces is Edot(t - s) / E(0) on 0 <= s <= t.
class PronyMaterial {
public:
    struct Term {
        double coeff; // relaxation amplitude, N/m^2
        double tau;   // relaxation time, s
    };

    PronyMaterial(double k1, double k2, double eta, double nu);

    /// Purely elastic material: E identically E(0), kernel identically zero.
    static PronyMaterial elastic(double k1, double nu);

    double k1() const { return k1_; }
    double k2() const { return k2_; }
    double eta() const { return eta_; }
    double nu() const { return nu_; }
    double e0() const { return k1_; }
    double e_inf() const { return e_inf_; }
    double tau() const;
    bool is_elastic() const { return terms_.empty(); }
    const std::vector<Term>& terms() const { return terms_; }

    /// E(t), nonincreasing, bounded below by E_inf. t must be nonnegative.
    double relaxation_modulus(double t) const;

    /// G(t) = E(t) / (2 (1 + nu)).
    double shear_modulus(double t) const;

    /// Edot(t - s) / E(0); requires 0 <= s <= t. Zero for elastic materials.
    double kernel(double t, double s) const;

    /// Uniform bound on |kernel| over 0 <= s <= t (attained at s = t).
    double kernel_bound() const;

private:
    PronyMaterial() = default;

    double k1_ = 0, k2_ = 0, eta_ = 0, nu_ = 0;
    double e_inf_ = 0;
    std::vector<Term> terms_;
};

} // namespace viscobeam
