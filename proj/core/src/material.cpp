#include "viscobeam/material.hpp"

#include <cmath>
#include <stdexcept>

namespace viscobeam {

PronyMaterial::PronyMaterial(double k1, double k2, double eta, double nu) {
    if (!(k1 > 0.0) || !(k2 > 0.0) || !(eta > 0.0))
        throw std::invalid_argument("PronyMaterial: k1, k2, eta must be positive");
    if (nu < 0.0 || nu >= 0.5)
        throw std::invalid_argument("PronyMaterial: Poisson ratio outside [0, 0.5)");
    k1_ = k1;
    k2_ = k2;
    eta_ = eta;
    nu_ = nu;
    e_inf_ = k1 * k2 / (k1 + k2);
    terms_.push_back({k1 - e_inf_, eta / (k1 + k2)});
}

PronyMaterial PronyMaterial::elastic(double k1, double nu) {
    if (!(k1 > 0.0))
        throw std::invalid_argument("PronyMaterial: k1 must be positive");
    if (nu < 0.0 || nu >= 0.5)
        throw std::invalid_argument("PronyMaterial: Poisson ratio outside [0, 0.5)");
    PronyMaterial m;
    m.k1_ = k1;
    m.nu_ = nu;
    m.e_inf_ = k1;
    return m;
}

double PronyMaterial::tau() const {
    if (terms_.empty())
        throw std::invalid_argument("PronyMaterial: elastic material has no relaxation time");
    return terms_.front().tau;
}

double PronyMaterial::relaxation_modulus(double t) const {
    if (t < 0.0) throw std::invalid_argument("relaxation_modulus: negative time");
    double e = e_inf_;
    for (const Term& term : terms_)
        e += term.coeff * std::exp(-t / term.tau);
    return e;
}

double PronyMaterial::shear_modulus(double t) const {
    return relaxation_modulus(t) / (2.0 * (1.0 + nu_));
}

double PronyMaterial::kernel(double t, double s) const {
    if (s < 0.0 || s > t)
        throw std::invalid_argument("kernel: needs 0 <= s <= t");
    double k = 0.0;
    for (const Term& term : terms_)
        k -= term.coeff / term.tau * std::exp(-(t - s) / term.tau);
    return k / e0();
}

double PronyMaterial::kernel_bound() const {
    double b = 0.0;
    for (const Term& term : terms_)
        b += term.coeff / term.tau;
    return b / e0();
}

} // namespace viscobeam
