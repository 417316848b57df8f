#pragma once

// 50-digit reference arithmetic used as an independent oracle in tests.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <array>
#include <complex>

#include "tripartite/params.hpp"

namespace precise {

using real = boost::multiprecision::cpp_bin_float_50;
using cplx = boost::multiprecision::cpp_complex_50;

inline real pi() { return boost::math::constants::pi<real>(); }
inline real planck() { return real("6.62607015e-34"); }
inline real hbar() { return planck() / (2 * pi()); }
inline real charge() { return real("1.602176634e-19"); }

inline real angular_from_mhz(const real &f) { return 2 * pi() * f / 1000; }

struct Reduced
{
    real omega_c, omega_m, coupling;
};

inline Reduced reduce(const real &wc, const real &wm, const real &wq, const real &gc, const real &gm)
{
    const real dc = wq - wc;
    const real dm = wq - wm;
    return {wc - gc * gc / dc, wm - gm * gm / dm, -(gc * gm / 2) * (1 / dc + 1 / dm)};
}

inline Reduced reduce(const tripartite::SystemConfig &cfg)
{
    return reduce(real(cfg.omega_c), real(cfg.omega_m), real(cfg.omega_q), real(cfg.g_c), real(cfg.g_m));
}

inline cplx diag(const real &omega, const real &center, const real &decay)
{
    return cplx(decay / 2, -(omega - center));
}

// kappa * (M^-1)_00 - 1 for the 2x2 matrix [[A_c, i g], [i g, A_m]].
inline cplx reflection_two_mode(const real &omega, const Reduced &em, const real &kappa, const real &gamma)
{
    const cplx a = diag(omega, em.omega_c, kappa);
    const cplx d = diag(omega, em.omega_m, gamma);
    const cplx b(0, em.coupling);
    const cplx det = a * d - b * b;
    return kappa * d / det - cplx(1);
}

// Same construction for the cavity, NAMR and qubit with couplings scaled by
// sqrt(-sigma_z).
inline cplx reflection_three_mode(const real &omega, const tripartite::SystemConfig &cfg)
{
    using boost::multiprecision::sqrt;
    const real scale = sqrt(-real(cfg.sigma_z));
    std::array<std::array<cplx, 3>, 3> m{};
    m[0][0] = diag(omega, cfg.omega_c, cfg.kappa);
    m[1][1] = diag(omega, cfg.omega_m, cfg.gamma);
    m[2][2] = diag(omega, cfg.omega_q, cfg.gamma_q);
    m[0][2] = m[2][0] = cplx(0, real(cfg.g_c) * scale);
    m[1][2] = m[2][1] = cplx(0, real(cfg.g_m) * scale);
    const cplx cof00 = m[1][1] * m[2][2] - m[1][2] * m[2][1];
    const cplx det = m[0][0] * cof00 - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    return real(cfg.kappa) * cof00 / det - cplx(1);
}

inline std::complex<double> to_double(const cplx &z)
{
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

inline double relative_error(std::complex<double> value, const cplx &reference)
{
    using boost::multiprecision::abs;
    const cplx diff = cplx(value.real(), value.imag()) - reference;
    return static_cast<double>(abs(diff) / abs(reference));
}

} // namespace precise
