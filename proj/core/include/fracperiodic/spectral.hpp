#pragma once

#include "fracperiodic/double_well.hpp"
#include "fracperiodic/frac_order.hpp"
#include "fracperiodic/periodic_function.hpp"

namespace fracperiodic {

/// (-d_xx)^s u: mode m is multiplied by (2 pi m / T)^{2s}, the mean is removed.
PeriodicFunction frac_laplacian(const PeriodicFunction& u, const FracOrder& s);

/// <u, (-d_xx)^s u> over one full period, from the coefficients.
double spectral_energy(const PeriodicFunction& u, const FracOrder& s);

/// Pointwise (-d_xx)^s u(x) from the singular integral
///   C_sing * int_0^inf (2u(x) - u(x+z) - u(x-z)) z^{-1-2s} dz,
/// with the periodic images of the kernel summed in closed form. The rule is
/// refined until two successive levels agree to `quad_tol` (absolute, or
/// relative once the value exceeds 1).
double singular_integral_oracle(const PeriodicFunction& u, const FracOrder& s, double x,
                                double quad_tol = 1e-10);

/// (C_sing/2) int_{-T/2}^{T/2} int_R |u(x)-u(xb)|^2 / |x-xb|^{1+2s} dxb dx by
/// quadrature; equals spectral_energy(u, s).
double gagliardo_energy(const PeriodicFunction& u, const FracOrder& s, double quad_tol = 1e-10);

/// int_0^T F(u(x)) dx, exact for polynomial F on a sufficiently fine grid.
double potential_integral(const PeriodicFunction& u, const DoubleWell& F);

/// int_0^{T/2} F(u(x)) dx, exact for polynomial F.
double half_period_potential(const PeriodicFunction& u, const DoubleWell& F);

struct EnergyParts {
  double kinetic;
  double potential;
  double total() const noexcept { return kinetic + potential; }
};

/// J(u) = (1/2) int_{half period} int_0^inf y^a |grad Ext(u)|^2 dy dx + int_0^{T/2} F(u)
///      = <u, (-d_xx)^s u> / (4 d_s) + int_0^{T/2} F(u),
/// the half-period energy of the extension. J(0) = F(0) T / 2.
EnergyParts energy_parts(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F);
double energy_functional(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F);

/// E(u) = <u, (-d_xx)^s u> / 4 + (1/2) int_0^T F(u): half of the full-period
/// energy whose critical points solve (-d_xx)^s u + F'(u) = 0. Equal to J at
/// s = 1/2; the semilinear solver descends on E.
EnergyParts variational_energy_parts(const PeriodicFunction& u, const FracOrder& s,
                                     const DoubleWell& F);
double variational_energy(const PeriodicFunction& u, const FracOrder& s, const DoubleWell& F);

/// (-d_xx)^s u + F'(u) projected onto the truncation of u.
PeriodicFunction semilinear_residual(const PeriodicFunction& u, const FracOrder& s,
                                     const DoubleWell& F);

}  // namespace fracperiodic
