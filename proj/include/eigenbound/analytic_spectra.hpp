#pragma once

#include <vector>

#include "eigenbound/types.hpp"

namespace eigenbound::spectra {

// Dimension of the degree-l spherical harmonics on S^{n-1}:
// C(n+l-1, l) - C(n+l-3, l-2), with the second term 0 for l < 2.
long long harmonic_multiplicity(int n, int l);

// Dirichlet Laplacian on a rectangular box: pi^2 sum_j (p_j / L_j)^2 over
// positive integer lattice points, enumerated under a doubling value cap so
// no low mode is missed regardless of aspect ratio.
Spectrum box_dirichlet_spectrum(const std::vector<double>& lengths, int count);

// Dirichlet Laplacian on the Euclidean n-ball: lambda = (j_{nu,k}/R)^2 with
// nu = l + n/2 - 1 and spherical-harmonic multiplicities.
Spectrum ball_dirichlet_spectrum(int n, double radius, int count);

// Clamped plate on the Euclidean n-ball: Gamma = (y/R)^4 where y runs over
// the positive roots of J_nu(y) I_nu'(y) - I_nu(y) J_nu'(y) per angular
// index, evaluated with the exponentially scaled I to avoid overflow.
Spectrum ball_plate_spectrum(int n, double radius, int count);

// Dirichlet Laplacian on a geodesic cap of S^n(R): per angular index the
// radial problem u'' + (n-1) cot(t) u' + (mu - l(l+n-2)/sin^2 t) u = 0 on
// (0, theta0), u(theta0) = 0, regular at 0, solved by shooting with node
// counting; lambda = mu / R^2.
Spectrum cap_dirichlet_spectrum(int n, double sphere_radius, double cap_angle, int count);

}  // namespace eigenbound::spectra
