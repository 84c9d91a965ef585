#pragma once

#include "entsim/core.hpp"

namespace entsim {

/// Which measurement arm a local operation acts on. Arm A is the first
/// tensor factor, arm B the second.
enum class Arm { A, B };

/// Nonnegative weights of the three E-ring sectors feeding the mixture:
/// a pure-singlet sector, a decohered HV/VH sector and a decohered
/// HH/VV sector. Must sum to 1 within 1e-9.
struct SectorWeights {
    double singlet_frac;
    double mixed_hv_frac;
    double mixed_hhvv_frac;

    void validate() const;
};

/// (|HH> + e^{i phi} |VV>) / sqrt(2).
PureState bell_phi(double phi);

/// The singlet (|HV> - |VH>) / sqrt(2).
const PureState& singlet();
const DensityMatrix& singlet_density();

/// H<->V swap on one arm (zero-order half-wave plate at 45 degrees).
/// Unitary involution.
PureState apply_halfwave_flip(const PureState& psi, Arm arm);
DensityMatrix apply_halfwave_flip(const DensityMatrix& rho, Arm arm);

/// Werner state p |Psi-><Psi-| + (1-p)/4 I, 0 <= p <= 1.
DensityMatrix werner(double p);

/// Piecewise MEMS parameter: g(p) = p/2 for p >= 2/3, 1/3 below.
double mems_g(double p);

/// Maximally entangled mixed state: diag entries (1-2g, g, g, 0) with
/// HV/VH coherence -p/2.
DensityMatrix mems(double p);

DensityMatrix sector_mixture(const SectorWeights& w);

/// Apparatus-level recipe for MEMS: p * singlet + (g - p/2) * (HV + VH
/// projectors) + (1 - 2g) * HH projector. Equals mems(p).
DensityMatrix mems_sector_mixture(double p);

/// Singlet probability as a function of the decohering plate position.
/// Saturating model p = 1 - exp(-dx/x0): monotone, p(0) = 0, slope 1/x0
/// at the origin.
double p_from_displacement(double dx, double x0 = 1.0);

/// v * rho + (1-v)/4 I; reduces fringe visibility to v for a pure input.
DensityMatrix with_visibility(const DensityMatrix& rho, double v);

}  // namespace entsim
