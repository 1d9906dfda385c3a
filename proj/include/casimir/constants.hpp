#pragma once

// SI values fixed by the 2019 redefinition; exact by convention.

namespace casimir {

inline constexpr double hbar = 1.054571817e-34;        // J s
inline constexpr double c_light = 299792458.0;         // m / s
inline constexpr double elem_charge = 1.602176634e-19; // C

// 1 eV of photon energy expressed as an angular frequency.
inline constexpr double ev_to_rad_s = elem_charge / hbar;

// 1 Pa = 10 dyn / cm^2.
inline constexpr double pa_to_dyn_cm2 = 10.0;

inline constexpr const char* version_string = "0.1.0";

} // namespace casimir
