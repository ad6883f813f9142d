#pragma once

#include <vector>

#include "waveortho/types.hpp"

namespace waveortho {

/// Kirchhoff pattern of a slit of width d: (1/d) int_{-d/2}^{d/2} e^{ik x (sin a - sin theta)} dx,
/// with the incident field as aperture field. Angles measured from the slit normal.
/// Normalized so that normal incidence gives 1 at theta = 0.
FarFieldPattern kirchhoff_pattern(double kd, double incidence_angle, const std::vector<double>& angles);

}  // namespace waveortho
