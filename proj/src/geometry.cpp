// SPDX-License-Identifier: Apache-2.0
//
// sbar - Bayesian channel reconstruction for fluid antenna arrays
// Copyright (C) 2026 The sbar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "sbar/geometry.hpp"

#include <cmath>
#include <cstdlib>

#include "sbar/error.hpp"

namespace sbar {

PortGeometry build_port_geometry(std::size_t num_ports, double aperture_in_wavelengths,
                                 double carrier_hz) {
    if (num_ports < 2) throw Error(ErrorCode::InvalidArgument, "need at least two ports");
    if (!(aperture_in_wavelengths > 0.0) || !std::isfinite(aperture_in_wavelengths))
        throw Error(ErrorCode::InvalidArgument, "aperture must be positive");
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw Error(ErrorCode::InvalidArgument, "carrier frequency must be positive");

    PortGeometry g;
    g.aperture_wl_ = aperture_in_wavelengths;
    g.carrier_hz_ = carrier_hz;
    g.wavelength_ = kSpeedOfLight / carrier_hz;
    const double length = aperture_in_wavelengths * g.wavelength_;
    const double last = double(num_ports - 1);
    g.positions_.resize(num_ports);
    // n * W / (N-1), not accumulated steps.
    for (std::size_t n = 0; n < num_ports; ++n) g.positions_[n] = double(n) * length / last;
    return g;
}

double PortGeometry::distance_in_wavelengths(PortIndex a, PortIndex b) const {
    // Depends only on the index gap.
    const double gap = a > b ? double(a - b) : double(b - a);
    return gap * aperture_wl_ / double(num_ports() - 1);
}

} // namespace sbar
