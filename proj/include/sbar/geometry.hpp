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

#pragma once

#include <span>
#include <vector>

#include "sbar/types.hpp"

namespace sbar {

// N ports uniformly spaced on a linear aperture [0, W]. Immutable once built.
class PortGeometry {
public:
    std::size_t num_ports() const { return positions_.size(); }
    double aperture_in_wavelengths() const { return aperture_wl_; }
    double carrier_hz() const { return carrier_hz_; }
    double wavelength() const { return wavelength_; }            // meters
    double aperture_length() const { return aperture_wl_ * wavelength_; } // meters
    double spacing() const { return aperture_length() / double(num_ports() - 1); }

    // Port positions in meters, port 0 at the origin.
    std::span<const double> positions() const { return positions_; }
    double position(PortIndex n) const { return positions_[n]; }

    // |x_a - x_b| expressed in wavelengths.
    double distance_in_wavelengths(PortIndex a, PortIndex b) const;

private:
    friend PortGeometry build_port_geometry(std::size_t, double, double);

    std::vector<double> positions_;
    double aperture_wl_ = 0.0;
    double carrier_hz_ = 0.0;
    double wavelength_ = 0.0;
};

PortGeometry build_port_geometry(std::size_t num_ports, double aperture_in_wavelengths,
                                 double carrier_hz);

} // namespace sbar
