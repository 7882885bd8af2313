// Copyright 2026 The cavmux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

namespace cavmux::units {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s
inline constexpr double kMHz = 1.0e6;
inline constexpr double kTHz = 1.0e12;

constexpr double mhz_to_hz(double mhz) { return mhz * kMHz; }
constexpr double hz_to_mhz(double hz) { return hz / kMHz; }

// Vacuum wavelength in nm to frequency in Hz.
constexpr double nm_to_hz(double nm) { return kSpeedOfLight / (nm * 1.0e-9); }
constexpr double hz_to_nm(double hz) { return kSpeedOfLight / hz * 1.0e9; }

}  // namespace cavmux::units
