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

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace cavmux::fmt {

/// Shortest text that reads back to the same double ("%.17g" style).
std::string raw(double v);

/// Fixed notation rounded to @p digits significant figures, keeping
/// trailing zeros ("1.00", "0.566", "97.8").
std::string sig(double v, int digits);

/// Scientific notation with @p digits significant figures ("5.076e-02").
std::string sci(double v, int digits);

/// Quotes a CSV field when it holds a comma, quote or line break.
std::string csv_field(const std::string& s);

using Echo = std::vector<std::pair<std::string, std::string>>;

/// Writes "# key = value" lines.
void write_echo(std::ostream& os, const Echo& echo);

/// Writes one CSV record terminated by LF.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

}  // namespace cavmux::fmt
