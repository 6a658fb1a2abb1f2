/*
 * Copyright 2026 The irssec Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Minimal SVG line chart for sweep aggregates. CSV stays the real output.

#ifndef IRSSEC_TOOLS_PLOT_HPP
#define IRSSEC_TOOLS_PLOT_HPP

#include <string>
#include <vector>

#include "irssec/harness.hpp"

namespace irssec::tools {

/// Mean power in dBm against the sweep value, one line per method.
std::string aggregate_svg(const std::vector<AggregateRow>& rows);

}  // namespace irssec::tools

#endif
