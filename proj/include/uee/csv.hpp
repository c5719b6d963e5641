/*
 * SPDX-FileCopyrightText: Copyright (c) 2026 The hetnet-uee Authors. All rights reserved.
 * SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace uee::csv {

/// Decimal text with 12 significant digits; the fixed numeric format of every output table.
std::string num(double v);

/// Writes one comma-separated line. Fields are emitted verbatim.
void write_row(std::ostream& os, const std::vector<std::string>& fields);

/// Splits one line on commas (no quoting support; none of our fields need it).
std::vector<std::string> split(std::string_view line);

} // namespace uee::csv
