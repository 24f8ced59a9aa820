// Copyright 2026 The xray-census Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef XRAY_TIME_UTIL_H_
#define XRAY_TIME_UTIL_H_

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace xray {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

Timestamp Now();

// Accepts "YYYY-MM-DDTHH:MM:SS[.fff][Z|+HH:MM|-HH:MM]".
std::optional<Timestamp> ParseIso8601(std::string_view text);

// Always UTC with millisecond precision, e.g. "2014-05-01T12:00:00.000Z".
std::string FormatIso8601(Timestamp ts);

// RFC 1123 dates as used by the Set-Cookie Expires attribute
// ("Wed, 09 Jun 2021 10:18:14 GMT"); the dashed RFC 850 form is tolerated.
std::optional<Timestamp> ParseHttpDate(std::string_view text);

}  // namespace xray

#endif  // XRAY_TIME_UTIL_H_
