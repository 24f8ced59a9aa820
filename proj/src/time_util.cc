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

#include "xray/time_util.h"

#include <array>
#include <cctype>
#include <cstdio>

#include "xray/url.h"

namespace xray {

namespace {

using std::chrono::days;
using std::chrono::hours;
using std::chrono::milliseconds;
using std::chrono::minutes;
using std::chrono::seconds;

// Reads exactly |width| digits at |pos|.
bool ReadDigits(std::string_view text, size_t& pos, size_t width, int& out) {
  if (pos + width > text.size()) return false;
  int value = 0;
  for (size_t i = 0; i < width; ++i) {
    const char c = text[pos + i];
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    value = value * 10 + (c - '0');
  }
  pos += width;
  out = value;
  return true;
}

bool Expect(std::string_view text, size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c) return false;
  ++pos;
  return true;
}

std::optional<Timestamp> MakeTimestamp(int year, int month, int day, int hour,
                                       int minute, int second, int millis) {
  const std::chrono::year_month_day ymd{
      std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
      std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 60) {
    return std::nullopt;
  }
  const auto day_point = std::chrono::sys_days{ymd};
  return std::chrono::time_point_cast<milliseconds>(day_point) + hours{hour} +
         minutes{minute} + seconds{second} + milliseconds{millis};
}

}  // namespace

Timestamp Now() {
  return std::chrono::time_point_cast<milliseconds>(
      std::chrono::system_clock::now());
}

std::optional<Timestamp> ParseIso8601(std::string_view text) {
  text = TrimWhitespace(text);
  size_t pos = 0;
  int year, month, day, hour, minute, second;
  if (!ReadDigits(text, pos, 4, year) || !Expect(text, pos, '-') ||
      !ReadDigits(text, pos, 2, month) || !Expect(text, pos, '-') ||
      !ReadDigits(text, pos, 2, day) || pos >= text.size() ||
      (text[pos] != 'T' && text[pos] != ' ')) {
    return std::nullopt;
  }
  ++pos;
  if (!ReadDigits(text, pos, 2, hour) || !Expect(text, pos, ':') ||
      !ReadDigits(text, pos, 2, minute) || !Expect(text, pos, ':') ||
      !ReadDigits(text, pos, 2, second)) {
    return std::nullopt;
  }
  int millis = 0;
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int scale = 100;
    size_t digits = 0;
    while (pos < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[pos]))) {
      millis += (text[pos] - '0') * scale;
      scale /= 10;
      ++pos;
      ++digits;
    }
    if (digits == 0) return std::nullopt;
  }
  int offset_minutes = 0;
  if (pos < text.size()) {
    const char sign = text[pos];
    if (sign == 'Z') {
      ++pos;
    } else if (sign == '+' || sign == '-') {
      ++pos;
      int off_h, off_m;
      if (!ReadDigits(text, pos, 2, off_h)) return std::nullopt;
      Expect(text, pos, ':');
      if (!ReadDigits(text, pos, 2, off_m)) return std::nullopt;
      offset_minutes = (off_h * 60 + off_m) * (sign == '-' ? -1 : 1);
    } else {
      return std::nullopt;
    }
  }
  if (pos != text.size()) return std::nullopt;
  auto ts = MakeTimestamp(year, month, day, hour, minute, second, millis);
  if (!ts) return std::nullopt;
  return *ts - minutes{offset_minutes};
}

std::string FormatIso8601(Timestamp ts) {
  const auto day_point = std::chrono::floor<days>(ts);
  const std::chrono::year_month_day ymd{day_point};
  auto rest = ts - day_point;
  const auto h = std::chrono::duration_cast<hours>(rest);
  rest -= h;
  const auto m = std::chrono::duration_cast<minutes>(rest);
  rest -= m;
  const auto s = std::chrono::duration_cast<seconds>(rest);
  rest -= s;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()), static_cast<int>(h.count()),
                static_cast<int>(m.count()), static_cast<int>(s.count()),
                static_cast<int>(rest.count()));
  return buf;
}

std::optional<Timestamp> ParseHttpDate(std::string_view text) {
  static constexpr std::array<std::string_view, 12> kMonths = {
      "jan", "feb", "mar", "apr", "may", "jun",
      "jul", "aug", "sep", "oct", "nov", "dec"};
  text = TrimWhitespace(text);
  // Skip the weekday.
  if (const auto comma = text.find(','); comma != std::string_view::npos) {
    text.remove_prefix(comma + 1);
  }
  text = TrimWhitespace(text);
  size_t pos = 0;
  int day;
  if (!ReadDigits(text, pos, 2, day)) {
    pos = 0;
    if (!ReadDigits(text, pos, 1, day)) return std::nullopt;
  }
  if (pos >= text.size() || (text[pos] != ' ' && text[pos] != '-')) {
    return std::nullopt;
  }
  ++pos;
  if (pos + 3 > text.size()) return std::nullopt;
  const std::string month_name = ToLowerAscii(text.substr(pos, 3));
  int month = 0;
  for (size_t i = 0; i < kMonths.size(); ++i) {
    if (kMonths[i] == month_name) month = static_cast<int>(i) + 1;
  }
  if (month == 0) return std::nullopt;
  pos += 3;
  if (pos >= text.size() || (text[pos] != ' ' && text[pos] != '-')) {
    return std::nullopt;
  }
  ++pos;
  int year;
  if (ReadDigits(text, pos, 4, year)) {
    // four-digit year
  } else if (ReadDigits(text, pos, 2, year)) {
    year += year < 70 ? 2000 : 1900;
  } else {
    return std::nullopt;
  }
  if (!Expect(text, pos, ' ')) return std::nullopt;
  int hour, minute, second;
  if (!ReadDigits(text, pos, 2, hour) || !Expect(text, pos, ':') ||
      !ReadDigits(text, pos, 2, minute) || !Expect(text, pos, ':') ||
      !ReadDigits(text, pos, 2, second)) {
    return std::nullopt;
  }
  return MakeTimestamp(year, month, day, hour, minute, second, 0);
}

}  // namespace xray
