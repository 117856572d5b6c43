// Copyright 2026 The ibnptt Authors
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

#include "ibnptt/common/sim_time.h"

#include <charconv>
#include <cmath>
#include <cstdlib>

#include "ibnptt/common/error.h"

namespace ibnptt {

Micros FromMillis(double ms) {
  return Micros(std::llround(ms * 1000.0));
}

double ToMillis(Micros t) { return static_cast<double>(t.count()) / 1000.0; }

std::string FormatMillis(Micros t) {
  std::int64_t us = t.count();
  std::string out;
  if (us < 0) {
    out.push_back('-');
    us = -us;
  }
  out += std::to_string(us / 1000);
  out.push_back('.');
  std::int64_t frac = us % 1000;
  out.push_back(static_cast<char>('0' + frac / 100));
  out.push_back(static_cast<char>('0' + (frac / 10) % 10));
  out.push_back(static_cast<char>('0' + frac % 10));
  return out;
}

Micros ParseMillis(std::string_view text) {
  auto fail = [&]() {
    return Error(ErrorCode::kParseError,
                 "not a millisecond value: '" + std::string(text) + "'");
  };
  bool negative = false;
  std::string_view rest = text;
  if (!rest.empty() && rest.front() == '-') {
    negative = true;
    rest.remove_prefix(1);
  }
  std::string_view whole = rest;
  std::string_view frac;
  if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    whole = rest.substr(0, dot);
    frac = rest.substr(dot + 1);
  }
  if (whole.empty() || frac.size() > 3) throw fail();
  std::int64_t ms = 0;
  auto [p, ec] = std::from_chars(whole.data(), whole.data() + whole.size(), ms);
  if (ec != std::errc() || p != whole.data() + whole.size()) throw fail();
  std::int64_t us_frac = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    us_frac *= 10;
    if (i < frac.size()) {
      if (frac[i] < '0' || frac[i] > '9') throw fail();
      us_frac += frac[i] - '0';
    }
  }
  std::int64_t us = ms * 1000 + us_frac;
  return Micros(negative ? -us : us);
}

}  // namespace ibnptt
