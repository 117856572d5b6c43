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

#include "ibnptt/netsim/radio.h"

#include <cmath>

#include "ibnptt/common/error.h"

namespace ibnptt::netsim {

void RadioModel::Validate() const {
  if (!(exponent_n > 0.0) || !(d0_m > 0.0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "radio model needs exponent_n > 0 and d0_m > 0");
  }
  if (hysteresis_db < 0.0) {
    throw Error(ErrorCode::kInvariantViolation, "negative hysteresis");
  }
}

RxPower ReceivedPower(const Node& ue, const Node& enb, const RadioModel& radio) {
  const double d = Distance(ue.position, enb.position);
  if (d == 0.0) return {enb.tx_power_dbm - radio.pl0_db, true};
  const double loss =
      radio.pl0_db + 10.0 * radio.exponent_n * std::log10(d / radio.d0_m);
  return {enb.tx_power_dbm - loss, false};
}

Mode EvaluateModeSwitch(const Node& ue, const Node& enb, const RadioModel& radio,
                        Mode current) {
  if (ue.role != NodeRole::kUe) {
    throw Error(ErrorCode::kInvariantViolation,
                "mode switching applies to UEs only");
  }
  const double rx = ReceivedPower(ue, enb, radio).dbm;
  switch (current) {
    case Mode::kOnNetwork:
      return rx < radio.rx_threshold_dbm ? Mode::kRelay : current;
    case Mode::kRelay:
      return rx > radio.rx_threshold_dbm + radio.hysteresis_db
                 ? Mode::kOnNetwork
                 : current;
    case Mode::kOffNetworkD2D:
      break;
  }
  return current;
}

}  // namespace ibnptt::netsim
