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

#ifndef IBNPTT_CNL_INTENT_LEXICON_H_
#define IBNPTT_CNL_INTENT_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace ibnptt::cnl {

enum class IntentKind { kConnection, kReconnection, kModification, kTeardown };

std::string_view IntentKindName(IntentKind kind);

// Keyword vocabulary of the controlled language. All lookups are
// case-insensitive; the three keyword sets are kept pairwise disjoint.
class Lexicon {
 public:
  // actions {connect, request, requests -> Connection; reconnect ->
  // Reconnection; modify -> Modification; disconnect, stop -> Teardown},
  // services {ptt-group-call, ptt-private-call, ptt-emergency-call, video,
  // data}, qualifier heads {with, via, priority}.
  static Lexicon Default();

  // Each Add* throws Error(kInvariantViolation) if the keyword already
  // belongs to a different set.
  void AddAction(std::string_view keyword, IntentKind kind);
  void AddService(std::string_view keyword);
  void AddQualifierHead(std::string_view keyword);

  std::optional<IntentKind> Action(std::string_view token) const;
  bool IsService(std::string_view token) const;
  bool IsQualifierHead(std::string_view token) const;

  // Canonical keyword used when rendering an intent of the given kind.
  std::string CanonicalAction(IntentKind kind) const;

  const std::set<std::string>& services() const { return services_; }

 private:
  bool Known(const std::string& keyword) const;

  std::map<std::string, IntentKind> actions_;
  std::set<std::string> services_;
  std::set<std::string> qualifier_heads_;
};

}  // namespace ibnptt::cnl

#endif  // IBNPTT_CNL_INTENT_LEXICON_H_
