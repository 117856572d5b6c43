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

#include "ibnptt/cnl_intent/lexicon.h"

#include <algorithm>
#include <cctype>

#include "ibnptt/common/error.h"

namespace ibnptt::cnl {
namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return out;
}

}  // namespace

std::string_view IntentKindName(IntentKind kind) {
  switch (kind) {
    case IntentKind::kConnection:
      return "Connection";
    case IntentKind::kReconnection:
      return "Reconnection";
    case IntentKind::kModification:
      return "Modification";
    case IntentKind::kTeardown:
      return "Teardown";
  }
  return "Unknown";
}

Lexicon Lexicon::Default() {
  Lexicon lex;
  lex.AddAction("connect", IntentKind::kConnection);
  lex.AddAction("request", IntentKind::kConnection);
  lex.AddAction("requests", IntentKind::kConnection);
  lex.AddAction("reconnect", IntentKind::kReconnection);
  lex.AddAction("modify", IntentKind::kModification);
  lex.AddAction("disconnect", IntentKind::kTeardown);
  lex.AddAction("stop", IntentKind::kTeardown);
  for (const char* s : {"ptt-group-call", "ptt-private-call",
                        "ptt-emergency-call", "video", "data"}) {
    lex.AddService(s);
  }
  for (const char* q : {"with", "via", "priority"}) lex.AddQualifierHead(q);
  return lex;
}

bool Lexicon::Known(const std::string& keyword) const {
  return actions_.contains(keyword) || services_.contains(keyword) ||
         qualifier_heads_.contains(keyword);
}

void Lexicon::AddAction(std::string_view keyword, IntentKind kind) {
  std::string k = Lower(keyword);
  if (Known(k) && !actions_.contains(k)) {
    throw Error(ErrorCode::kInvariantViolation,
                "keyword '" + k + "' already used outside the action set");
  }
  actions_[k] = kind;
}

void Lexicon::AddService(std::string_view keyword) {
  std::string k = Lower(keyword);
  if (Known(k) && !services_.contains(k)) {
    throw Error(ErrorCode::kInvariantViolation,
                "keyword '" + k + "' already used outside the service set");
  }
  services_.insert(k);
}

void Lexicon::AddQualifierHead(std::string_view keyword) {
  std::string k = Lower(keyword);
  if (Known(k) && !qualifier_heads_.contains(k)) {
    throw Error(ErrorCode::kInvariantViolation,
                "keyword '" + k + "' already used outside the qualifier set");
  }
  qualifier_heads_.insert(k);
}

std::optional<IntentKind> Lexicon::Action(std::string_view token) const {
  auto it = actions_.find(Lower(token));
  if (it == actions_.end()) return std::nullopt;
  return it->second;
}

bool Lexicon::IsService(std::string_view token) const {
  return services_.contains(Lower(token));
}

bool Lexicon::IsQualifierHead(std::string_view token) const {
  return qualifier_heads_.contains(Lower(token));
}

std::string Lexicon::CanonicalAction(IntentKind kind) const {
  // Prefer the conventional verb; fall back to the first registered keyword.
  static constexpr std::pair<IntentKind, const char*> kPreferred[] = {
      {IntentKind::kConnection, "connect"},
      {IntentKind::kReconnection, "reconnect"},
      {IntentKind::kModification, "modify"},
      {IntentKind::kTeardown, "disconnect"},
  };
  for (const auto& [k, word] : kPreferred) {
    auto it = actions_.find(word);
    if (k == kind && it != actions_.end() && it->second == kind) return word;
  }
  for (const auto& [word, k] : actions_) {
    if (k == kind) return word;
  }
  throw Error(ErrorCode::kInvariantViolation,
              "lexicon has no keyword for " +
                  std::string(IntentKindName(kind)));
}

}  // namespace ibnptt::cnl
