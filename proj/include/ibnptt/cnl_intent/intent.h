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

#ifndef IBNPTT_CNL_INTENT_INTENT_H_
#define IBNPTT_CNL_INTENT_INTENT_H_

#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ibnptt/cnl_intent/lexicon.h"
#include "ibnptt/common/sim_time.h"

namespace ibnptt::cnl {

struct RawIntent {
  std::string text;
  std::string source;  // subscriber id or "provider"
  Micros issued_at{0};
};

struct IntentAst {
  IntentKind kind = IntentKind::kConnection;
  std::string service;
  std::vector<std::string> endpoints;  // ordered, duplicates removed
  std::map<std::string, std::string> qualifiers;
  std::string source;

  bool operator==(const IntentAst&) const = default;
};

struct ParseOptions {
  // Reject tokens that fill no grammar slot instead of skipping them.
  bool strict = false;
  // Used when no token precedes the action keyword.
  std::string default_source;
};

// Lower-cased maximal runs of ASCII alphanumerics and hyphens, in order.
// Throws Error(kEmptyIntent) when nothing remains and
// Error(kInvariantViolation) when issued_at is negative.
std::vector<std::string> Tokenize(const RawIntent& raw);

// Grammar:
//   <source> <action> <service> (to|between|from|via) <endpoint>+
//       [with <head> <value>]*
// Endpoints are every token after the action matching `ue-<n>`, `team<n>`
// or `team<n>-(members|anchor)`; `via <x>` and `priority <x>` are also
// accepted without the leading `with`. Throws Error with kNoActionKeyword,
// kNoServiceKeyword or kNoEndpoints (and kUnrecognizedToken in strict mode).
IntentAst ParseIntent(std::span<const std::string> tokens, const Lexicon& lex,
                      const ParseOptions& options = {});

// Kind of the earliest action keyword. Throws Error(kNoActionKeyword).
IntentKind ClassifyKind(std::span<const std::string> tokens,
                        const Lexicon& lex);

// Canonical sentence for an AST; ParseIntent(Tokenize(Render(ast))) == ast
// for any AST the parser can produce.
std::string RenderIntent(const IntentAst& ast, const Lexicon& lex);

bool IsEndpointToken(std::string_view token);

// One intent per line; blank lines and `#` comments are skipped.
std::vector<RawIntent> ReadIntentCorpus(std::istream& in,
                                        const std::string& source);

}  // namespace ibnptt::cnl

#endif  // IBNPTT_CNL_INTENT_INTENT_H_
