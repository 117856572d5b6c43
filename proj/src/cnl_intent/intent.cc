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

#include "ibnptt/cnl_intent/intent.h"

#include <algorithm>
#include <cctype>
#include <optional>

#include "ibnptt/common/error.h"

namespace ibnptt::cnl {
namespace {

bool IsTokenChar(unsigned char c) { return std::isalnum(c) || c == '-'; }

bool AllDigits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

bool IsConnective(std::string_view t) {
  return t == "to" || t == "between" || t == "from" || t == "and";
}

void AddUnique(std::vector<std::string>& v, const std::string& s) {
  if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
}

[[noreturn]] void Unrecognized(const std::string& token) {
  throw Error(ErrorCode::kUnrecognizedToken,
              "token '" + token + "' fills no grammar slot");
}

}  // namespace

bool IsEndpointToken(std::string_view t) {
  if (t.starts_with("ue-")) return AllDigits(t.substr(3));
  if (!t.starts_with("team")) return false;
  std::string_view rest = t.substr(4);
  std::size_t digits = 0;
  while (digits < rest.size() &&
         std::isdigit(static_cast<unsigned char>(rest[digits]))) {
    ++digits;
  }
  if (digits == 0) return false;
  std::string_view suffix = rest.substr(digits);
  return suffix.empty() || suffix == "-members" || suffix == "-anchor";
}

std::vector<std::string> Tokenize(const RawIntent& raw) {
  if (raw.issued_at < Micros(0)) {
    throw Error(ErrorCode::kInvariantViolation,
                "intent issued at negative time");
  }
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : raw.text) {
    if (IsTokenChar(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyIntent, "intent has no tokens");
  }
  return tokens;
}

IntentKind ClassifyKind(std::span<const std::string> tokens,
                        const Lexicon& lex) {
  for (const auto& t : tokens) {
    if (auto kind = lex.Action(t)) return *kind;
  }
  throw Error(ErrorCode::kNoActionKeyword, "no action keyword in intent");
}

IntentAst ParseIntent(std::span<const std::string> tokens, const Lexicon& lex,
                      const ParseOptions& options) {
  if (tokens.empty()) {
    throw Error(ErrorCode::kEmptyIntent, "intent has no tokens");
  }
  std::size_t action_at = tokens.size();
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (lex.Action(tokens[i])) {
      action_at = i;
      break;
    }
  }
  if (action_at == tokens.size()) {
    throw Error(ErrorCode::kNoActionKeyword, "no action keyword in intent");
  }

  IntentAst ast;
  ast.kind = *lex.Action(tokens[action_at]);
  ast.source = action_at > 0 ? tokens[0] : options.default_source;
  if (options.strict && action_at > 1) Unrecognized(tokens[1]);

  const std::size_t n = tokens.size();
  std::size_t i = action_at + 1;
  while (i < n) {
    const std::string& t = tokens[i];
    if (ast.service.empty() && lex.IsService(t)) {
      ast.service = t;
      ++i;
    } else if (t == "via" && i + 1 < n) {
      ast.qualifiers["via"] = tokens[i + 1];
      if (IsEndpointToken(tokens[i + 1])) AddUnique(ast.endpoints, tokens[i + 1]);
      i += 2;
    } else if (t == "priority" && i + 1 < n) {
      ast.qualifiers["priority"] = tokens[i + 1];
      i += 2;
    } else if (t == "with" && i + 2 < n && !IsEndpointToken(tokens[i + 1]) &&
               tokens[i + 1] != "with" && tokens[i + 1] != "via" &&
               !lex.Action(tokens[i + 1]) && !lex.IsService(tokens[i + 1])) {
      ast.qualifiers[tokens[i + 1]] = tokens[i + 2];
      i += 3;
    } else if (IsEndpointToken(t)) {
      AddUnique(ast.endpoints, t);
      ++i;
    } else if (IsConnective(t) || t == "with") {
      ++i;
    } else {
      if (options.strict) Unrecognized(t);
      ++i;
    }
  }

  if (ast.service.empty()) {
    throw Error(ErrorCode::kNoServiceKeyword, "no service keyword in intent");
  }
  if (ast.endpoints.empty() && (ast.kind == IntentKind::kConnection ||
                                ast.kind == IntentKind::kReconnection)) {
    throw Error(ErrorCode::kNoEndpoints,
                std::string(IntentKindName(ast.kind)) +
                    " intent names no endpoints");
  }
  return ast;
}

std::string RenderIntent(const IntentAst& ast, const Lexicon& lex) {
  std::string out;
  auto append = [&out](std::string_view word) {
    if (!out.empty()) out.push_back(' ');
    out.append(word);
  };
  if (!ast.source.empty()) append(ast.source);
  append(lex.CanonicalAction(ast.kind));
  append(ast.service);
  if (!ast.endpoints.empty()) {
    append("to");
    for (const auto& e : ast.endpoints) append(e);
  }
  if (auto via = ast.qualifiers.find("via"); via != ast.qualifiers.end()) {
    append("via");
    append(via->second);
  }
  for (const auto& [head, value] : ast.qualifiers) {
    if (head == "via") continue;
    append("with");
    append(head);
    append(value);
  }
  return out + ".";
}

std::vector<RawIntent> ReadIntentCorpus(std::istream& in,
                                        const std::string& source) {
  std::vector<RawIntent> out;
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) {
          return std::isspace(c);
        })) {
      continue;
    }
    out.push_back(RawIntent{line, source, Micros(0)});
  }
  return out;
}

}  // namespace ibnptt::cnl
