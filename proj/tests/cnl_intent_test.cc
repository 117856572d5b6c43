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

#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include "ibnptt/cnl_intent/intent.h"
#include "ibnptt/cnl_intent/lexicon.h"
#include "ibnptt/common/error.h"
#include "support/generators.h"

namespace ibnptt::cnl {
namespace {

using Tokens = std::vector<std::string>;

ErrorCode CodeOf(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoError;
}

TEST(Tokenize, SplitsAndLowercases) {
  EXPECT_EQ(Tokenize({"Team1 requests ptt-group-call with Team1-members", "p"}),
            (Tokens{"team1", "requests", "ptt-group-call", "with",
                    "team1-members"}));
  EXPECT_EQ(Tokenize({"Connect UE-3 to UE-7.", "p"}),
            (Tokens{"connect", "ue-3", "to", "ue-7"}));
}

TEST(Tokenize, BlankIsEmptyIntent) {
  EXPECT_EQ(CodeOf([] { Tokenize({"   ", "p"}); }), ErrorCode::kEmptyIntent);
  EXPECT_EQ(CodeOf([] { Tokenize({"...", "p"}); }), ErrorCode::kEmptyIntent);
}

TEST(Tokenize, NegativeIssueTimeIsRejected) {
  EXPECT_EQ(CodeOf([] { Tokenize({"connect", "p", Micros(-1)}); }),
            ErrorCode::kInvariantViolation);
}

TEST(ParseIntent, GroupConnection) {
  Tokens t = {"team2", "requests", "ptt-group-call", "between", "team2-members"};
  IntentAst ast = ParseIntent(t, Lexicon::Default());
  EXPECT_EQ(ast.kind, IntentKind::kConnection);
  EXPECT_EQ(ast.service, "ptt-group-call");
  EXPECT_EQ(ast.endpoints, Tokens{"team2-members"});
  EXPECT_EQ(ast.source, "team2");
  EXPECT_TRUE(ast.qualifiers.empty());
}

TEST(ParseIntent, ReconnectionViaAnchor) {
  Tokens t = {"ue-5", "reconnect", "ptt-group-call", "via", "team3-anchor"};
  IntentAst ast = ParseIntent(t, Lexicon::Default());
  EXPECT_EQ(ast.kind, IntentKind::kReconnection);
  EXPECT_EQ(ast.endpoints, Tokens{"team3-anchor"});
  EXPECT_EQ(ast.qualifiers.at("via"), "team3-anchor");
  EXPECT_EQ(ast.source, "ue-5");
}

TEST(ParseIntent, NamedErrors) {
  const Lexicon lex = Lexicon::Default();
  EXPECT_EQ(CodeOf([&] { ParseIntent(Tokens{"hello", "world"}, lex); }),
            ErrorCode::kNoActionKeyword);
  EXPECT_EQ(CodeOf([&] { ParseIntent(Tokens{"team1", "connect", "team1"}, lex); }),
            ErrorCode::kNoServiceKeyword);
  EXPECT_EQ(CodeOf([&] { ParseIntent(Tokens{"connect", "video"}, lex); }),
            ErrorCode::kNoEndpoints);
}

TEST(ParseIntent, TeardownNeedsNoEndpoints) {
  IntentAst ast =
      ParseIntent(Tokens{"team1", "disconnect", "ptt-group-call"}, Lexicon::Default());
  EXPECT_EQ(ast.kind, IntentKind::kTeardown);
  EXPECT_TRUE(ast.endpoints.empty());
}

TEST(ParseIntent, QualifiersAndDefaultSource) {
  Tokens t = {"modify", "ptt-group-call", "priority", "2", "with", "group", "g7"};
  IntentAst ast = ParseIntent(t, Lexicon::Default(), {false, "provider"});
  EXPECT_EQ(ast.kind, IntentKind::kModification);
  EXPECT_EQ(ast.source, "provider");
  EXPECT_EQ(ast.qualifiers.at("priority"), "2");
  EXPECT_EQ(ast.qualifiers.at("group"), "g7");
}

TEST(ParseIntent, UnknownTokensIgnoredUnlessStrict) {
  Tokens t = {"team1", "connect", "ptt-group-call", "please", "to", "ue-3"};
  EXPECT_EQ(ParseIntent(t, Lexicon::Default()).endpoints, Tokens{"ue-3"});
  EXPECT_EQ(CodeOf([&] { ParseIntent(t, Lexicon::Default(), {true, ""}); }),
            ErrorCode::kUnrecognizedToken);
}

TEST(ParseIntent, DuplicateEndpointsCollapseInOrder) {
  Tokens t = {"connect", "data", "ue-3", "and", "ue-1", "ue-3"};
  EXPECT_EQ(ParseIntent(t, Lexicon::Default()).endpoints,
            (Tokens{"ue-3", "ue-1"}));
}

TEST(ClassifyKind, EarliestActionWins) {
  const Lexicon lex = Lexicon::Default();
  EXPECT_EQ(ClassifyKind(Tokens{"connect", "x"}, lex), IntentKind::kConnection);
  EXPECT_EQ(ClassifyKind(Tokens{"reconnect", "x"}, lex), IntentKind::kReconnection);
  EXPECT_EQ(ClassifyKind(Tokens{"modify", "priority", "x"}, lex),
            IntentKind::kModification);
  EXPECT_EQ(ClassifyKind(Tokens{"stop", "connect"}, lex), IntentKind::kTeardown);
  EXPECT_EQ(CodeOf([&] { ClassifyKind(Tokens{"x"}, lex); }),
            ErrorCode::kNoActionKeyword);
}

TEST(Lexicon, CaseInsensitiveAndDisjoint) {
  Lexicon lex = Lexicon::Default();
  EXPECT_EQ(lex.Action("CONNECT"), IntentKind::kConnection);
  EXPECT_TRUE(lex.IsService("PTT-Group-Call"));
  EXPECT_TRUE(lex.IsQualifierHead("Via"));
  EXPECT_EQ(CodeOf([&] { lex.AddService("connect"); }),
            ErrorCode::kInvariantViolation);
  EXPECT_EQ(CodeOf([&] { lex.AddAction("video", IntentKind::kTeardown); }),
            ErrorCode::kInvariantViolation);
  lex.AddService("telemetry");
  EXPECT_TRUE(lex.IsService("telemetry"));
}

TEST(EndpointPattern, Forms) {
  for (const char* ok : {"ue-1", "ue-123", "team3", "team3-members", "team3-anchor"}) {
    EXPECT_TRUE(IsEndpointToken(ok)) << ok;
  }
  for (const char* bad : {"ue-", "ue-x", "team", "team3-other", "uex-1"}) {
    EXPECT_FALSE(IsEndpointToken(bad)) << bad;
  }
}

TEST(Corpus, SkipsCommentsAndBlankLines) {
  std::istringstream in("# header\n\nteam1 connect data to ue-1\n  # x\nstop data\n");
  auto intents = ReadIntentCorpus(in, "provider");
  ASSERT_EQ(intents.size(), 2u);
  EXPECT_EQ(intents[1].text, "stop data");
  EXPECT_EQ(intents[0].source, "provider");
}

TEST(ParserProperty, TotalOverRandomTokenLists) {
  const Lexicon lex = Lexicon::Default();
  Rng rng(2024);
  for (int i = 0; i < 2000; ++i) {
    Tokens t = testing::RandomTokens(rng);
    try {
      IntentAst ast = ParseIntent(t, lex);
      EXPECT_EQ(ClassifyKind(t, lex), ast.kind);
    } catch (const Error& e) {
      EXPECT_TRUE(e.code() == ErrorCode::kEmptyIntent ||
                  e.code() == ErrorCode::kNoActionKeyword ||
                  e.code() == ErrorCode::kNoServiceKeyword ||
                  e.code() == ErrorCode::kNoEndpoints)
          << e.what();
    }
  }
}

TEST(ParserProperty, RenderParseRoundTrip) {
  const Lexicon lex = Lexicon::Default();
  Rng rng(99);
  for (int i = 0; i < 500; ++i) {
    IntentAst ast = testing::RandomWellFormedAst(rng, lex);
    std::string text = RenderIntent(ast, lex);
    IntentAst back = ParseIntent(Tokenize({text, "x"}), lex);
    ASSERT_EQ(back, ast) << text;
  }
}

TEST(ParserProperty, CaseInsensitive) {
  const Lexicon lex = Lexicon::Default();
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    std::string text = RenderIntent(testing::RandomWellFormedAst(rng, lex), lex);
    std::string upper = text;
    std::transform(upper.begin(), upper.end(), upper.begin(), ::toupper);
    EXPECT_EQ(ParseIntent(Tokenize({upper, "x"}), lex),
              ParseIntent(Tokenize({text, "x"}), lex));
  }
}

}  // namespace
}  // namespace ibnptt::cnl
