#include <gtest/gtest.h>

#include "lfactors/io.hpp"

using namespace lfactors;

namespace {

const char* kDoc = R"j({
  "context": {"ell": 7, "q": 2},
  "world": "mod-l",
  "lines": [
    {"label": "gl1", "n": 1, "f": 1, "dual_label": "gl1"},
    {"label": "a", "n": 2, "f": 2, "dual_label": "b", "dual_base_twist": "q^1 * 1 * zeta(0)"},
    {"label": "b", "n": 2, "f": 2, "dual_label": "a", "dual_base_twist": "q^1 * 1 * zeta(0)"},
    {"label": "st", "n": 3, "dual_label": "st", "dual_base_twist": "q^2 * 1 * zeta(0)",
     "structure": {"r": 0, "base_line": "gl1", "base_twist": "1"}}
  ],
  "cuspidals": [
    {"name": "triv", "line": "gl1", "twist": "1"},
    {"name": "x", "line": "a", "twist": "3"},
    {"name": "s", "line": "st", "twist": "1", "structure": {"r": 0, "base_line": "gl1", "base_twist": "1"}}
  ],
  "reps": {
    "st2": [{"cuspidal": "triv", "a": 0, "b": 1}],
    "one": [{"cuspidal": "triv", "a": 0, "b": 0}],
    "mix": [{"cuspidal": "x", "a": 0, "b": 0}, {"cuspidal": "s", "a": 0, "b": 0}],
    "empty": []
  }
})j";

std::string replace(std::string s, const std::string& from, const std::string& to) {
  const auto pos = s.find(from);
  if (pos == std::string::npos) throw std::logic_error("pattern not found: " + from);
  return s.replace(pos, from.size(), to);
}

std::string error_of(const std::string& text) {
  try {
    io::parse_document(text);
  } catch (const DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, ParsesAndBuilds) {
  const auto d = io::parse_document(kDoc);
  EXPECT_EQ(d.model()->lines().size(), 4u);
  EXPECT_EQ(d.model()->line("st").f, 3u);
  const auto& st2 = std::get<0>(d.rep("st2"));
  EXPECT_EQ(st2.encode(), "[0,1]_gl1(1)");
  EXPECT_EQ(ef_render(L_generic(st2, std::get<0>(d.rep("one")))), "1/(1 - 4X)");
  EXPECT_TRUE(std::get<0>(d.rep("empty")).empty());
  EXPECT_THROW(d.rep("nope"), DomainError);
}

TEST(Io, MinimalDocument) {
  const auto d = io::parse_document(R"j({"context": {"ell": 5, "q": 2}, "lines": [{"label": "gl1", "n": 1, "f": 1}]})j");
  EXPECT_EQ(d.model()->line("gl1").dual_label, "gl1");
}

TEST(Io, RoundTrip) {
  const auto d = io::parse_document(kDoc);
  const auto once = io::render_document(d);
  const auto twice = io::render_document(io::parse_document(once.dump()));
  EXPECT_EQ(once, twice);
  EXPECT_EQ(once.dump(), twice.dump());
}

TEST(Io, Diagnostics) {
  EXPECT_EQ(error_of(replace(kDoc, R"j("b": 1}])j", R"j("b": 2}])j")), "rep 'st2': segment not generic: k=3, e(ρ)=3");
  EXPECT_NE(error_of(replace(kDoc, R"j("dual_label": "gl1"})j", R"j("dual_label": "gl9"})j")).find("gl9"), std::string::npos);
  EXPECT_NE(error_of(replace(kDoc, R"j("line": "gl1", "twist": "1"})j", R"j("line": "zz", "twist": "1"})j")).find("unknown line 'zz'"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kDoc, R"j("one": [{"cuspidal": "triv", "a": 0, "b": 0}])j",
                             R"j("one": [{"cuspidal": "triv", "a": 0, "b": 0}, {"cuspidal": "triv", "a": 1, "b": 1}])j"))
                .find("linked"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kDoc, R"j({"name": "x", "line": "a", "twist": "3"})j",
                             R"j({"name": "x", "line": "a", "twist": "3", "world": "l-adic"})j"))
                .find("world mismatch"),
            std::string::npos);
  EXPECT_NE(error_of(replace(kDoc, R"j("twist": "1", "structure": {"r": 0)j", R"j("twist": "1", "structure": {"r": 1)j")).find("structure"),
            std::string::npos);
  EXPECT_NE(error_of("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(error_of(R"j({"context": {"ell": 5}})j").find("'q'"), std::string::npos);
}

TEST(Io, AdicWorld) {
  const auto d = io::parse_document(R"j({"context": {"ell": 3, "q": 7}, "world": "l-adic",
    "lines": [{"label": "gl1", "n": 1, "f": 1}],
    "cuspidals": [{"name": "t", "line": "gl1", "twist": "q^0 * 1 * zeta(0)", "tag": "1/3"},
                  {"name": "u", "line": "gl1", "twist": "1", "tag": "2/3"}],
    "reps": {"a": [{"cuspidal": "t", "a": 0, "b": 0}], "b": [{"cuspidal": "u", "a": 0, "b": 0}]}})j");
  const auto& a = std::get<1>(d.rep("a"));
  const auto& b = std::get<1>(d.rep("b"));
  EXPECT_EQ(ef_render(L_generic(a, b)), "1/(1 - [q^0 * 1 * zeta(0)]X)");
  const auto j = io::render_document(d);
  EXPECT_EQ(j["cuspidals"][0]["tag"], "1/3");
  EXPECT_EQ(io::render_document(io::parse_document(j.dump())), j);
}
