#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
  int code;
  std::string out;
};

// Runs the CLI from the data directory, capturing stdout and stderr.
Run run(const std::string& args) {
  std::string cmd = std::string("cd ") + ADHESIVE_DATA + " && " + ADHESIVE_CLI + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return {-1, ""};
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  int status = pclose(p);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

bool contains(const std::string& s, const std::string& what) { return s.find(what) != std::string::npos; }

}  // namespace

TEST(Cli, ApplyWorkedMatch) {
  auto r = run("apply --rule rule.json --graph x.json --match match.json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"kind\": \"double-square\""));
}

TEST(Cli, EnumerateMatches) {
  auto r = run("apply --rule rule.json --graph x.json --enumerate");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"kind\": \"matches\""));
}

TEST(Cli, CheckDpo) {
  EXPECT_EQ(run("check dpo ds.json --oracle").code, 0);
  auto bad = run("check dpo bad.json");
  EXPECT_EQ(bad.code, 1);
  EXPECT_TRUE(contains(bad.out, "right square not a pushout")) << bad.out;
}

TEST(Cli, CheckPushoutWithOracle) {
  auto r = run("check pushout edge_pushout.json --oracle");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"oracle\": \"yes\""));
}

TEST(Cli, DecomposeObject) {
  auto r = run("decompose-object looped_triangle.json");
  EXPECT_EQ(r.code, 0) << r.out;
  for (const auto* name : {"node:u", "node:w", "node:x", "edge:uw", "edge:ux", "edge:wx", "edge:ww"})
    EXPECT_TRUE(contains(r.out, name)) << name;
}

TEST(Cli, DecomposeAndCompose) {
  EXPECT_EQ(run("decompose-global ds.json --out /tmp/adhesive_cli_global.json").code, 0);
  auto r = run("compose /tmp/adhesive_cli_global.json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"kind\": \"double-square\""));
}

TEST(Cli, SolveLocal) {
  auto searched = run("solve-local --problem problem.json --search");
  EXPECT_EQ(searched.code, 0) << searched.out;
  EXPECT_TRUE(contains(searched.out, "\"found\""));
  EXPECT_EQ(run("solve-local --problem problem.json --accommodation accommodation.json").code, 0);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("apply --rule rule.json").code, 2);
  EXPECT_EQ(run("decompose-object looped_triangle.json --bogus").code, 2);
  EXPECT_EQ(run("check nonsense looped_triangle.json").code, 2);
  EXPECT_EQ(run("decompose-object missing.json").code, 2);
  EXPECT_EQ(run("apply --rule looped_triangle.json --graph x.json --match match.json").code, 2);
}

TEST(Cli, Solos) {
  auto r = run("solos step 'a!uv | a?xy | b!xy'");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(contains(r.out, "\"b!uv\""));
  EXPECT_EQ(run("solos step 'a!uv |'").code, 2);
  EXPECT_EQ(run("solos encode 'a!uv'").code, 0);
}

TEST(Cli, Deterministic) {
  for (const auto* args : {"decompose-global ds.json", "generate double-square --seed 7", "solve-local --problem problem.json --search"}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << args;
    EXPECT_EQ(a.out, b.out) << args;
  }
}
