#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace fs = std::filesystem;

namespace {

struct Run {
  std::string out;
  int status;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(INCAT_CLI) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {"", -1};
  std::string out;
  char buf[4096];
  std::size_t n;
  while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  const int status = pclose(pipe);
  return {out, WIFEXITED(status) ? WEXITSTATUS(status) : -1};
}

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::path(INCAT_CLI_TEST_WORK);
    fs::create_directories(dir_);
    cli("gen v-universe --n 3 -o " + path("v3.st"));
    cli("gen scramble --in " + path("v3.st") + " --seed 2 -o " + path("s3.st"));
    cli("gen tamper --in " + path("v3.st") + " --kind add-cycle --seed 1 -o " + path("cycle.st"));
    cli("gen tamper --in " + path("v3.st") + " --kind break-extensionality --seed 1 -o " + path("dup.st"));
    std::ofstream(dir_ / "bad.st") << "n 2\ne1 0 5\n";
  }
  static std::string path(const std::string& name) { return (dir_ / name).string(); }
  static inline fs::path dir_;
};

}  // namespace

TEST_F(Cli, ExitStatusMatrix) {
  const std::pair<std::string, int> cases[] = {
      {"check-axioms " + path("s3.st"), 0},
      {"check-axioms " + path("cycle.st"), 1},
      {"check-axioms " + path("bad.st"), 2},
      {"check-axioms " + path("missing.st"), 2},
      {"find-iso " + path("s3.st"), 0},
      {"find-iso " + path("cycle.st"), 1},
      {"find-iso " + path("dup.st"), 1},
      {"find-iso " + path("bad.st"), 2},
      {"eval " + path("v3.st") + " --formula \"x in1 y\" --assign x=0,y=1", 0},
      {"eval " + path("v3.st") + " --formula \"x in1 y\" --assign x=1,y=0", 1},
      {"eval " + path("v3.st") + " --formula \"x in1\"", 2},
      {"eval " + path("v3.st") + " --formula \"x in1 y\"", 2},
      {"verify-lemmas " + path("s3.st"), 0},
      {"verify-lemmas " + path("cycle.st"), 0},
      {"verify-lemmas --corpus colour=red", 2},
      {"collapse " + path("v3.st") + " --element 3", 0},
      {"collapse " + path("cycle.st") + " --element 1", 1},
      {"collapse " + path("v3.st") + " --element 9", 2},
      {"gen v-universe --n 9", 2},
      {"bogus", 2},
  };
  for (const auto& [args, want] : cases) EXPECT_EQ(cli(args).status, want) << args;
}

TEST_F(Cli, FindIsoOnScrambledV3) {
  const auto r = cli("find-iso " + path("s3.st") + " --verify --oracle-check");
  EXPECT_EQ(r.out, "iso 4\nmap 0 2\nmap 1 1\nmap 2 3\nmap 3 0\nverify ok\noracle ok mode=pairwise pairs=16\n");
  std::ifstream in(path("s3.st"));
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "# perm 2 1 3 0");
}

TEST_F(Cli, Collapse) {
  EXPECT_EQ(cli("collapse " + path("v3.st") + " --element 3").out, "{{},{{}}}\ncode 3\n");
  EXPECT_EQ(cli("collapse " + path("v3.st") + " --relation 2 --element 0").out, "{}\ncode 0\n");
}

TEST_F(Cli, EvalPrintsTruthValue) {
  EXPECT_EQ(cli("eval " + path("v3.st") + " --formula \"forall x forall y ((forall z (z in1 x <-> z in1 y)) -> x = y)\"").out,
            "true\n");
  EXPECT_EQ(cli("eval " + path("dup.st") + " --formula \"forall x forall y ((forall z (z in1 x <-> z in1 y)) -> x = y)\"").out,
            "false\n");
}

TEST_F(Cli, OutputFlagWritesFile) {
  EXPECT_EQ(cli("gen v-universe --n 2 -o " + path("v2.st")).out, "");
  std::ifstream in(path("v2.st"));
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  EXPECT_EQ(text, cli("gen v-universe --n 2").out);
}
