#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "ram/cli.hpp"
#include "ram/io.hpp"

using namespace ram;
using testing::profile;
using testing::R;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = std::filesystem::temp_directory_path() /
            ("ram-cli-" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string write(const std::string& name, const std::string& text) const {
    const auto p = path_ / name;
    std::ofstream(p) << text;
    return p.string();
  }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST_CASE("demo") {
  const Result r = run({"demo", "table1"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out.find("1/6") != std::string::npos);
  CHECK(r.out.find("1/4") != std::string::npos);
  CHECK(r.out.find("c>a>b") != std::string::npos);
  CHECK(run({"demo", "table1", "--format", "machine"}).code == cli::kOk);
  CHECK(run({"demo", "table2"}).code == cli::kInputError);
}

TEST_CASE("check exit codes") {
  const Result sp = run({"check", "--axiom", "sp", "--mechanism", "ps", "--n", "3"});
  CHECK(sp.code == cli::kViolation);
  CHECK(sp.out.find("VIOLATED") != std::string::npos);
  CHECK(run({"check", "--axiom", "em", "--mechanism", "ps", "--n", "3"}).code == cli::kOk);
  CHECK(run({"check", "--axiom", "sp", "--mechanism", "rp", "--n", "3"}).code == cli::kOk);
  CHECK(run({"check", "--axiom", "ete", "--mechanism", "sd:2,1,3", "--n", "3"}).code == cli::kViolation);
  CHECK(run({"check", "--axiom", "bogus", "--n", "3"}).code == cli::kInputError);
  CHECK(run({"check", "--axiom", "sp", "--n", "5"}).code == cli::kResourceCap);
  CHECK(run({"check", "--axiom", "sp", "--n", "3", "--first", "--exhaustive"}).code == cli::kInputError);
  CHECK(run({"check", "--axiom", "sp", "--mechanism", "sd:1,1,2", "--n", "3"}).code == cli::kInputError);
  CHECK(run({"frobnicate"}).code == cli::kInputError);
  CHECK(run({"check", "--axiom", "sp", "--n", "3", "--unknown-flag"}).code == cli::kInputError);

  const Result first = run({"check", "--axiom", "sp", "--n", "3", "--first", "--format", "machine"});
  CHECK(first.code == cli::kViolation);
  CHECK(first.out.find("violations=1 ") != std::string::npos);
}

TEST_CASE("machine output is byte-identical across runs") {
  const std::vector<std::string> args{"check", "--axiom", "li", "--n", "3", "--format", "machine"};
  const Result a = run(args);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const Result b = run(threaded);
  CHECK(a.code == cli::kViolation);
  CHECK(a.out == b.out);
  const std::vector<std::string> search{"lrobic", "--mechanism", "ps", "--n", "3", "--epsilon", "1/20",
                                        "--samples", "20", "--seed", "9", "--format", "machine"};
  const Result c = run(search);
  CHECK(c.code == cli::kViolation);
  CHECK(c.out == run(search).out);
}

TEST_CASE("interim commands") {
  CHECK(run({"obic", "--mechanism", "ps", "--n", "3"}).code == cli::kOk);
  const Result rp = run({"lrobic", "--mechanism", "rp", "--center", "uniform", "--epsilon", "1/20", "--samples",
                         "50", "--seed", "7", "--n", "3"});
  CHECK(rp.code == cli::kOk);
  CHECK(rp.out.find("no violating prior found in 50 samples") != std::string::npos);
  CHECK(run({"lrobic", "--mechanism", "ps", "--n", "3", "--targeted", "--samples", "10"}).code ==
        cli::kViolation);
  CHECK(run({"lrobic", "--mechanism", "ps", "--n", "3", "--samples", "0"}).code == cli::kInputError);
  CHECK(run({"lrobic", "--mechanism", "ps", "--n", "3", "--epsilon", "0.05"}).code == cli::kInputError);
  const Result ranks = run({"ranks", "--mechanism", "ps", "--n", "3", "--agent", "1"});
  CHECK(ranks.code == cli::kOk);
  CHECK(ranks.out.find("71/108") != std::string::npos);
  CHECK(run({"ranks", "--n", "3", "--agent", "4"}).code == cli::kInputError);
}

TEST_CASE("files written by the tool parse back") {
  TempDir dir;
  const Result table = run({"tabulate", "--mechanism", "rp", "--n", "3"});
  REQUIRE(table.code == cli::kOk);
  const Mechanism rp = load_table_mechanism(table.out);
  CHECK(rp(profile({"cab", "abc", "cab"})) == random_priority(profile({"cab", "abc", "cab"})));
  const std::string table_path = dir.write("rp.table", table.out);
  CHECK(run({"check", "--axiom", "sp", "-m", "table:" + table_path}).code == cli::kOk);
  CHECK(run({"check", "--axiom", "sp", "-m", "table:" + table_path, "--n", "4"}).code == cli::kInputError);

  const Result found = run({"lrobic", "--mechanism", "ps", "--n", "3", "--samples", "5", "--seed", "3"});
  REQUIRE(found.code == cli::kViolation);
  const auto start = found.out.find("objects:");
  REQUIRE(start != std::string::npos);
  // The prior block runs up to the first blank line.
  const auto stop = found.out.find("\n\n", start);
  const std::string prior_text = found.out.substr(start, stop == std::string::npos ? stop : stop + 1 - start);
  const PriorFile prior = parse_prior_file(prior_text);
  const std::string prior_path = dir.write("found.prior", prior_text);
  CHECK(run({"obic", "--mechanism", "ps", "--prior", "file:" + prior_path}).code == cli::kViolation);
  CHECK(write_prior_file(prior.instance, prior.prior) == prior_text);

  const std::string profile_path = dir.write("p.txt", "objects: a b c\nagent 1: c a b\nagent 2: a b c\n"
                                                      "agent 3: c a b\n");
  const Result eval = run({"eval", "--profile", profile_path});
  CHECK(eval.code == cli::kOk);
  CHECK(eval.out.find("1/6") != std::string::npos);
  CHECK(run({"eval", "--at", "c>a>b|a>b>c"}).code == cli::kInputError);
  CHECK(run({"eval", "--profile", dir.write("bad.txt", "objects: a b c\nagent 1: a a b\n")}).code ==
        cli::kInputError);
  CHECK(run({"eval", "--profile", "/nonexistent/ram/file"}).code == cli::kInputError);

  const std::string speeds = dir.write("s.txt", "agent 1: [0,1/2):2 [1/2,1):0\nagent 2: [0,1):1\n"
                                                "agent 3: [0,1):1\n");
  CHECK(run({"eval", "-m", "sea:" + speeds, "--at", "a>b>c|a>b>c|a>b>c"}).code == cli::kOk);

  const std::string assignment =
      dir.write("l.txt", "objects: a b\nagent 1: 1/3 2/3\nagent 2: 2/3 1/3\n");
  const Result d = run({"decompose", "--assignment", assignment, "--format", "machine"});
  CHECK(d.code == cli::kOk);
  CHECK(d.out.find("weight=1/3") != std::string::npos);
  CHECK(d.out.find("weight=2/3") != std::string::npos);
}
