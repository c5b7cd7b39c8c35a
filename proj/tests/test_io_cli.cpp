#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "oddsec/cli.hpp"

using namespace oddsec;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("oddsec_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string slurp(const std::string& path) {
  std::ifstream is(path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::optional<Errc> parse_error(const std::string& text, const FieldPtr& expected = nullptr, std::string* what = nullptr) {
  std::istringstream is(text);
  try {
    (void)read_point_set(is, expected);
  } catch (const Error& e) {
    if (what) *what = e.what();
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST(PointSetFile, ParsesAndNormalizes) {
  std::string what;
  EXPECT_EQ(parse_error("q 5 1\n1 2 3\n2 4 1\n", nullptr, &what), Errc::ParseError);  // 2 * (1,2,3)
  EXPECT_NE(what.find("line 3"), std::string::npos);
  EXPECT_NE(what.find("repeated"), std::string::npos);

  std::istringstream ok("# header\n\nq 5 1\n0 2 4   # scaled (0,1,2)\n3 0 0\n");
  const auto loaded = read_point_set(ok);
  EXPECT_EQ(loaded.plane->q(), 5u);
  const auto ids = loaded.ids;
  ASSERT_EQ(ids.size(), 2u);
  EXPECT_EQ(ids[0], 0u);               // (1,0,0)
  EXPECT_EQ(ids[1], 25u + 2u);         // (0,1,2)
}

TEST(PointSetFile, Errors) {
  std::string what;
  EXPECT_EQ(parse_error("q 5 1\n1 2 7\n", nullptr, &what), Errc::ParseError);
  EXPECT_NE(what.find("line 2"), std::string::npos);
  EXPECT_EQ(what, "ParseError: line 2: bad field element '7'");
  EXPECT_EQ(parse_error("q 5 1\n1 2\n", nullptr, &what), Errc::ParseError);
  EXPECT_EQ(parse_error("q 5 1\n\n0 0 0\n", nullptr, &what), Errc::ParseError);
  EXPECT_NE(what.find("line 3"), std::string::npos);
  EXPECT_NE(what.find("zero"), std::string::npos);
  EXPECT_EQ(parse_error("1 0 0\n", nullptr, &what), Errc::ParseError);
  EXPECT_NE(what.find("line 1"), std::string::npos);
  EXPECT_EQ(parse_error("# nothing\n", nullptr, &what), Errc::ParseError);
  EXPECT_EQ(parse_error("q 6 1\n", nullptr, &what), Errc::ParseError);
  EXPECT_EQ(parse_error("q 3 2 modulus 2:0:1\n", nullptr, &what), Errc::ParseError);  // x^2+2 is reducible
  EXPECT_EQ(parse_error("q 3 2 modulus a:b\n", nullptr, &what), Errc::ParseError);
  EXPECT_EQ(parse_error("q 5 1\n1 2 3\n", Field::of_order(7)), Errc::FieldMismatch);
  EXPECT_EQ(parse_error("q 3 2 modulus 2:2:1\n", Field::of_order(9)), Errc::FieldMismatch);
  EXPECT_EQ(parse_error("q 3 2 modulus 1:0:1\n0:1 1 0\n", Field::of_order(9)), std::nullopt);
}

TEST(PointSetFile, RoundTrip) {
  for (std::uint32_t q : {5u, 9u, 13u}) {
    const Plane plane(Field::of_order(q));
    const auto s = construct(plane, {ConstructionKind::conic_plus_external, 0});
    const std::string text = point_set_text(s);
    std::istringstream is(text);
    const auto back = read_point_set(is, plane.field_ptr());
    EXPECT_EQ(back.ids, s.ids());
    EXPECT_EQ(point_set_text(back.set()), text);
  }
  const auto f9 = Field::of_order(9);
  EXPECT_EQ(field_spec(*f9), "q 3 2 modulus 1:0:1");
  EXPECT_EQ(field_spec(*Field::of_order(7)), "q 7 1");
}

TEST(AnalysisJson, ConicExternalQ5) {
  const Plane plane(Field::of_order(5));
  const auto s = construct(plane, {ConstructionKind::conic_plus_external, 0});
  const Json j = analysis_json(s);
  EXPECT_EQ(j["odd_count"], 8);
  EXPECT_EQ(j["size"], 7);
  EXPECT_EQ(j["weight_total"], "8/1");
  EXPECT_EQ(j["classification"]["s0"], 2);
  EXPECT_EQ(j["classification"]["s43"], 4);
  int lines = 0;
  for (const auto& [k, v] : j["spectrum"].items()) lines += v.get<int>();
  EXPECT_EQ(lines, 31);
  EXPECT_EQ(j["weights"].size(), 7u);
}

TEST(Cli, ExitCodesAndUsage) {
  EXPECT_EQ(cli({"--version"}).code, 0);
  EXPECT_EQ(cli({"--version"}).out, std::string(kVersion) + "\n");
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"bogus"}).code, 2);
  EXPECT_EQ(cli({"search", "--q", "3"}).code, 2);
  EXPECT_EQ(cli({"search", "--q", "3", "--size", "5", "--mode", "sideways"}).code, 2);
  EXPECT_EQ(cli({"construct", "nothing", "--q", "5"}).code, 2);
  EXPECT_EQ(cli({"construct", "hyperoval", "--q", "5"}).code, 2);
  EXPECT_EQ(cli({"verify", "--q", "6"}).code, 2);
  EXPECT_EQ(cli({"verify", "--q", "7", "--suite", "nope"}).code, 2);
  EXPECT_EQ(cli({"analyze", "/nonexistent/file.txt"}).code, 2);
}

TEST(Cli, ConstructThenAnalyze) {
  TempDir dir;
  const auto path = dir.file("s.txt");
  ASSERT_EQ(cli({"construct", "conic-external", "--q", "13", "--out", path}).code, 0);
  const auto r = cli({"analyze", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["odd_count"], 24);
  EXPECT_EQ(j["classification"]["s43"], 12);
  EXPECT_EQ(j["s_prime"].size(), 6u);
  EXPECT_EQ(j["manifest"]["command"], "analyze");
  EXPECT_EQ(j["manifest"]["input_hashes"].size(), 1u);
  EXPECT_TRUE(j["manifest"].contains("timestamp"));

  const auto jpath = dir.file("a.json");
  const auto r2 = cli({"analyze", path, "--json", jpath});
  EXPECT_EQ(r2.code, 0);
  EXPECT_NE(r2.out.find("odd_count=24"), std::string::npos);
  EXPECT_EQ(Json::parse(slurp(jpath))["odd_count"], 24);
}

TEST(Cli, AnalyzeEdgeCases) {
  TempDir dir;
  const auto empty = dir.file("empty.txt");
  spit(empty, "q 5 1\n");
  const auto r = cli({"analyze", empty});
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["odd_count"], 0);
  EXPECT_EQ(j["classification"]["s43"], 0);
  EXPECT_TRUE(j["s_prime"].empty());

  const auto bad = dir.file("bad.txt");
  spit(bad, "q 5 1\n1 0 0\n1 x 0\n");
  const auto rb = cli({"analyze", bad});
  EXPECT_EQ(rb.code, 2);
  EXPECT_NE(rb.err.find("ParseError"), std::string::npos);
  EXPECT_NE(rb.err.find("line 3"), std::string::npos);
  EXPECT_EQ(rb.err, "ParseError: line 3: bad field element 'x'\n");

  const auto q5 = dir.file("q5.txt");
  ASSERT_EQ(cli({"construct", "conic-external", "--q", "5", "--out", q5}).code, 0);
  EXPECT_EQ(Json::parse(cli({"analyze", q5}).out)["odd_count"], 8);
}

TEST(Cli, VerifyExamples) {
  const auto r = cli({"verify", "--q", "13", "--suite", "segre,psi,double", "--seed", "42"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("segre"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
  const auto q4 = cli({"verify", "--q", "4", "--suite", "segre"});
  EXPECT_EQ(q4.code, 2);
  EXPECT_NE(q4.err.find("q must be odd"), std::string::npos);
  const auto t2 = cli({"verify", "--q", "13", "--suite", "segret", "--t", "2"});
  EXPECT_EQ(t2.code, 0) << t2.out;
  EXPECT_NE(t2.out.find("PASS"), std::string::npos);
}

TEST(Cli, VerifyAllSuitesWritesJson) {
  TempDir dir;
  const auto jpath = dir.file("v.json");
  const auto r = cli({"verify", "--q", "11", "--trials", "20", "--json", jpath});
  EXPECT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(slurp(jpath));
  EXPECT_TRUE(j["all_passed"].get<bool>());
  EXPECT_EQ(j["results"].size(), suite_names().size());
}

TEST(Cli, SearchCsvRow) {
  TempDir dir;
  const auto w = dir.file("w.txt");
  const auto r = cli({"--reproducible", "search", "--q", "3", "--size", "5", "--mode", "exhaustive", "--out", w});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "q,size,mode,min_o,exhaustive,witness,seed,seconds\n3,5,exhaustive,4,true," + w + ",1,0.000\n");
  std::istringstream is(slurp(w));
  const auto loaded = read_point_set(is);
  EXPECT_EQ(loaded.ids.size(), 5u);
  EXPECT_EQ(odd_secants(*loaded.plane, loaded.ids), 4u);
  const auto off = cli({"--reproducible", "search", "--q", "3", "--size", "5", "--no-symmetry"});
  EXPECT_NE(off.out.find("3,5,exhaustive,4,true,-,1,0.000"), std::string::npos);
}

TEST(Cli, ReproducibleOutputIsByteIdentical) {
  TempDir dir;
  const auto a = dir.file("a.json"), b = dir.file("b.json");
  const std::vector<std::string> base{"--reproducible", "search", "--q", "7", "--size", "9", "--mode", "local",
                                      "--seed", "3", "--restarts", "3", "--moves", "500"};
  auto with = [&](const std::string& path) {
    auto v = base;
    v.push_back("--json");
    v.push_back(path);
    return v;
  };
  const auto ra = cli(with(a)), rb = cli(with(b));
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_FALSE(Json::parse(slurp(a))["manifest"].contains("timestamp"));

  const auto s = dir.file("s.txt");
  ASSERT_EQ(cli({"construct", "conic-external", "--q", "11", "--out", s}).code, 0);
  EXPECT_EQ(cli({"--reproducible", "analyze", s}).out, cli({"--reproducible", "analyze", s}).out);
  EXPECT_EQ(cli({"--reproducible", "verify", "--q", "11", "--suite", "segre,box"}).out,
            cli({"--reproducible", "verify", "--q", "11", "--suite", "segre,box"}).out);
}

TEST(Cli, GammaAtQ29) {
  TempDir dir;
  const auto s = dir.file("s29.txt");
  ASSERT_EQ(cli({"construct", "conic-external", "--q", "29", "--out", s}).code, 0);
  const auto r = cli({"gamma", s, "--seed", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["gamma_degree"], 2);
  EXPECT_TRUE(j["conic_divides_gamma"].get<bool>());
  EXPECT_TRUE(j["conic_divides_all_psi"].get<bool>());
  EXPECT_EQ(j["psi_count"], 715);
  const Plane plane(Field::of_order(29));
  EXPECT_TRUE(proportional(HomPoly::from_text(plane.field_ptr(), j["conic"].get<std::string>()),
                           standard_conic(plane.field_ptr())));

  const auto small = dir.file("s7.txt");
  ASSERT_EQ(cli({"construct", "conic-external", "--q", "7", "--out", small}).code, 0);
  const auto rs = cli({"gamma", small});
  EXPECT_EQ(rs.code, 0);
  EXPECT_NE(Json::parse(rs.out)["status"].get<std::string>().find("skipped"), std::string::npos);
}

TEST(Cli, BinaryForwardsExitCodes) {
  const std::string bin = ODDSEC_CLI_PATH;
  auto status = [&](const std::string& args) {
    const int raw = std::system((bin + " " + args + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  EXPECT_EQ(status("--version"), 0);
  EXPECT_EQ(status("verify --q 4 --suite segre"), 2);
  EXPECT_EQ(status("verify --q 11 --suite segre"), 0);
}
