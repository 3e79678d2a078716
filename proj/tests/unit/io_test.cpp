#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "lociso/census.hpp"
#include "lociso/error.hpp"
#include "lociso/generators.hpp"
#include "lociso/io.hpp"

using namespace lociso;

namespace {

std::vector<Structure> samples() {
  std::vector<Structure> out;
  out.push_back(gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("1/3"), 50));
  out.push_back(gen_sturmian(parse_quadratic("(1+sqrt(5))/2"), parse_quadratic("0"), 30, SturmianOrientation::Symmetric));
  out.push_back(gen_kary_tree(3, AddressSequence::parse("2(13)", 1, 2), 20, 3));
  out.push_back(gen_binary_hyperbolic(AddressSequence::parse("tm", 0, 1), 8, 6, 2));
  out.push_back(gen_cayley_free(2, 3));
  out.push_back(gen_grid({5, 4}, true, GridColoring::checkerboard(2)));
  out.push_back(Structure{});
  return out;
}

std::string parse_error(const std::string& text) {
  try {
    read_structure(text);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "accepted:\n" << text;
  return {};
}

}  // namespace

TEST(Io, RoundTripIsIdentity) {
  for (const auto& m : samples()) {
    auto text = write_structure(m);
    auto back = read_structure(text);
    EXPECT_TRUE(same_structure(m, back));
    EXPECT_EQ(write_structure(back), text);
  }
}

TEST(Io, WritingIsCanonical) {
  const std::string text =
      "lociso-structure v1\n"
      "language Succ/2 Black/1\n"
      "elements\nb\na\nc\n"
      "frontier\nc\na\n"
      "tuples\nBlack(b)\nSucc(b,c)\nSucc(a,b)\nSucc(a,b)\n"
      "end\n";
  auto m = read_structure(text);
  EXPECT_EQ(write_structure(m),
            "lociso-structure v1\n"
            "language Succ/2 Black/1\n"
            "elements\na\nb\nc\n"
            "frontier\na\nc\n"
            "tuples\nSucc(a,b)\nSucc(b,c)\nBlack(b)\n"
            "end\n");
}

TEST(Io, CommentsAndBlankLinesIgnored) {
  auto m = read_structure("# header comment\nlociso-structure v1\n\nlanguage E/2\nelements\nx\n# mid\ny\nfrontier\ntuples\nE(x,y)\nend\n");
  EXPECT_EQ(m.size(), 2u);
  EXPECT_EQ(m.tuple_count(), 1u);
}

TEST(Io, MalformedArityReportsLineAndColumn) {
  auto what = parse_error("lociso-structure v1\nlanguage Succ/2 Bad/x\nelements\nend\n");
  EXPECT_NE(what.find("line 2, column 21"), std::string::npos) << what;
}

TEST(Io, ParseErrorsAreLocated) {
  EXPECT_NE(parse_error("lociso-structure v9\n").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error("lociso-structure v1\nlanguage E/2\nelements\na\nfrontier\ntuples\nE(a,a\nend\n").find("line 7"),
            std::string::npos);
  EXPECT_NE(parse_error("lociso-structure v1\nlanguage E/2\nelements\na\n").find("missing 'end'"), std::string::npos);
}

TEST(Io, ValidationErrorsPassThrough) {
  try {
    read_structure("lociso-structure v1\nlanguage E/2\nelements\na\nfrontier\ntuples\nE(a,b)\nend\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::DanglingElement);
  }
}

TEST(Io, LoadedSturmianWindowHasIdenticalCensus) {
  auto m = gen_sturmian(parse_quadratic("sqrt(2)"), parse_quadratic("0"), 5000);
  auto dir = std::filesystem::temp_directory_path() / "lociso_io_test";
  std::filesystem::create_directories(dir);
  auto path = (dir / "sturmian.lis").string();
  save_structure(path, m);
  auto back = load_structure(path);
  for (std::uint32_t h : {0u, 3u, 7u}) {
    auto a = census(m, h), b = census(back, h);
    ASSERT_EQ(a.entries.size(), b.entries.size());
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
      EXPECT_EQ(a.entries[i].signature, b.entries[i].signature);
      EXPECT_EQ(a.entries[i].multiplicity, b.entries[i].multiplicity);
      EXPECT_EQ(m.id(a.entries[i].representative), back.id(b.entries[i].representative));
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(Io, StreamOverloadsAgree) {
  auto m = gen_cayley_free(1, 4);
  std::stringstream ss;
  write_structure(ss, m);
  EXPECT_EQ(ss.str(), write_structure(m));
  EXPECT_TRUE(same_structure(read_structure(ss), m));
}
