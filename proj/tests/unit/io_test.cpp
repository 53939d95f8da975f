#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <trion/errors.hpp>
#include <trion/io.hpp>
#include <trion/parallel.hpp>

using namespace trion;

TEST_SUITE("io") {

TEST_CASE("number formatting and hashing") {
  CHECK(format_number(0.1) == "0.1");
  CHECK(format_number(-2.0 / 3.0) == "-0.666666666667");
  CHECK(format_number(1.0 / 3.0, 17) == "0.33333333333333331");
  CHECK(config_hash("") == "cbf29ce484222325");
  CHECK(config_hash("{\"a\":1}") == config_hash("{\"a\":1}"));
  CHECK(config_hash("{\"a\":1}") != config_hash("{\"a\":2}"));
}

TEST_CASE("term CSV round trip") {
  DimensionParams d2(2.0);
  TermCurve c(Symmetry::Antisymmetric, d2, {{0.5, -1.25, 0.75}, {1.0, -2.5, 0.5}}, TermSource::Variational);
  std::stringstream ss;
  write_term_csv(ss, c, {"term scan", "00ff"});
  std::string first;
  std::getline(ss, first);
  CHECK(first == "# command=term scan version=" + std::string(kVersion) + " config=00ff");
  ss.seekg(0);
  auto back = read_term_csv(ss, Symmetry::Antisymmetric, d2);
  REQUIRE(back.size() == 2);
  CHECK(back.points()[1].R == 1.0);
  CHECK(back.points()[1].U == -2.5);
  CHECK(back.points()[1].V == 0.5);
  std::stringstream bad("x,y\n1,2\n");
  CHECK_THROWS_AS(read_term_csv(bad, Symmetry::Symmetric, d2), ConfigError);
}

TEST_CASE("spectrum and stability CSV") {
  SpectrumResult s;
  s.levels = {-0.5, -0.125};
  s.n_found = 2;
  std::stringstream ss;
  write_spectrum_csv(ss, s, {"spectrum", "1"});
  CHECK(ss.str().find("n,epsilon\n0,-0.5\n1,-0.125\n") != std::string::npos);
  StabilityCurve c{0, Symmetry::Symmetric, {{1.0, 2.0}}, {}};
  std::stringstream st;
  write_stability_csv(st, c, {"diagram", "1"});
  CHECK(st.str().find("m,Z\n1,2\n") != std::string::npos);
}

}

TEST_SUITE("parallel") {

TEST_CASE("results are stored by index") {
  auto v = parallel_map(100, [](std::size_t i) { return static_cast<int>(i * i); });
  REQUIRE(v.size() == 100);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
}

TEST_CASE("lowest failing index is rethrown") {
  std::atomic<int> calls{0};
  try {
    parallel_map(20, [&](std::size_t i) {
      ++calls;
      if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
      return 0;
    });
    FAIL("no exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "7");
  }
  CHECK(calls == 20);
  CHECK(thread_count() >= 1);
}

}
