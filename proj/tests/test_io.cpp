#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pulseloss/error.hpp"
#include "pulseloss/io.hpp"

using namespace pulseloss;

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0.00000000e+00");
  CHECK(format_number(-1.0 / 3.0) == "-3.33333333e-01");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("csv round trip") {
  CsvTable t;
  t.comments = {"method: second-kind"};
  t.header = {"t_s", "value"};
  t.columns = {{0.0, 0.5, 1.0}, {0.0, 0.25, std::nan("")}};
  std::ostringstream os;
  write_csv(os, t);
  CHECK(os.str() ==
        "# method: second-kind\n"
        "t_s,value\n"
        "0.00000000e+00,0.00000000e+00\n"
        "5.00000000e-01,2.50000000e-01\n"
        "1.00000000e+00,nan\n");
  std::istringstream is(os.str());
  const auto back = read_csv(is);
  CHECK(back.comments == t.comments);
  CHECK(back.header == t.header);
  CHECK(back.columns[1][1] == 0.25);
  CHECK(std::isnan(back.columns[1][2]));
}

TEST_CASE("curve round trip keeps the label") {
  const SampledCurve c({0.0, 1e-9, 2e-9}, {0.0, 0.1, 0.2}, CurveLabel::USigma);
  std::ostringstream os;
  write_curve_csv(os, c);
  std::istringstream is(os.str());
  const auto back = read_curve_csv(is);
  CHECK(back.label == CurveLabel::USigma);
  CHECK(back.values == c.values);
}

TEST_CASE("malformed csv") {
  std::istringstream ragged("a,b\n1,2\n3\n");
  CHECK_THROWS_AS(read_csv(ragged), ConfigError);
  std::istringstream text("a,b\n1,x\n");
  CHECK_THROWS_AS(read_csv(text), ConfigError);
  std::istringstream empty("# only a comment\n");
  CHECK_THROWS_AS(read_csv(empty), ConfigError);
}

TEST_CASE("waveform file") {
  const auto path = std::filesystem::temp_directory_path() / "pulseloss_io_waveform.csv";
  {
    std::ofstream f(path);
    f << "# scope capture\ntime_s,volts\n0,0\n1e-9,0.5\n2e-9,1\n";
  }
  const auto s = read_waveform_csv(path);
  CHECK(s.times().size() == 3);
  CHECK(s.eval(1.5e-9) == doctest::Approx(0.75));
  {
    std::ofstream f(path);
    f << "t,v\n0,0\n1,1\n";
  }
  CHECK_THROWS_AS(read_waveform_csv(path), ConfigError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_waveform_csv(path), ConfigError);
}

TEST_CASE("json reports") {
  TimeConstants tc;
  tc.inductance = 1e-7;
  tc.t_sigma = 2e-3;
  const auto j = to_json(tc);
  CHECK(j["t_sigma_s"] == 2e-3);
  CHECK(j["t_R_s"].is_null());
}
