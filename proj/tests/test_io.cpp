#include <gtest/gtest.h>

#include <sstream>

#include "qws/io.hpp"
#include "qws/presets.hpp"

using namespace qws;

namespace {

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(ModelJson, RoundTrip) {
  for (const ModelSpec& m : {presets::fig1(), presets::fig2(), presets::fig3(), presets::hadamard()}) {
    const ModelSpec back = io::parse_model(io::json::parse(io::to_json(m).dump()));
    EXPECT_EQ(back, m);
  }
}

TEST(ModelJson, BundledFilesMatchPresets) {
  const std::string dir = QWS_MODELS_DIR;
  EXPECT_EQ(io::load_model(dir + "/fig1.json"), presets::fig1());
  EXPECT_EQ(io::load_model(dir + "/fig2.json"), presets::fig2());
  EXPECT_EQ(io::load_model(dir + "/fig3.json"), presets::fig3());
  EXPECT_EQ(io::load_model(dir + "/homogeneous.json"), presets::hadamard());
}

TEST(ModelJson, Errors) {
  EXPECT_THROW(io::parse_model(io::json::array()), io::ParseError);
  EXPECT_THROW(io::parse_model(io::json::parse(R"({"x_plus": 0})")), io::ParseError);
  EXPECT_THROW(io::parse_model(io::json::parse(
                   R"({"x_plus": 0.5, "x_minus": 0, "period_plus": [], "period_minus": []})")),
               io::ParseError);
  EXPECT_THROW(io::parse_model(io::json::parse(
                   R"({"x_plus": 0, "x_minus": 0, "period_plus": [{"delta": 0, "alpha": [1]}], "period_minus": []})")),
               io::ParseError);
  EXPECT_THROW(io::load_model("/nonexistent/model.json"), io::ParseError);
}

TEST(ModelJson, RealNumbersAcceptedForComplex) {
  const ModelSpec m = io::parse_model(io::json::parse(
      R"({"x_plus": 0, "x_minus": 0, "period_plus": [{"delta": 0, "alpha": 0.6, "beta": [0, 0.8]}],
          "period_minus": [{"delta": 0, "alpha": 0.6, "beta": [0, 0.8]}]})"));
  EXPECT_EQ(m.period_plus[0].alpha, Complex(0.6));
  EXPECT_TRUE(is_valid(m));
}

TEST(InitialState, NormalizesWithFlag) {
  const io::InitialState s = io::parse_initial_state(io::json::parse(R"([[0, [1, 0], [1, 0]], [2, 0, [0, 1]]])"));
  EXPECT_TRUE(s.renormalized);
  EXPECT_DOUBLE_EQ(s.input_norm_sq, 3.0);
  EXPECT_NEAR(s.state.norm_sq(), 1.0, 1e-15);
  EXPECT_EQ(s.state.lo, 0);
  EXPECT_EQ(s.state.hi(), 2);

  const double h = std::sqrt(0.5);
  const io::InitialState u = io::parse_initial_state(io::json::array({io::json::array({-1, h, h})}));
  EXPECT_FALSE(u.renormalized);
  EXPECT_THROW(io::parse_initial_state(io::json::parse("[[0, 0, 0]]")), io::ParseError);
  EXPECT_THROW(io::parse_initial_state(io::json::parse("[[0.5, 1, 0]]")), io::ParseError);
  EXPECT_THROW(io::parse_initial_state(io::json::parse("[]")), io::ParseError);
}

TEST(Format, TwelveSignificantDigitsForAngles) {
  EXPECT_EQ(io::fmt_angle(kPi / 8), "0.392699081699");
  EXPECT_EQ(io::fmt_angle(11 * kPi / 8), "4.31968989869");
}

TEST(Csv, DistributionRowsMatchWindow) {
  const DistributionSeries d = distribution(presets::origin_state(), 0);
  std::ostringstream os;
  io::write_distribution_csv(os, d, -70, 70);
  const std::string s = os.str();
  EXPECT_EQ(count_lines(s), 142u);
  EXPECT_EQ(s.substr(0, s.find('\n')), "x,value,kind,t_or_T");
  EXPECT_NE(s.find("\n0,1,instant,0\n"), std::string::npos);
}

TEST(Csv, LimitRowsHaveEmptyTime) {
  DistributionSeries d;
  d.lo = 0;
  d.values = {0.5};
  d.kind = DistributionKind::limit;
  std::ostringstream os;
  io::write_distribution_csv(os, d, 0, 0);
  EXPECT_EQ(os.str(), "x,value,kind,t_or_T\n0,0.5,limit,\n");
}

TEST(Csv, SpectrumColumns) {
  SpectrumReport r;
  EigenPoint p;
  p.lambda = kPi / 8;
  p.residual = 1e-12;
  p.zeta_plus_lt = Complex(0.0, 0.5);
  p.zeta_minus_gt = 2.0;
  r.eigenpoints.push_back(p);
  std::ostringstream os;
  io::write_spectrum_csv(os, r);
  EXPECT_EQ(os.str(), "lambda,residual,abs_zeta_plus_lt,abs_zeta_minus_gt\n0.392699081699,1e-12,0.5,2\n");
}

TEST(Json, SpectrumReportFields) {
  const io::json j = io::to_json(scan_spectrum(presets::fig3()));
  ASSERT_EQ(j["eigenvalues"].size(), 2u);
  for (const char* key : {"lambda", "residual", "zeta_plus_lt", "zeta_minus_gt", "norm_sq"})
    EXPECT_TRUE(j["eigenvalues"][0].contains(key)) << key;
  EXPECT_EQ(j["eigenvalues"][0]["zeta_plus_lt"].size(), 2u);
}

TEST(Csv, PlotColumns) {
  const DistributionSeries mu = distribution(presets::origin_state(), 70);
  DistributionSeries nu;
  nu.lo = -1;
  nu.values = {0.25, 0.5, 0.25};
  nu.kind = DistributionKind::limit;
  std::ostringstream os;
  io::write_plot_csv(os, mu, nu, -1, 1);
  EXPECT_EQ(os.str(), "x,mu_t,nu_inf\n-1,0,0.25\n0,1,0.5\n1,0,0.25\n");
}
