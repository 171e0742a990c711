#include <cmath>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "lcycle/families.hpp"
#include "lcycle/serialize.hpp"

namespace {

using FD = lcycle::FunctionDescriptor;
using BD = lcycle::BivariateDescriptor;
using nlohmann::json;

FD random_fd(std::mt19937_64& rng, int depth) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 1);
  switch (pick(rng)) {
    case 0: return FD::polynomial({u(rng), u(rng), u(rng)});
    case 1: return FD::gauss_bump(u(rng), std::abs(u(rng)), u(rng));
    case 2: return FD::negated(random_fd(rng, depth - 1));
    case 3: return FD::sum({random_fd(rng, depth - 1), random_fd(rng, depth - 1), random_fd(rng, depth - 1)});
    case 4: return FD::product({random_fd(rng, depth - 1), random_fd(rng, depth - 1)});
    case 5: return FD::shifted(random_fd(rng, depth - 1), u(rng));
    default: return FD::quotient(random_fd(rng, depth - 1), FD::constant(1.5));
  }
}

TEST(SerializeProperty, FunctionRoundTrip) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const auto f = random_fd(rng, 3);
    const auto text = lcycle::to_json(f).dump();
    const auto back = lcycle::function_from_json(json::parse(text));
    ASSERT_EQ(back, f) << text;
    ASSERT_EQ(lcycle::to_json(back).dump(), text);
  }
}

TEST(Serialize, BivariateRoundTrip) {
  const std::vector<BD> fs = {
      BD::special_form(FD::gauss_bump(0.5, 0.5, 0.5), FD::negated(FD::gauss_bump(0.25, 1, 0.75))),
      BD::lienard(FD::polynomial({0, -3, 0, 1})),
      BD::scaled(BD::lienard(FD::identity()), -1.0),
      BD::y_quotient(BD::lienard(FD::identity()), FD::polynomial({1, 0, 1}))};
  for (const auto& F : fs) {
    const auto back = lcycle::bivariate_from_json(lcycle::to_json(F));
    EXPECT_EQ(lcycle::to_json(back), lcycle::to_json(F));
    for (double x : {-1.3, 0.4, 2.0})
      for (double y : {-0.7, 0.0, 1.1}) EXPECT_EQ(back(x, y), F(x, y));
  }
}

TEST(Serialize, SystemRoundTripWithDomain) {
  const lcycle::PlanarSystem sys(FD::identity(), FD::identity(), BD::lienard(FD::constant(0.0)),
                                 lcycle::Domain{-3.0, lcycle::kInf}, FD::constant(1.0), FD::constant(-1.0));
  const auto j = lcycle::to_json(sys);
  EXPECT_TRUE(j["domain"][1].is_null());
  const auto back = lcycle::system_from_json(j);
  EXPECT_EQ(back.domain().a, -3.0);
  EXPECT_EQ(back.domain().b, lcycle::kInf);
  EXPECT_TRUE(back.has_curves());
  EXPECT_EQ(lcycle::to_json(back), j);
}

TEST(Serialize, BumpSystemRoundTrip) {
  const auto sys = lcycle::build_bump_system(lcycle::figure2_params());
  const auto back = lcycle::system_from_json(json::parse(lcycle::to_json(sys).dump()));
  ASSERT_NE(back.F().as_special_form(), nullptr);
  EXPECT_EQ(back.psi(1), sys.psi(1));
  EXPECT_EQ(back.domain().a, -lcycle::kInf);
}

TEST(Serialize, StringInfinityEndpoints) {
  const auto j = json::parse(R"({"phi":{"kind":"polynomial","coeffs":[0,1]},
      "g":{"kind":"polynomial","coeffs":[0,1]},
      "F":{"kind":"lienard","f":{"kind":"polynomial","coeffs":[0,-1,0,1]}},
      "domain":["-inf", 5]})");
  const auto sys = lcycle::system_from_json(j);
  EXPECT_EQ(sys.domain().a, -lcycle::kInf);
  EXPECT_EQ(sys.domain().b, 5.0);
  EXPECT_FALSE(sys.has_curves());
}

TEST(Serialize, MalformedInputRaisesParseError) {
  const char* bad[] = {
      R"({"kind":"polynomial"})",
      R"({"kind":"polynomial","coeffs":"x"})",
      R"({"kind":"polynomial","coeffs":[1,"a"]})",
      R"({"kind":"gauss_bump","c":1,"d":1})",
      R"({"kind":"spline"})",
      R"({"kind":3})",
      R"([1,2,3])",
  };
  for (const char* text : bad) {
    EXPECT_THROW(lcycle::function_from_json(json::parse(text)), lcycle::ParseError) << text;
  }
  EXPECT_THROW(lcycle::bivariate_from_json(json::parse(R"({"kind":"special_form","psi1":{"kind":"polynomial","coeffs":[1]}})")),
               lcycle::ParseError);
  EXPECT_THROW(lcycle::system_from_json(json::parse(R"({"phi":{"kind":"polynomial","coeffs":[0,1]}})")),
               lcycle::ParseError);
  EXPECT_THROW(lcycle::system_from_json(json::parse(R"({"phi":{"kind":"polynomial","coeffs":[0,1]},
      "g":{"kind":"polynomial","coeffs":[0,1]},"F":{"kind":"lienard","f":{"kind":"polynomial","coeffs":[0]}},
      "domain":[1]})")),
               lcycle::ParseError);
}

TEST(Serialize, InvalidDomainIsSystemError) {
  const auto j = json::parse(R"({"phi":{"kind":"polynomial","coeffs":[0,1]},
      "g":{"kind":"polynomial","coeffs":[0,1]},
      "F":{"kind":"lienard","f":{"kind":"polynomial","coeffs":[0]}},
      "domain":[1, 2]})");
  EXPECT_THROW(lcycle::system_from_json(j), lcycle::InvalidSystem);
}

}  // namespace
