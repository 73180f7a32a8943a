#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "ghostsim/units.hpp"

using namespace ghostsim;

TEST(Units, SuffixesScaleExactly) {
  EXPECT_EQ(parse_quantity("693nm", Dimension::Length), 693e-9);
  EXPECT_EQ(parse_quantity("692.9 nm", Dimension::Length), 692.9e-9);
  EXPECT_EQ(parse_quantity("0.77mm", Dimension::Length), 0.77e-3);
  EXPECT_EQ(parse_quantity("170cm", Dimension::Length), 1.7);
  EXPECT_EQ(parse_quantity("100um", Dimension::Length), 100e-6);
  EXPECT_EQ(parse_quantity("100\xC2\xB5m", Dimension::Length), 100e-6);
  EXPECT_EQ(parse_quantity("100\xCE\xBCm", Dimension::Length), 100e-6);
  EXPECT_EQ(parse_quantity("3.66e-3", Dimension::Length), 3.66e-3);
  EXPECT_EQ(parse_quantity("+1.5m", Dimension::Length), 1.5);
  EXPECT_EQ(parse_quantity("0.1ns", Dimension::Time), 0.1e-9);
  EXPECT_EQ(parse_quantity("10ps", Dimension::Time), 10e-12);
  EXPECT_EQ(parse_quantity("20us", Dimension::Time), 20e-6);
  EXPECT_EQ(parse_quantity("9e9", Dimension::Dimensionless), 9e9);
}

TEST(Units, Rejects) {
  EXPECT_FALSE(parse_quantity("10ns", Dimension::Length));
  EXPECT_FALSE(parse_quantity("10mm", Dimension::Time));
  EXPECT_FALSE(parse_quantity("10mm", Dimension::Dimensionless));
  EXPECT_FALSE(parse_quantity("", Dimension::Length));
  EXPECT_FALSE(parse_quantity("mm", Dimension::Length));
  EXPECT_FALSE(parse_quantity("1.2.3", Dimension::Length));
  EXPECT_FALSE(parse_quantity("1 furlong", Dimension::Length));
  EXPECT_FALSE(parse_quantity("nan", Dimension::Length));
}

TEST(Units, FormatRoundTrips) {
  for (double v : {0.1, 692.9e-9, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.5), "0.5");
}
