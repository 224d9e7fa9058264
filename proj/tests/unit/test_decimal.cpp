#include "collatz_spectra/decimal.hpp"

#include <doctest.h>

using namespace collatz;

TEST_SUITE("decimal") {

TEST_CASE("significant-digit rendering") {
  CHECK(to_decimal(BigRat(0)) == "0");
  CHECK(to_decimal(BigRat(1)) == "1");
  CHECK(to_decimal(BigRat(1, 4)) == "0.25");
  CHECK(to_decimal(BigRat(2, 3)) == "0.6666667");
  CHECK(to_decimal(BigRat(781, 1024)) == "0.7626953");
  CHECK(to_decimal(BigRat(1, 8), 2) == "0.13");
  CHECK(to_decimal(BigRat(-1, 8), 2) == "-0.13");
  CHECK(to_decimal(BigRat(99999999, 100000000), 3) == "1");
  CHECK(to_decimal(BigRat(12345678, 10), 7) == "1234568");
}

TEST_CASE("scientific outside [1e-6, 1e7)") {
  CHECK(to_decimal(BigRat(41078, 100000000), 5) == "0.00041078");
  CHECK(to_decimal(BigRat(1, 10000000)) == "1e-07");
  CHECK(to_decimal(BigRat(12345678)) == "1.234568e+07");
  CHECK(to_scientific(BigRat(41078, 100000000), 5) == "4.1078e-04");
}

TEST_CASE("fractions") {
  CHECK(to_fraction(BigRat(3)) == "3");
  CHECK(to_fraction(BigRat(10, 512)) == "5/256");
  CHECK(to_fraction(BigRat(-6, 4)) == "-3/2");
}

}
