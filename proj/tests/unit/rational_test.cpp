#include <covkit/rational.hpp>

#include <catch_amalgamated.hpp>

using covkit::BigInt;
using covkit::BigRational;

TEST_CASE("serialization is canonical p/q or bare integer") {
  CHECK(covkit::format_rational(BigRational(1, 2)) == "1/2");
  CHECK(covkit::format_rational(BigRational(2, 4)) == "1/2");
  CHECK(covkit::format_rational(BigRational(-6, 4)) == "-3/2");
  CHECK(covkit::format_rational(BigRational(4, 2)) == "2");
  CHECK(covkit::format_rational(BigRational(0)) == "0");
  CHECK(covkit::format_rational(BigRational(-5)) == "-5");
}

TEST_CASE("parsing accepts integers and fractions, canonicalizing") {
  CHECK(covkit::parse_rational("3/6") == BigRational(1, 2));
  CHECK(covkit::parse_rational("-3/6") == BigRational(-1, 2));
  CHECK(covkit::parse_rational("7") == BigRational(7));
  CHECK(covkit::parse_rational("-7") == BigRational(-7));
  CHECK(covkit::parse_rational("0") == BigRational(0));
  CHECK(covkit::format_rational(covkit::parse_rational("10/4")) == "5/2");
}

TEST_CASE("parsing rejects malformed text") {
  CHECK_THROWS_AS(covkit::parse_rational(""), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("1/"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("/2"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("1.5"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("two"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("1/2/3"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational(" 1"), std::invalid_argument);
  CHECK_THROWS_AS(covkit::parse_rational("1 "), std::invalid_argument);
}

TEST_CASE("factorial matches known values") {
  CHECK(covkit::factorial(0) == BigInt(1));
  CHECK(covkit::factorial(1) == BigInt(1));
  CHECK(covkit::factorial(5) == BigInt(120));
  CHECK(covkit::factorial(10) == BigInt(3628800));
  CHECK(covkit::factorial(20) == BigInt("2432902008176640000"));
  CHECK(covkit::factorial(25) == BigInt("15511210043330985984000000"));
}

TEST_CASE("ceiling of a rational") {
  CHECK(covkit::ceil_rational(BigRational(7, 2)) == BigInt(4));
  CHECK(covkit::ceil_rational(BigRational(-7, 2)) == BigInt(-3));
  CHECK(covkit::ceil_rational(BigRational(4)) == BigInt(4));
  CHECK(covkit::ceil_rational(BigRational(0)) == BigInt(0));
  CHECK(covkit::ceil_rational(BigRational(2) / BigRational(1, 4)) == BigInt(8));
  CHECK(covkit::ceil_rational(BigRational(2) / BigRational(1)) == BigInt(2));
  CHECK(covkit::ceil_rational(BigRational(2) / BigRational(3, 4)) == BigInt(3));
}

TEST_CASE("sign helper") {
  CHECK(covkit::sign_of(BigRational(3, 7)) == 1);
  CHECK(covkit::sign_of(BigRational(-3, 7)) == -1);
  CHECK(covkit::sign_of(BigRational(0)) == 0);
}
