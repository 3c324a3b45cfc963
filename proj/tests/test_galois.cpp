#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rfc/galois.hpp"

using rfc::Errc;
using rfc::Error;
using rfc::galois::FieldElement;
using rfc::galois::FieldSpec;

TEST_CASE("add is xor: identities and characteristic 2") {
  const auto f = FieldSpec::gf256();
  CHECK(f->add(0x00, 0x5A) == 0x5A);
  CHECK(f->add(0x5A, 0x5A) == 0x00);
  CHECK(f->add(0x53, 0xCA) == 0x99);
}

TEST_CASE("mul matches the naive polynomial oracle on all GF(2^8) pairs") {
  const auto f = FieldSpec::gf256();
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      REQUIRE(f->mul(static_cast<FieldElement>(a), static_cast<FieldElement>(b)) ==
              oracles::gf_mul(a, b, 0x11D, 8));
    }
  }
}

TEST_CASE("mul frozen vectors") {
  const auto f = FieldSpec::gf256();
  CHECK(f->mul(0x02, 0x80) == 0x1D);  // x * x^7 reduces straight to the poly tail
  CHECK(oracles::gf_mul(0x53, 0xCA, 0x11D, 8) == 0x8F);
  CHECK(f->mul(0x53, 0xCA) == 0x8F);
  for (unsigned x = 0; x < 256; ++x) {
    CHECK(f->mul(static_cast<FieldElement>(x), 0x01) == x);
    CHECK(f->mul(static_cast<FieldElement>(x), 0x00) == 0);
  }
}

TEST_CASE("inverse: exhaustive for m=8, frozen vector, zero rejected") {
  const auto f = FieldSpec::gf256();
  CHECK(f->inv(0x01) == 0x01);
  CHECK(oracles::gf_inv(0x02, 0x11D, 8) == 0x8E);
  CHECK(f->inv(0x02) == 0x8E);
  for (unsigned a = 1; a < 256; ++a) {
    REQUIRE(f->mul(static_cast<FieldElement>(a), f->inv(static_cast<FieldElement>(a))) == 1);
  }
  CHECK_THROWS_AS(f->inv(0x00), Error);
  try {
    f->inv(0x00);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ZeroInverse);
  }
}

TEST_CASE("field axioms hold exhaustively for m=8") {
  const auto f = FieldSpec::gf256();
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      const auto ea = static_cast<FieldElement>(a);
      const auto eb = static_cast<FieldElement>(b);
      REQUIRE(f->mul(ea, eb) == f->mul(eb, ea));
      REQUIRE(f->add(ea, eb) == f->add(eb, ea));
    }
  }
  // associativity and distributivity over full triples
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      const auto ea = static_cast<FieldElement>(a);
      const auto eb = static_cast<FieldElement>(b);
      const FieldElement ab = f->mul(ea, eb);
      const FieldElement a_plus_b = f->add(ea, eb);
      for (unsigned c = 0; c < 256; ++c) {
        const auto ec = static_cast<FieldElement>(c);
        REQUIRE(f->mul(ab, ec) == f->mul(ea, f->mul(eb, ec)));
        REQUIRE(f->mul(a_plus_b, ec) == f->add(f->mul(ea, ec), f->mul(eb, ec)));
      }
    }
  }
}

TEST_CASE("m=16 tables agree with the oracle on random pairs") {
  const auto f = FieldSpec::gf65536();
  std::mt19937_64 gen(12345);
  std::uniform_int_distribution<std::uint32_t> dist(0, 65535);
  for (int i = 0; i < 100000; ++i) {
    const std::uint32_t a = dist(gen);
    const std::uint32_t b = dist(gen);
    REQUIRE(f->mul(static_cast<FieldElement>(a), static_cast<FieldElement>(b)) ==
            oracles::gf_mul(a, b, 0x1100B, 16));
  }
  for (int i = 0; i < 1000; ++i) {
    const auto a = static_cast<FieldElement>(dist(gen) | 1u);
    REQUIRE(f->mul(a, f->inv(a)) == 1);
  }
}

TEST_CASE("bad field parameters are rejected") {
  CHECK_THROWS_AS(FieldSpec(8, 0x101), Error);    // x^8 + 1 = (x+1)^8
  CHECK_THROWS_AS(FieldSpec(8, 0x1100B), Error);  // degree 16, not 8
  CHECK_THROWS_AS(FieldSpec(16, 0x11D), Error);   // degree 8, not 16
  CHECK_THROWS_AS(FieldSpec(12, 0x1053), Error);  // unsupported width
  try {
    FieldSpec f(8, 0x101);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::ConfigInvalid);
  }
}

TEST_CASE("alternative irreducible polynomial works end to end") {
  // AES polynomial x^8+x^4+x^3+x+1; irreducible but not primitive for x,
  // which exercises the generator search.
  const auto f = FieldSpec::make(8, 0x11B);
  for (unsigned a = 0; a < 256; ++a) {
    for (unsigned b = 0; b < 256; ++b) {
      REQUIRE(f->mul(static_cast<FieldElement>(a), static_cast<FieldElement>(b)) ==
              oracles::gf_mul(a, b, 0x11B, 8));
    }
  }
}
