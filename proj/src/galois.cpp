#include "rfc/galois.hpp"

#include <map>
#include <mutex>
#include <string>

namespace rfc::galois {

namespace {

// Carry-less multiply of two binary polynomials, reduced mod `poly`.
// pre: a, b < 2^m, poly has degree m.
std::uint32_t clmul_mod(std::uint32_t a, std::uint32_t b, std::uint32_t poly,
                        unsigned m) {
  std::uint32_t acc = 0;
  const std::uint32_t high_bit = 1u << m;
  for (; b; b >>= 1) {
    if (b & 1u) acc ^= a;
    a <<= 1;
    if (a & high_bit) a ^= poly;
  }
  return acc;
}

// Remainder of binary polynomial division.
std::uint32_t poly_mod(std::uint64_t dividend, std::uint32_t divisor) {
  const int ddeg = 63 - __builtin_clzll(static_cast<std::uint64_t>(divisor));
  while (dividend >> ddeg) {
    const int shift = 63 - __builtin_clzll(dividend) - ddeg;
    dividend ^= static_cast<std::uint64_t>(divisor) << shift;
  }
  return static_cast<std::uint32_t>(dividend);
}

// Trial division by every binary polynomial of degree 1..m/2.
bool is_irreducible(std::uint32_t poly, unsigned m) {
  for (std::uint32_t g = 2; g < (2u << (m / 2)); ++g) {
    if (poly_mod(poly, g) == 0) return false;
  }
  return true;
}

}  // namespace

FieldSpec::FieldSpec(unsigned m, std::uint32_t reduction_poly)
    : m_(m), poly_(reduction_poly) {
  if (m != 8 && m != 16) {
    raise(Errc::ConfigInvalid, "field width must be 8 or 16, got " + std::to_string(m));
  }
  q_ = 1u << m;
  if ((poly_ >> m) != 1u) {
    raise(Errc::ConfigInvalid, "reduction polynomial must have degree exactly " +
                                   std::to_string(m));
  }
  if (!is_irreducible(poly_, m)) {
    raise(Errc::ConfigInvalid, "reduction polynomial is reducible over GF(2)");
  }

  log_.assign(q_, 0);
  exp_.assign(2 * (q_ - 1), 0);

  // The multiplicative group is cyclic of order q-1; find a generator and
  // fill the tables by walking its powers. x (= 2) works for the default
  // primitive polynomials; merely-irreducible ones may need a later g.
  for (std::uint32_t g = 2; g < q_; ++g) {
    std::uint32_t b = 1;
    bool full_order = true;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      if (b == 1 && i > 0) {
        full_order = false;
        break;
      }
      log_[b] = i;
      exp_[i] = static_cast<FieldElement>(b);
      b = clmul_mod(b, g, poly_, m_);
    }
    if (full_order && b == 1) {
      for (std::uint32_t i = 0; i < q_ - 1; ++i) exp_[q_ - 1 + i] = exp_[i];
      return;
    }
  }
  raise(Errc::ConfigInvalid, "no generator found (polynomial is not irreducible?)");
}

std::shared_ptr<const FieldSpec> FieldSpec::gf256() { return make(8, 0x11D); }

std::shared_ptr<const FieldSpec> FieldSpec::gf65536() { return make(16, 0x1100B); }

std::shared_ptr<const FieldSpec> FieldSpec::make(unsigned m, std::uint32_t poly) {
  static std::mutex mu;
  static std::map<std::pair<unsigned, std::uint32_t>, std::shared_ptr<const FieldSpec>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{m, poly}];
  if (!slot) slot = std::make_shared<const FieldSpec>(m, poly);
  return slot;
}

}  // namespace rfc::galois
