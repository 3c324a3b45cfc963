#ifndef RFC_GALOIS_HPP
#define RFC_GALOIS_HPP

#include <cstdint>
#include <memory>
#include <vector>

#include "rfc/error.hpp"

namespace rfc::galois {

/// Element of GF(2^m), m <= 16. Plain integer value in [0, q).
using FieldElement = std::uint16_t;

/// GF(2^m) for m in {8, 16}, defined by an irreducible reduction polynomial
/// of degree m (bit m set). Log/antilog tables are built once at
/// construction; instances are immutable and safe to share across threads.
class FieldSpec {
public:
  /// Validates the polynomial degree and irreducibility (exhaustive trial
  /// division, feasible for m <= 16). Throws ConfigInvalid on failure.
  FieldSpec(unsigned m, std::uint32_t reduction_poly);

  unsigned m() const { return m_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t reduction_poly() const { return poly_; }
  unsigned element_bytes() const { return m_ / 8; }

  FieldElement add(FieldElement a, FieldElement b) const {
    return static_cast<FieldElement>(a ^ b);
  }

  FieldElement mul(FieldElement a, FieldElement b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Multiplicative inverse. Throws ZeroInverse for a = 0.
  FieldElement inv(FieldElement a) const {
    if (a == 0) raise(Errc::ZeroInverse, "inverse of zero field element");
    return exp_[(q_ - 1) - log_[a]];
  }

  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }

  // Raw table access for elimination inner loops.
  std::uint32_t log(FieldElement a) const { return log_[a]; }      // pre: a != 0
  FieldElement exp_at(std::uint32_t e) const { return exp_[e]; }   // pre: e < 2(q-1)

  bool operator==(const FieldSpec& o) const {
    return m_ == o.m_ && poly_ == o.poly_;
  }

  /// GF(2^8) with the conventional Reed-Solomon polynomial 0x11D.
  static std::shared_ptr<const FieldSpec> gf256();
  /// GF(2^16) with polynomial 0x1100B.
  static std::shared_ptr<const FieldSpec> gf65536();
  /// Cached lookup for arbitrary (m, poly).
  static std::shared_ptr<const FieldSpec> make(unsigned m, std::uint32_t poly);

private:
  unsigned m_;
  std::uint32_t poly_;
  std::uint32_t q_;
  std::vector<std::uint32_t> log_;   // indexed by element value; log_[0] unused
  std::vector<FieldElement> exp_;    // 2(q-1) entries, doubled to skip a modulo
};

}  // namespace rfc::galois

#endif
