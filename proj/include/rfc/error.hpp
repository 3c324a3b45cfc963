#ifndef RFC_ERROR_HPP
#define RFC_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace rfc {

enum class Errc {
  ConfigInvalid,
  IoError,
  ZeroInverse,
  RankDeficient,
  InconsistentSystem,
  MalformedSymbol,
  MissingFootprintSymbol,
  NoLocalGroup,
  HeaderMismatch,
  CorruptShard,
};

/// Library-wide exception carrying a machine-checkable error code.
class Error : public std::runtime_error {
public:
  Error(Errc code, std::string what)
      : std::runtime_error(std::move(what)), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace rfc

#endif
