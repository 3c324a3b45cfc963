#include "rfc/code.hpp"

#include <algorithm>
#include <cmath>

#include "rfc/error.hpp"
#include "rfc/rng.hpp"

namespace rfc::code {

void CodeConfig::validate() const {
  if (k == 0) raise(Errc::ConfigInvalid, "k must be >= 1");
  if (c_num == 0 || c_den == 0) raise(Errc::ConfigInvalid, "c must be > 0");
  if (!field) raise(Errc::ConfigInvalid, "field not set");
}

std::vector<std::string> CodeConfig::warnings() const {
  std::vector<std::string> w;
  if (field && field->q() <= k) {
    w.push_back("q = " + std::to_string(field->q()) + " <= k = " + std::to_string(k) +
                "; the full-rank guarantee assumes q > k");
  }
  if (degree(*this) > k) {
    w.push_back("d(k) = " + std::to_string(degree(*this)) +
                " exceeds k; draws will collide heavily");
  }
  return w;
}

std::uint32_t degree(const CodeConfig& cfg) {
  cfg.validate();
  const long double lk = (cfg.log_base == LogBase::Natural)
                             ? std::log(static_cast<long double>(cfg.k))
                             : std::log2(static_cast<long double>(cfg.k));
  const long double v = (static_cast<long double>(cfg.c_num) / cfg.c_den) * lk;
  const auto d = static_cast<std::uint64_t>(std::ceil(v));
  return d < 1 ? 1u : static_cast<std::uint32_t>(d);
}

const ParityEntry* ParityColumn::find(std::uint32_t row) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), row,
                             [](const ParityEntry& e, std::uint32_t r) { return e.row < r; });
  if (it == entries.end() || it->row != row) return nullptr;
  return &*it;
}

ParityColumn column_from_draws(const galois::FieldSpec& field,
                               std::span<const ParityEntry> draws) {
  ParityColumn col;
  col.entries.assign(draws.begin(), draws.end());
  std::sort(col.entries.begin(), col.entries.end(),
            [](const ParityEntry& a, const ParityEntry& b) { return a.row < b.row; });

  std::size_t out = 0;
  for (std::size_t i = 0; i < col.entries.size();) {
    std::uint32_t row = col.entries[i].row;
    galois::FieldElement acc = 0;
    for (; i < col.entries.size() && col.entries[i].row == row; ++i) {
      acc = field.add(acc, col.entries[i].coeff);
    }
    if (acc != 0) col.entries[out++] = ParityEntry{row, acc};
  }
  col.entries.resize(out);
  return col;
}

ParityColumn parity_column_d(const CodeConfig& cfg, ColumnId id, std::uint32_t d) {
  cfg.validate();
  rng::CounterRng gen(cfg.master_seed, id.index);
  std::vector<ParityEntry> draws;
  draws.reserve(d);
  const std::uint64_t q = cfg.field->q();
  for (std::uint32_t i = 0; i < d; ++i) {
    const auto row = static_cast<std::uint32_t>(gen.below(cfg.k));
    const auto coeff = static_cast<galois::FieldElement>(gen.below(q));
    draws.push_back(ParityEntry{row, coeff});
  }
  return column_from_draws(*cfg.field, draws);
}

ParityColumn parity_column(const CodeConfig& cfg, ColumnId id) {
  return parity_column_d(cfg, id, degree(cfg));
}

Column column(const CodeConfig& cfg, ColumnId id) {
  cfg.validate();
  if (id.index < cfg.k) {
    return SystematicColumn{static_cast<std::uint32_t>(id.index)};
  }
  return parity_column(cfg, id);
}

}  // namespace rfc::code
