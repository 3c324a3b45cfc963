#include "rfc/repair.hpp"

#include <algorithm>
#include <ostream>
#include <string>

#include "rfc/codec.hpp"
#include "rfc/error.hpp"

namespace rfc::repair {

std::vector<std::uint32_t> LocalGroup::footprint_rows() const {
  std::vector<std::uint32_t> rows;
  rows.reserve(footprint.size());
  for (const auto& e : footprint) rows.push_back(e.row);
  return rows;
}

LocalGroup group_from_column(const code::ParityColumn& col, code::ColumnId id,
                             std::uint32_t target) {
  const code::ParityEntry* hit = col.find(target);
  if (hit == nullptr) {
    raise(Errc::ConfigInvalid, "column does not cover row " + std::to_string(target));
  }
  LocalGroup g;
  g.parity_id = id;
  g.target = target;
  g.coeff_u = hit->coeff;
  for (const auto& e : col.entries) {
    if (e.row != target) g.footprint.push_back(e);
  }
  return g;
}

std::vector<LocalGroup> find_covering_parities(const code::CodeConfig& cfg,
                                               std::uint32_t target,
                                               std::span<const code::ColumnId> parity_ids) {
  std::vector<LocalGroup> groups;
  for (code::ColumnId id : parity_ids) {
    if (id.index < cfg.k) continue;
    const code::ParityColumn col = code::parity_column(cfg, id);
    if (col.covers(target)) groups.push_back(group_from_column(col, id, target));
  }
  return groups;
}

std::vector<std::uint8_t> repair_symbol(const galois::FieldSpec& field,
                                        const LocalGroup& group,
                                        std::span<const std::uint8_t> parity_payload,
                                        const PayloadMap& footprint_payloads) {
  std::vector<std::uint32_t> missing;
  for (const auto& e : group.footprint) {
    if (!footprint_payloads.contains(e.row)) missing.push_back(e.row);
  }
  if (!missing.empty()) {
    std::string rows;
    for (std::uint32_t r : missing) rows += " " + std::to_string(r);
    raise(Errc::MissingFootprintSymbol, "footprint symbols missing:" + rows);
  }

  std::vector<std::uint8_t> acc(parity_payload.begin(), parity_payload.end());
  for (const auto& e : group.footprint) {
    const auto& payload = footprint_payloads.at(e.row);
    if (payload.size() != acc.size()) {
      raise(Errc::MalformedSymbol, "payload length mismatch at row " + std::to_string(e.row));
    }
    codec::payload_add_scaled(field, acc, payload, e.coeff);  // char 2: minus = plus
  }
  codec::payload_scale(field, acc, field.inv(group.coeff_u));
  return acc;
}

std::vector<std::uint8_t> repair_parity(const code::CodeConfig& cfg, code::ColumnId id,
                                        const PayloadMap& systematic_payloads) {
  if (id.index < cfg.k) {
    raise(Errc::ConfigInvalid, "repair_parity requires a parity index");
  }
  const code::ParityColumn col = code::parity_column(cfg, id);
  std::vector<std::uint32_t> missing;
  std::size_t payload_size = 0;
  for (const auto& e : col.entries) {
    auto it = systematic_payloads.find(e.row);
    if (it == systematic_payloads.end()) {
      missing.push_back(e.row);
    } else {
      payload_size = it->second.size();
    }
  }
  if (!missing.empty()) {
    std::string rows;
    for (std::uint32_t r : missing) rows += " " + std::to_string(r);
    raise(Errc::MissingFootprintSymbol, "support symbols missing:" + rows);
  }

  std::vector<std::uint8_t> acc(payload_size, 0);
  for (const auto& e : col.entries) {
    const auto& payload = systematic_payloads.at(e.row);
    if (payload.size() != acc.size()) {
      raise(Errc::MalformedSymbol, "payload length mismatch at row " + std::to_string(e.row));
    }
    codec::payload_add_scaled(*cfg.field, acc, payload, e.coeff);
  }
  return acc;
}

OverlapGraph overlap_graph(std::span<const LocalGroup> groups) {
  OverlapGraph g;
  g.vertices.reserve(groups.size());
  for (const auto& grp : groups) g.vertices.push_back(grp.parity_id);
  g.adj.resize(groups.size());

  std::vector<std::vector<std::uint32_t>> rows;
  rows.reserve(groups.size());
  for (const auto& grp : groups) rows.push_back(grp.footprint_rows());

  for (std::size_t i = 0; i < groups.size(); ++i) {
    for (std::size_t j = i + 1; j < groups.size(); ++j) {
      // footprints are sorted; linear intersection test
      const auto& a = rows[i];
      const auto& b = rows[j];
      std::size_t x = 0, y = 0;
      bool overlap = false;
      while (x < a.size() && y < b.size()) {
        if (a[x] == b[y]) { overlap = true; break; }
        if (a[x] < b[y]) ++x; else ++y;
      }
      if (overlap) {
        g.adj[i].push_back(static_cast<std::uint32_t>(j));
        g.adj[j].push_back(static_cast<std::uint32_t>(i));
      }
    }
  }
  return g;
}

namespace {

// Exact maximum independent set over <= 64 vertices, branch and bound.
struct MisSolver {
  std::vector<std::uint64_t> nbr;  // closed-ish neighborhoods as bitmasks
  std::size_t best = 0;
  std::uint64_t best_set = 0;

  void search(std::uint64_t candidates, std::uint64_t chosen, std::size_t size) {
    if (size + static_cast<std::size_t>(__builtin_popcountll(candidates)) <= best) {
      return;
    }
    if (candidates == 0) {
      if (size > best) {
        best = size;
        best_set = chosen;
      }
      return;
    }
    const int v = __builtin_ctzll(candidates);
    const std::uint64_t bit = 1ull << v;
    // include v
    search(candidates & ~(nbr[v] | bit), chosen | bit, size + 1);
    // exclude v
    search(candidates & ~bit, chosen, size);
  }
};

}  // namespace

IndependentSet independent_groups(const OverlapGraph& g, std::size_t exact_limit) {
  const std::size_t n = g.vertices.size();
  IndependentSet out;
  if (n == 0) {
    out.exact = true;
    return out;
  }

  if (n <= exact_limit && n <= 64) {
    MisSolver solver;
    solver.nbr.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::uint32_t j : g.adj[i]) solver.nbr[i] |= 1ull << j;
    }
    solver.search((n == 64) ? ~0ull : ((1ull << n) - 1), 0, 0);
    out.count = solver.best;
    out.exact = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (solver.best_set & (1ull << i)) out.members.push_back(i);
    }
    return out;
  }

  // Greedy minimum-degree selection on the shrinking graph.
  std::vector<bool> alive(n, true);
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t i = 0; i < n; ++i) deg[i] = g.adj[i].size();
  std::size_t remaining = n;
  while (remaining > 0) {
    std::size_t pick = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i] && (pick == n || deg[i] < deg[pick])) pick = i;
    }
    out.members.push_back(pick);
    alive[pick] = false;
    --remaining;
    for (std::uint32_t j : g.adj[pick]) {
      if (alive[j]) {
        alive[j] = false;
        --remaining;
        for (std::uint32_t l : g.adj[j]) {
          if (alive[l] && deg[l] > 0) --deg[l];
        }
      }
    }
  }
  std::sort(out.members.begin(), out.members.end());
  out.count = out.members.size();
  out.exact = false;
  return out;
}

Availability availability(const code::CodeConfig& cfg, std::uint32_t target,
                          std::span<const code::ColumnId> parity_ids) {
  Availability av;
  const std::vector<LocalGroup> all = find_covering_parities(cfg, target, parity_ids);
  av.coverage = all.size();
  const OverlapGraph h = overlap_graph(all);
  av.set = independent_groups(h);
  for (std::size_t m : av.set.members) av.groups.push_back(all[m]);
  return av;
}

AvailabilityReport availability_report(const code::CodeConfig& cfg,
                                       std::span<const code::ColumnId> parity_ids) {
  // Realize each column once; bucket the groups per covered row.
  std::vector<std::vector<LocalGroup>> groups_by_row(cfg.k);
  for (code::ColumnId id : parity_ids) {
    if (id.index < cfg.k) continue;
    const code::ParityColumn col = code::parity_column(cfg, id);
    for (const auto& e : col.entries) {
      groups_by_row[e.row].push_back(group_from_column(col, id, e.row));
    }
  }

  AvailabilityReport rep;
  rep.rows.reserve(cfg.k);
  double sum = 0.0;
  std::size_t min_av = SIZE_MAX;
  for (std::uint32_t u = 0; u < cfg.k; ++u) {
    const OverlapGraph h = overlap_graph(groups_by_row[u]);
    const IndependentSet set = independent_groups(h);
    rep.rows.push_back(AvailabilityRow{u, groups_by_row[u].size(), set.count, set.exact});
    sum += static_cast<double>(set.count);
    min_av = std::min(min_av, set.count);
  }
  rep.min_availability = (cfg.k == 0) ? 0 : min_av;
  rep.mean_availability = (cfg.k == 0) ? 0.0 : sum / cfg.k;
  return rep;
}

void AvailabilityReport::write_csv(std::ostream& os) const {
  os << "u,coverage,availability,method\n";
  for (const auto& r : rows) {
    os << r.row << ',' << r.coverage << ',' << r.availability << ','
       << (r.exact ? "exact" : "greedy") << '\n';
  }
}

}  // namespace rfc::repair
