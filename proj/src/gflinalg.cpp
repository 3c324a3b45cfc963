#include "rfc/gflinalg.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <queue>
#include <string>

namespace rfc::gflinalg {

void GfMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  std::swap_ranges(row_ptr(a), row_ptr(a) + cols_, row_ptr(b));
}

namespace {

// dst[i] ^= w * src[i] for i in [0, n), via log/exp tables.
void row_axpy(const galois::FieldSpec& f, FieldElement* dst, const FieldElement* src,
              FieldElement w, std::size_t n) {
  if (w == 0) return;
  const std::uint32_t lw = f.log(w);
  for (std::size_t i = 0; i < n; ++i) {
    const FieldElement s = src[i];
    if (s) dst[i] = static_cast<FieldElement>(dst[i] ^ f.exp_at(lw + f.log(s)));
  }
}

}  // namespace

EchelonReport forward_eliminate(GfMatrix& m, GfMatrix* rhs) {
  const galois::FieldSpec& f = m.field();
  const std::size_t rows = m.rows();
  const std::size_t cols = m.cols();
  EchelonReport rep;

  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < cols && pivot_row < rows; ++col) {
    // First row at or below pivot_row with a nonzero entry in this column.
    std::size_t sel = pivot_row;
    while (sel < rows && m.at(sel, col) == 0) ++sel;
    if (sel == rows) {
      rep.free_cols.push_back(col);
      continue;
    }
    m.swap_rows(pivot_row, sel);
    if (rhs) rhs->swap_rows(pivot_row, sel);

    const FieldElement pivot = m.at(pivot_row, col);
    const FieldElement pivot_inv = f.inv(pivot);
    for (std::size_t r = pivot_row + 1; r < rows; ++r) {
      const FieldElement v = m.at(r, col);
      if (v == 0) continue;
      const FieldElement factor = f.mul(v, pivot_inv);
      row_axpy(f, m.row_ptr(r) + col, m.row_ptr(pivot_row) + col, factor, cols - col);
      if (rhs) row_axpy(f, rhs->row_ptr(r), rhs->row_ptr(pivot_row), factor, rhs->cols());
    }
    rep.pivot_cols.push_back(col);
    ++pivot_row;
  }
  // Free columns: skipped during the scan, or never reached once rows ran out.
  {
    std::vector<bool> has_pivot(cols, false);
    for (std::size_t c : rep.pivot_cols) has_pivot[c] = true;
    rep.free_cols.clear();
    for (std::size_t c = 0; c < cols; ++c) {
      if (!has_pivot[c]) rep.free_cols.push_back(c);
    }
  }
  rep.rank = rep.pivot_cols.size();

  if (rhs) {
    for (std::size_t r = rep.rank; r < rows && rep.consistent; ++r) {
      for (std::size_t c = 0; c < rhs->cols(); ++c) {
        if (rhs->at(r, c) != 0) {
          rep.consistent = false;
          break;
        }
      }
    }
  }
  return rep;
}

std::size_t rank(GfMatrix m) {
  return forward_eliminate(m, nullptr).rank;
}

BlockSolveResult solve_block(GfMatrix m, GfMatrix rhs) {
  const galois::FieldSpec& f = m.field();
  BlockSolveResult res;
  res.report = forward_eliminate(m, &rhs);
  if (!res.ok()) return res;

  const std::size_t n = m.cols();
  const std::size_t width = rhs.cols();
  GfMatrix x(m.field_ptr(), n, width);
  // Full column rank: pivot_cols == [0, n), row i has its pivot at column i.
  for (std::size_t ii = n; ii-- > 0;) {
    for (std::size_t c = 0; c < width; ++c) {
      FieldElement acc = rhs.at(ii, c);
      for (std::size_t j = ii + 1; j < n; ++j) {
        acc = f.add(acc, f.mul(m.at(ii, j), x.at(j, c)));
      }
      x.at(ii, c) = f.div(acc, m.at(ii, ii));
    }
  }
  res.solution = std::move(x);
  return res;
}

std::vector<FieldElement> solve(GfMatrix m, std::vector<FieldElement> rhs) {
  if (m.rows() < m.cols()) {
    raise(Errc::RankDeficient, "system has fewer equations than unknowns");
  }
  if (rhs.size() != m.rows()) {
    raise(Errc::ConfigInvalid, "rhs length does not match row count");
  }
  GfMatrix b(m.field_ptr(), m.rows(), 1);
  for (std::size_t r = 0; r < m.rows(); ++r) b.at(r, 0) = rhs[r];

  BlockSolveResult res = solve_block(std::move(m), std::move(b));
  if (!res.report.free_cols.empty()) {
    raise(Errc::RankDeficient,
          "column rank " + std::to_string(res.report.rank) + " < unknowns");
  }
  if (!res.report.consistent) {
    raise(Errc::InconsistentSystem, "rhs is not in the column span");
  }
  std::vector<FieldElement> x(res.solution.rows());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = res.solution.at(i, 0);
  return x;
}

BipartiteGraph support_graph(const GfMatrix& m) {
  BipartiteGraph g;
  g.left_count = m.rows();
  g.adjacency.resize(m.cols());
  for (std::size_t c = 0; c < m.cols(); ++c) {
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (m.at(r, c) != 0) g.adjacency[c].push_back(static_cast<std::uint32_t>(r));
    }
  }
  return g;
}

namespace {

constexpr std::uint32_t kUnmatched = std::numeric_limits<std::uint32_t>::max();

// Hopcroft-Karp over (right -> left) adjacency.
struct HopcroftKarp {
  const BipartiteGraph& g;
  std::vector<std::uint32_t> match_right;  // right -> left
  std::vector<std::uint32_t> match_left;   // left -> right
  std::vector<std::uint32_t> dist;

  explicit HopcroftKarp(const BipartiteGraph& graph)
      : g(graph),
        match_right(graph.right_count(), kUnmatched),
        match_left(graph.left_count, kUnmatched),
        dist(graph.right_count(), 0) {}

  bool bfs() {
    std::queue<std::uint32_t> q;
    const std::uint32_t inf = kUnmatched;
    for (std::uint32_t v = 0; v < g.right_count(); ++v) {
      if (match_right[v] == kUnmatched) {
        dist[v] = 0;
        q.push(v);
      } else {
        dist[v] = inf;
      }
    }
    bool found = false;
    while (!q.empty()) {
      const std::uint32_t v = q.front();
      q.pop();
      for (std::uint32_t u : g.adjacency[v]) {
        const std::uint32_t w = match_left[u];
        if (w == kUnmatched) {
          found = true;
        } else if (dist[w] == inf) {
          dist[w] = dist[v] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::uint32_t v) {
    for (std::uint32_t u : g.adjacency[v]) {
      const std::uint32_t w = match_left[u];
      if (w == kUnmatched || (dist[w] == dist[v] + 1 && dfs(w))) {
        match_right[v] = u;
        match_left[u] = v;
        return true;
      }
    }
    dist[v] = kUnmatched;
    return false;
  }

  std::size_t run() {
    std::size_t matched = 0;
    while (bfs()) {
      for (std::uint32_t v = 0; v < g.right_count(); ++v) {
        if (match_right[v] == kUnmatched && dfs(v)) ++matched;
      }
    }
    return matched;
  }
};

}  // namespace

std::size_t max_matching(const BipartiteGraph& g) {
  return HopcroftKarp(g).run();
}

}  // namespace rfc::gflinalg
