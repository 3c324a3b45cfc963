#ifndef RFC_GFLINALG_HPP
#define RFC_GFLINALG_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "rfc/galois.hpp"

namespace rfc::gflinalg {

using galois::FieldElement;

/// Dense row-major matrix over F_q.
class GfMatrix {
public:
  GfMatrix() = default;
  GfMatrix(std::shared_ptr<const galois::FieldSpec> field, std::size_t rows,
           std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0), field_(std::move(field)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  FieldElement* row_ptr(std::size_t r) { return data_.data() + r * cols_; }
  const FieldElement* row_ptr(std::size_t r) const { return data_.data() + r * cols_; }

  const galois::FieldSpec& field() const { return *field_; }
  const std::shared_ptr<const galois::FieldSpec>& field_ptr() const { return field_; }

  void swap_rows(std::size_t a, std::size_t b);

private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<FieldElement> data_;
  std::shared_ptr<const galois::FieldSpec> field_;
};

struct EchelonReport {
  std::size_t rank = 0;
  bool consistent = true;                 // meaningful when rhs given
  std::vector<std::size_t> pivot_cols;    // size = rank, increasing
  std::vector<std::size_t> free_cols;     // columns without a pivot
};

/// In-place forward elimination of [m | rhs] with row swaps; the pivot for
/// each column is the first row with a nonzero entry. rhs may be null.
EchelonReport forward_eliminate(GfMatrix& m, GfMatrix* rhs);

/// Rank over F_q by Gaussian elimination (exact, no tolerance).
std::size_t rank(GfMatrix m);

/// Unique solve of m * x = rhs.  pre: m.rows() >= m.cols().
/// Throws RankDeficient when column rank < cols, InconsistentSystem when
/// rhs is outside the column span.
std::vector<FieldElement> solve(GfMatrix m, std::vector<FieldElement> rhs);

struct BlockSolveResult {
  EchelonReport report;
  GfMatrix solution;  // cols(m) x cols(rhs); valid iff ok()
  bool ok() const {
    return report.consistent && report.free_cols.empty();
  }
};

/// Multi-RHS variant sharing one elimination across all right-hand sides.
/// Never throws on rank deficiency; inspect the report.
BlockSolveResult solve_block(GfMatrix m, GfMatrix rhs);

/// Bipartite graph between k left (input) nodes and arbitrary right nodes.
struct BipartiteGraph {
  std::size_t left_count = 0;
  std::vector<std::vector<std::uint32_t>> adjacency;  // per right node, left indices

  std::size_t right_count() const { return adjacency.size(); }
};

/// Support graph of a matrix: right node per column, edges at nonzero rows.
BipartiteGraph support_graph(const GfMatrix& m);

/// Maximum bipartite matching size (Hopcroft-Karp). A matching saturating
/// all left nodes exists iff the result equals left_count.
std::size_t max_matching(const BipartiteGraph& g);

}  // namespace rfc::gflinalg

#endif
