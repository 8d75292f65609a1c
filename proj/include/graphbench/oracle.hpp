#pragma once

#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "graphbench/iterators.hpp"
#include "graphbench/kernels.hpp"
#include "graphbench/numeric.hpp"

namespace graphbench {

// Dense-logic sparse matrix over string indices: the reference the engine
// is tested against. No explicit zeros are ever stored; setting a cell to
// zero erases it.
class SparseMatrix {
 public:
  using Row = std::map<std::string, Numeric>;

  void set(const std::string& row, const std::string& col, Numeric v);
  // Accumulates with op, treating an absent cell as the op's start value.
  void fold(const std::string& row, const std::string& col, Numeric v,
            const BinaryOp& op);
  bool has(const std::string& row, const std::string& col) const;
  Numeric at(const std::string& row, const std::string& col) const;
  int64_t nnz() const;
  const std::map<std::string, Row>& rows() const { return rows_; }

  static SparseMatrix fromTriples(std::span<const Triple> triples);
  std::vector<Triple> toTriples() const;  // sorted, values rendered

 private:
  void prune(const std::string& row, const std::string& col);
  std::map<std::string, Row> rows_;
};

bool operator==(const SparseMatrix& a, const SparseMatrix& b);

// Kernel counterparts, textbook formulations.
SparseMatrix oMxM(const SparseMatrix& a, const SparseMatrix& b,
                  const BinaryOp& multiply, const BinaryOp& sum);
SparseMatrix oEwise(const SparseMatrix& a, const SparseMatrix& b,
                    const BinaryOp& op, bool unionDomain);
SparseMatrix oExtract(const SparseMatrix& a,
                      const std::vector<RowRange>& rowRanges,
                      const std::vector<RowRange>& colRanges);
SparseMatrix oApply(const SparseMatrix& a, const UnaryOp& f);
SparseMatrix oTranspose(const SparseMatrix& a);
SparseMatrix oTriu(const SparseMatrix& a);  // strictly above the diagonal
int64_t oNnz(const SparseMatrix& a);

// Undirected simple graph as a set of normalized (min, max) vertex pairs.
class EdgeSet {
 public:
  void add(const std::string& u, const std::string& v);
  bool has(const std::string& u, const std::string& v) const;
  size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  const std::set<std::pair<std::string, std::string>>& edges() const {
    return edges_;
  }
  // Sorted neighbor lists per vertex.
  std::map<std::string, std::vector<std::string>> adjacency() const;

  static EdgeSet fromAdjacencyTriples(std::span<const Triple> triples);
  // Symmetric 1-valued adjacency triples, sorted.
  std::vector<Triple> toAdjacencyTriples() const;

 private:
  std::set<std::pair<std::string, std::string>> edges_;
};

bool operator==(const EdgeSet& a, const EdgeSet& b);

// Jaccard coefficient per vertex pair with at least one common neighbor,
// keyed (min, max).
std::map<std::pair<std::string, std::string>, double> bruteJaccard(
    const EdgeSet& g);

// Triangle count of edge (u, v).
int64_t bruteSupport(const EdgeSet& g, const std::string& u,
                     const std::string& v);

// Iteratively removes every edge with support < k-2, a whole round at a
// time, until stable.
EdgeSet bruteTruss(const EdgeSet& g, int64_t k);

}  // namespace graphbench
