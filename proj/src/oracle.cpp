#include "graphbench/oracle.hpp"

#include <algorithm>

#include "graphbench/errors.hpp"
#include "graphbench/key.hpp"

namespace graphbench {

void SparseMatrix::prune(const std::string& row, const std::string& col) {
  auto rit = rows_.find(row);
  if (rit == rows_.end()) return;
  auto cit = rit->second.find(col);
  if (cit != rit->second.end() && cit->second.zero()) {
    rit->second.erase(cit);
    if (rit->second.empty()) rows_.erase(rit);
  }
}

void SparseMatrix::set(const std::string& row, const std::string& col,
                       Numeric v) {
  if (v.zero()) {
    auto rit = rows_.find(row);
    if (rit != rows_.end()) {
      rit->second.erase(col);
      if (rit->second.empty()) rows_.erase(rit);
    }
    return;
  }
  rows_[row][col] = v;
}

void SparseMatrix::fold(const std::string& row, const std::string& col,
                        Numeric v, const BinaryOp& op) {
  auto rit = rows_.find(row);
  if (rit == rows_.end() || !rit->second.count(col)) {
    rows_[row][col] = v;
  } else {
    rit->second[col] = op(rit->second[col], v);
  }
  prune(row, col);
}

bool SparseMatrix::has(const std::string& row, const std::string& col) const {
  auto rit = rows_.find(row);
  return rit != rows_.end() && rit->second.count(col) != 0;
}

Numeric SparseMatrix::at(const std::string& row, const std::string& col) const {
  auto rit = rows_.find(row);
  if (rit == rows_.end()) return Numeric::ofInt(0);
  auto cit = rit->second.find(col);
  return cit == rit->second.end() ? Numeric::ofInt(0) : cit->second;
}

int64_t SparseMatrix::nnz() const {
  int64_t n = 0;
  for (const auto& [row, cols] : rows_) n += cols.size();
  return n;
}

SparseMatrix SparseMatrix::fromTriples(std::span<const Triple> triples) {
  SparseMatrix m;
  for (const auto& t : triples) m.set(t.row, t.col, Numeric::parse(t.value));
  return m;
}

std::vector<Triple> SparseMatrix::toTriples() const {
  std::vector<Triple> out;
  for (const auto& [row, cols] : rows_)
    for (const auto& [col, v] : cols)
      out.push_back(Triple{row, col, v.render()});
  return out;
}

bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
  if (a.nnz() != b.nnz()) return false;
  for (const auto& [row, cols] : a.rows())
    for (const auto& [col, v] : cols)
      if (!b.has(row, col) || !b.at(row, col).equals(v)) return false;
  return true;
}

SparseMatrix oMxM(const SparseMatrix& a, const SparseMatrix& b,
                  const BinaryOp& multiply, const BinaryOp& sum) {
  // Accumulate every partial product before pruning; folding through the
  // matrix itself would drop transient zeros and reseed later products.
  std::map<std::string, std::map<std::string, Numeric>> acc;
  for (const auto& [i, aRow] : a.rows()) {
    for (const auto& [k, aik] : aRow) {
      auto bit = b.rows().find(k);
      if (bit == b.rows().end()) continue;
      for (const auto& [j, bkj] : bit->second) {
        Numeric p = multiply(aik, bkj);
        auto [it, fresh] = acc[i].try_emplace(j, p);
        if (!fresh) it->second = sum(it->second, p);
      }
    }
  }
  SparseMatrix c;
  for (const auto& [i, cols] : acc)
    for (const auto& [j, v] : cols) c.set(i, j, v);
  return c;
}

SparseMatrix oEwise(const SparseMatrix& a, const SparseMatrix& b,
                    const BinaryOp& op, bool unionDomain) {
  SparseMatrix c;
  for (const auto& [row, cols] : a.rows()) {
    for (const auto& [col, va] : cols) {
      if (b.has(row, col))
        c.set(row, col, op(va, b.at(row, col)));
      else if (unionDomain)
        c.set(row, col, va);
    }
  }
  if (unionDomain) {
    for (const auto& [row, cols] : b.rows())
      for (const auto& [col, vb] : cols)
        if (!a.has(row, col)) c.set(row, col, vb);
  }
  return c;
}

SparseMatrix oExtract(const SparseMatrix& a,
                      const std::vector<RowRange>& rowRanges,
                      const std::vector<RowRange>& colRanges) {
  auto rr = normalizeRanges(rowRanges);
  auto cr = normalizeRanges(colRanges);
  SparseMatrix c;
  if (rr.empty() || cr.empty()) return c;
  for (const auto& [row, cols] : a.rows()) {
    if (!rangesContain(rr, row)) continue;
    for (const auto& [col, v] : cols)
      if (rangesContain(cr, col)) c.set(row, col, v);
  }
  return c;
}

SparseMatrix oApply(const SparseMatrix& a, const UnaryOp& f) {
  SparseMatrix c;
  for (const auto& [row, cols] : a.rows())
    for (const auto& [col, v] : cols) c.set(row, col, f(v));
  return c;
}

SparseMatrix oTranspose(const SparseMatrix& a) {
  SparseMatrix c;
  for (const auto& [row, cols] : a.rows())
    for (const auto& [col, v] : cols) c.set(col, row, v);
  return c;
}

SparseMatrix oTriu(const SparseMatrix& a) {
  SparseMatrix c;
  for (const auto& [row, cols] : a.rows())
    for (const auto& [col, v] : cols)
      if (row < col) c.set(row, col, v);
  return c;
}

int64_t oNnz(const SparseMatrix& a) { return a.nnz(); }

void EdgeSet::add(const std::string& u, const std::string& v) {
  if (u == v) throw ParameterError("self-loop edge " + u);
  edges_.insert(u < v ? std::make_pair(u, v) : std::make_pair(v, u));
}

bool EdgeSet::has(const std::string& u, const std::string& v) const {
  return edges_.count(u < v ? std::make_pair(u, v) : std::make_pair(v, u)) != 0;
}

std::map<std::string, std::vector<std::string>> EdgeSet::adjacency() const {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& [v, nbrs] : adj) std::sort(nbrs.begin(), nbrs.end());
  return adj;
}

EdgeSet EdgeSet::fromAdjacencyTriples(std::span<const Triple> triples) {
  EdgeSet g;
  for (const auto& t : triples) g.add(t.row, t.col);
  return g;
}

std::vector<Triple> EdgeSet::toAdjacencyTriples() const {
  std::vector<Triple> out;
  out.reserve(edges_.size() * 2);
  for (const auto& [u, v] : edges_) {
    out.push_back(Triple{u, v, "1"});
    out.push_back(Triple{v, u, "1"});
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const EdgeSet& a, const EdgeSet& b) {
  return a.edges() == b.edges();
}

std::map<std::pair<std::string, std::string>, double> bruteJaccard(
    const EdgeSet& g) {
  // Count wedges by their endpoints, then normalize by the neighborhood
  // union. Formulated over wedge centers so it shares no code path with the
  // engine's lower/upper split.
  std::map<std::pair<std::string, std::string>, int64_t> wedges;
  auto adj = g.adjacency();
  for (const auto& [center, nbrs] : adj) {
    for (size_t i = 0; i < nbrs.size(); ++i)
      for (size_t j = i + 1; j < nbrs.size(); ++j)
        wedges[{nbrs[i], nbrs[j]}] += 1;
  }
  std::map<std::pair<std::string, std::string>, double> out;
  for (const auto& [pair, common] : wedges) {
    double du = adj.at(pair.first).size();
    double dv = adj.at(pair.second).size();
    out[pair] = common / (du + dv - common);
  }
  return out;
}

int64_t bruteSupport(const EdgeSet& g, const std::string& u,
                     const std::string& v) {
  auto adj = g.adjacency();
  auto it = adj.find(u);
  auto jt = adj.find(v);
  if (it == adj.end() || jt == adj.end()) return 0;
  const auto& a = it->second;
  const auto& b = jt->second;
  int64_t n = 0;
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

EdgeSet bruteTruss(const EdgeSet& g, int64_t k) {
  if (k < 3) throw ParameterError("k-truss needs k >= 3");
  EdgeSet cur = g;
  for (;;) {
    auto adj = cur.adjacency();
    std::vector<std::pair<std::string, std::string>> doomed;
    for (const auto& [u, v] : cur.edges()) {
      // support = |N(u) ∩ N(v)| over sorted neighbor lists
      const auto& a = adj.at(u);
      const auto& b = adj.at(v);
      int64_t support = 0;
      size_t i = 0, j = 0;
      while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
          ++i;
        else if (b[j] < a[i])
          ++j;
        else {
          ++support;
          ++i;
          ++j;
        }
      }
      if (support < k - 2) doomed.emplace_back(u, v);
    }
    if (doomed.empty()) return cur;
    EdgeSet next;
    for (const auto& e : cur.edges())
      if (!std::binary_search(doomed.begin(), doomed.end(), e))
        next.add(e.first, e.second);
    cur = std::move(next);
    if (cur.empty()) return cur;
  }
}

}  // namespace graphbench
