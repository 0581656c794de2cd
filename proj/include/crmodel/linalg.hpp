#pragma once

#include "gaussian.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace crmodel {

/// Sparse row: (column, value) sorted by column, no zeros.
template <class F>
using SparseRow = std::vector<std::pair<int, F>>;

template <class F>
void axpy(SparseRow<F>& r, const F& a, const SparseRow<F>& x) // r += a*x
{
  SparseRow<F> out;
  out.reserve(r.size() + x.size());
  size_t i = 0, j = 0;
  while (i < r.size() || j < x.size()) {
    if (j == x.size() || (i < r.size() && r[i].first < x[j].first)) {
      out.push_back(std::move(r[i++]));
    }
    else if (i == r.size() || x[j].first < r[i].first) {
      out.emplace_back(x[j].first, a * x[j].second);
      ++j;
    }
    else {
      F v = r[i].second + a * x[j].second;
      if (v != 0) out.emplace_back(r[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  r.swap(out);
}

template <class F>
F entry(const SparseRow<F>& r, int col)
{
  auto it = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int c) { return e.first < c; });
  if (it != r.end() && it->first == col) return it->second;
  return F(0);
}

template <class F>
SparseRow<F> makeRow(std::map<int, F> m)
{
  SparseRow<F> r;
  for (auto& [c, v] : m)
    if (v != 0) r.emplace_back(c, v);
  return r;
}

/// Reduced row echelon form with the canonical (leftmost) pivots.
template <class F>
struct RRef {
  std::vector<SparseRow<F>> rows; // rows[k] has pivot pivots[k], normalized to 1
  std::vector<int> pivots;

  int rank() const { return int(pivots.size()); }
  bool isPivot(int c) const { return std::find(pivots.begin(), pivots.end(), c) != pivots.end(); }
};

template <class F>
RRef<F> rref(std::vector<SparseRow<F>> pending)
{
  RRef<F> R;
  pending.erase(std::remove_if(pending.begin(), pending.end(), [](const SparseRow<F>& r) { return r.empty(); }),
                pending.end());
  while (!pending.empty()) {
    size_t best = 0;
    for (size_t k = 1; k < pending.size(); ++k)
      if (pending[k].front().first < pending[best].front().first) best = k;
    SparseRow<F> piv = std::move(pending[best]);
    pending.erase(pending.begin() + long(best));
    int c = piv.front().first;
    F inv = F(1) / piv.front().second;
    for (auto& e : piv) e.second *= inv;
    auto clear = [&](SparseRow<F>& r) {
      F a = entry(r, c);
      if (a != 0) axpy(r, F(-a), piv);
    };
    for (auto& r : pending) clear(r);
    for (auto& r : R.rows) clear(r);
    pending.erase(std::remove_if(pending.begin(), pending.end(), [](const SparseRow<F>& r) { return r.empty(); }),
                  pending.end());
    R.rows.push_back(std::move(piv));
    R.pivots.push_back(c);
  }
  // order by pivot column
  std::vector<size_t> ord(R.rows.size());
  for (size_t k = 0; k < ord.size(); ++k) ord[k] = k;
  std::sort(ord.begin(), ord.end(), [&](size_t a, size_t b) { return R.pivots[a] < R.pivots[b]; });
  RRef<F> S;
  for (size_t k : ord) {
    S.rows.push_back(std::move(R.rows[k]));
    S.pivots.push_back(R.pivots[k]);
  }
  return S;
}

/// Null space basis of the system rows * x = 0 over ncols unknowns; one vector per free column.
template <class F>
std::vector<std::vector<F>> kernel(const std::vector<SparseRow<F>>& rows, int ncols)
{
  RRef<F> R = rref(rows);
  std::vector<char> piv(ncols, 0);
  for (int p : R.pivots) piv[p] = 1;
  std::vector<std::vector<F>> out;
  for (int f = 0; f < ncols; ++f) {
    if (piv[f]) continue;
    std::vector<F> x(ncols, F(0));
    x[f] = 1;
    for (size_t k = 0; k < R.rows.size(); ++k) {
      F a = entry(R.rows[k], f);
      if (a != 0) x[R.pivots[k]] = -a;
    }
    out.push_back(std::move(x));
  }
  return out;
}

/// One solution of rows * x = rhs (free unknowns set to zero), or nothing.
template <class F>
std::optional<std::vector<F>> solve(std::vector<SparseRow<F>> rows, const std::vector<F>& rhs, int ncols)
{
  for (size_t k = 0; k < rows.size(); ++k)
    if (rhs[k] != 0) rows[k].emplace_back(ncols, rhs[k]);
  RRef<F> R = rref(std::move(rows));
  std::vector<F> x(ncols, F(0));
  for (size_t k = 0; k < R.rows.size(); ++k) {
    if (R.pivots[k] == ncols) return std::nullopt;
    x[R.pivots[k]] = entry(R.rows[k], ncols);
  }
  return x;
}

template <class F>
int rank(const std::vector<SparseRow<F>>& rows)
{
  return rref(rows).rank();
}

/// Incrementally grown span with membership tests.
template <class F>
class Span {
public:
  SparseRow<F> reduce(SparseRow<F> v) const
  {
    for (;;) {
      bool changed = false;
      for (auto& e : v) {
        auto it = pivot_.find(e.first);
        if (it == pivot_.end()) continue;
        F a = e.second;
        axpy(v, F(-a), rows_[it->second]);
        changed = true;
        break;
      }
      if (!changed) return v;
    }
  }
  bool contains(const SparseRow<F>& v) const { return reduce(v).empty(); }
  /// returns true when v was independent
  bool insert(const SparseRow<F>& v)
  {
    SparseRow<F> r = reduce(v);
    if (r.empty()) return false;
    F inv = F(1) / r.front().second;
    for (auto& e : r) e.second *= inv;
    int c = r.front().first;
    for (auto& row : rows_) {
      F a = entry(row, c);
      if (a != 0) axpy(row, F(-a), r);
    }
    pivot_[c] = int(rows_.size());
    rows_.push_back(std::move(r));
    return true;
  }
  int dim() const { return int(rows_.size()); }

private:
  std::vector<SparseRow<F>> rows_;
  std::map<int, int> pivot_;
};

/// Coordinates of v in the basis (columns are the basis vectors), if v lies in their span.
template <class F>
std::optional<std::vector<F>> coordinates(const std::vector<SparseRow<F>>& basis, const SparseRow<F>& v)
{
  // unknown k multiplies basis[k]; equations are indexed by coordinate
  std::map<int, std::map<int, F>> eq;
  for (size_t k = 0; k < basis.size(); ++k)
    for (auto& [c, a] : basis[k]) eq[c][int(k)] = a;
  std::map<int, F> rhsMap;
  for (auto& [c, a] : v) {
    rhsMap[c] = a;
    eq[c];
  }
  std::vector<SparseRow<F>> rows;
  std::vector<F> rhs;
  for (auto& [c, m] : eq) {
    rows.push_back(makeRow(m));
    auto it = rhsMap.find(c);
    rhs.push_back(it == rhsMap.end() ? F(0) : it->second);
  }
  return solve(std::move(rows), rhs, int(basis.size()));
}

} // namespace crmodel
