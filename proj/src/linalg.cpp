#include "qha/linalg.hpp"

#include <algorithm>
#include <cassert>
#include <regex>
#include <stdexcept>

namespace qha {

Scalar scalar_from_string(const std::string& s) {
  static const std::regex pat(R"(^-?\d+(/\d+)?$)");
  if (!std::regex_match(s, pat))
    throw std::invalid_argument("not a rational literal: " + s);
  if (s.find('/') != std::string::npos &&
      s.substr(s.find('/') + 1).find_first_not_of('0') == std::string::npos)
    throw std::invalid_argument("zero denominator: " + s);
  Scalar x(s);
  x.canonicalize();
  return x;
}

std::string scalar_to_string(const Scalar& x) {
  if (x.get_den() == 1) return x.get_num().get_str();
  return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Space Space::std_basis(const std::string& prefix, int n) {
  Space s;
  s.labels.reserve(n);
  for (int i = 1; i <= n; ++i) s.labels.push_back(prefix + std::to_string(i));
  return s;
}

Space tensor(const Space& a, const Space& b) {
  Space out;
  out.labels.reserve(a.labels.size() * b.labels.size());
  for (const auto& x : a.labels)
    for (const auto& y : b.labels) out.labels.push_back(x + "⊗" + y);
  return out;
}

Space direct_sum(const Space& a, const Space& b) {
  Space out = a;
  out.labels.insert(out.labels.end(), b.labels.begin(), b.labels.end());
  return out;
}

LinearMap LinearMap::identity(const Space& s) {
  LinearMap m(s, s);
  for (int i = 0; i < s.dim(); ++i) m.set(i, i, 1);
  return m;
}

void LinearMap::set(int row, int col, const Scalar& v) {
  assert(0 <= row && row < tgt_.dim() && 0 <= col && col < src_.dim());
  if (qha::is_zero(v))
    entries_.erase({row, col});
  else
    entries_[{row, col}] = v;
}

void LinearMap::add_to(int row, int col, const Scalar& v) {
  if (qha::is_zero(v)) return;
  assert(0 <= row && row < tgt_.dim() && 0 <= col && col < src_.dim());
  auto it = entries_.find({row, col});
  if (it == entries_.end()) {
    entries_[{row, col}] = v;
  } else {
    it->second += v;
    if (qha::is_zero(it->second)) entries_.erase(it);
  }
}

Scalar LinearMap::get(int row, int col) const {
  auto it = entries_.find({row, col});
  return it == entries_.end() ? Scalar(0) : it->second;
}

Vec LinearMap::apply(const Vec& x) const {
  assert(static_cast<int>(x.size()) == src_.dim());
  Vec y(tgt_.dim(), Scalar(0));
  for (const auto& [rc, v] : entries_) {
    if (!qha::is_zero(x[rc.second])) y[rc.first] += v * x[rc.second];
  }
  return y;
}

bool LinearMap::same_matrix(const LinearMap& o) const {
  return src_.dim() == o.src_.dim() && tgt_.dim() == o.tgt_.dim() &&
         entries_ == o.entries_;
}

LinearMap LinearMap::operator+(const LinearMap& o) const {
  assert(src_.dim() == o.src_.dim() && tgt_.dim() == o.tgt_.dim());
  LinearMap out = *this;
  for (const auto& [rc, v] : o.entries_) out.add_to(rc.first, rc.second, v);
  return out;
}

LinearMap LinearMap::operator-(const LinearMap& o) const {
  assert(src_.dim() == o.src_.dim() && tgt_.dim() == o.tgt_.dim());
  LinearMap out = *this;
  for (const auto& [rc, v] : o.entries_) out.add_to(rc.first, rc.second, -v);
  return out;
}

LinearMap LinearMap::scaled(const Scalar& c) const {
  LinearMap out(src_, tgt_);
  if (qha::is_zero(c)) return out;
  for (const auto& [rc, v] : entries_) out.entries_[rc] = v * c;
  return out;
}

LinearMap compose(const LinearMap& g, const LinearMap& f) {
  assert(f.tgt().dim() == g.src().dim());
  // index g by source column for the sparse product
  std::map<int, std::vector<std::pair<int, Scalar>>> gcol;
  for (const auto& [rc, v] : g.entries()) gcol[rc.second].push_back({rc.first, v});
  LinearMap out(f.src(), g.tgt());
  for (const auto& [rc, v] : f.entries()) {
    auto it = gcol.find(rc.first);
    if (it == gcol.end()) continue;
    for (const auto& [row, gv] : it->second) out.add_to(row, rc.second, gv * v);
  }
  return out;
}

LinearMap kron(const LinearMap& f, const LinearMap& g) {
  LinearMap out(tensor(f.src(), g.src()), tensor(f.tgt(), g.tgt()));
  const int gsd = g.src().dim(), gtd = g.tgt().dim();
  for (const auto& [frc, fv] : f.entries())
    for (const auto& [grc, gv] : g.entries())
      out.set(frc.first * gtd + grc.first, frc.second * gsd + grc.second,
              fv * gv);
  return out;
}

namespace {

// Sparse integer row, sorted by column.
using ZRow = std::map<int, mpz_class>;

void strip_content(ZRow& r) {
  mpz_class g = 0;
  for (const auto& [c, v] : r) {
    g = gcd(g, v);
    if (g == 1) return;
  }
  if (g > 1)
    for (auto& [c, v] : r) v /= g;
}

// Row-major sparse integer rows of the matrix, denominators cleared.  Row
// scaling does not change row space, rank or kernel.
std::vector<ZRow> integer_rows(const LinearMap& m) {
  std::vector<ZRow> rows(m.tgt().dim());
  std::vector<std::map<int, Scalar>> qrows(m.tgt().dim());
  for (const auto& [rc, v] : m.entries()) qrows[rc.first][rc.second] = v;
  for (int i = 0; i < m.tgt().dim(); ++i) {
    mpz_class l = 1;
    for (const auto& [c, v] : qrows[i]) l = lcm(l, v.get_den());
    for (const auto& [c, v] : qrows[i])
      rows[i][c] = v.get_num() * (l / v.get_den());
    strip_content(rows[i]);
  }
  std::erase_if(rows, [](const ZRow& r) { return r.empty(); });
  return rows;
}

// w := (p*w - e*piv) / content where p = piv[c], e = w[c]; the leading
// column of the result is > c.  Fraction-free: all arithmetic stays in Z.
ZRow eliminate_lead(const ZRow& w, const ZRow& piv, int c) {
  mpz_class p = piv.at(c), e = w.at(c);
  mpz_class g = gcd(p, e);
  p /= g;
  e /= g;
  ZRow out;
  for (const auto& [col, v] : w) out[col] = v * p;
  for (const auto& [col, v] : piv) {
    mpz_class t = e * v;
    auto it = out.find(col);
    if (it == out.end()) {
      if (t != 0) out[col] = -t;
    } else {
      it->second -= t;
      if (it->second == 0) out.erase(it);
    }
  }
  strip_content(out);
  return out;
}

struct Echelon {
  int ncols = 0;
  std::vector<int> pivcols;
  std::vector<ZRow> rows;  // rows[k] leads at pivcols[k]
};

// Fraction-free forward elimination (Bareiss-style cross-multiplication with
// content removal).  Rows not sharing the current leading column are left
// untouched, so permutation-like matrices eliminate in near-linear time.
Echelon eliminate(std::vector<ZRow> work, int ncols) {
  Echelon e;
  e.ncols = ncols;
  while (!work.empty()) {
    int lead = ncols;
    for (const auto& r : work) lead = std::min(lead, r.begin()->first);
    // pick the pivot with the smallest leading entry, then fewest nonzeros
    size_t best = work.size();
    std::pair<size_t, size_t> bestkey{SIZE_MAX, SIZE_MAX};
    for (size_t i = 0; i < work.size(); ++i) {
      if (work[i].begin()->first != lead) continue;
      std::pair<size_t, size_t> key{
          mpz_sizeinbase(work[i].begin()->second.get_mpz_t(), 2),
          work[i].size()};
      if (key < bestkey) {
        bestkey = key;
        best = i;
      }
    }
    ZRow piv = std::move(work[best]);
    work.erase(work.begin() + best);
    std::vector<ZRow> next;
    next.reserve(work.size());
    for (auto& r : work) {
      if (r.begin()->first == lead) {
        ZRow red = eliminate_lead(r, piv, lead);
        if (!red.empty()) next.push_back(std::move(red));
      } else {
        next.push_back(std::move(r));
      }
    }
    e.pivcols.push_back(lead);
    e.rows.push_back(std::move(piv));
    work = std::move(next);
  }
  // echelon rows in pivot-column order
  std::vector<size_t> order(e.pivcols.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return e.pivcols[a] < e.pivcols[b]; });
  Echelon sorted;
  sorted.ncols = ncols;
  for (size_t i : order) {
    sorted.pivcols.push_back(e.pivcols[i]);
    sorted.rows.push_back(std::move(e.rows[i]));
  }
  return sorted;
}

// Rational backward pass: pivots scaled to 1, pivot columns cleared above.
Rref reduce(const Echelon& e) {
  const int k = static_cast<int>(e.pivcols.size());
  std::vector<std::map<int, Scalar>> rr(k);
  for (int i = 0; i < k; ++i) {
    Scalar pv(e.rows[i].at(e.pivcols[i]));
    for (const auto& [c, v] : e.rows[i]) rr[i][c] = Scalar(v) / pv;
  }
  for (int i = k - 1; i >= 0; --i) {
    for (int j = 0; j < i; ++j) {
      auto it = rr[j].find(e.pivcols[i]);
      if (it == rr[j].end()) continue;
      Scalar c = it->second;
      rr[j].erase(it);
      for (const auto& [col, v] : rr[i]) {
        if (col == e.pivcols[i]) continue;
        auto jt = rr[j].find(col);
        if (jt == rr[j].end()) {
          rr[j][col] = -c * v;
        } else {
          jt->second -= c * v;
          if (is_zero(jt->second)) rr[j].erase(jt);
        }
      }
    }
  }
  Rref out;
  out.ncols = e.ncols;
  out.pivot_cols = e.pivcols;
  for (int i = 0; i < k; ++i) {
    Vec row(e.ncols, Scalar(0));
    for (const auto& [c, v] : rr[i]) row[c] = v;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace

long rank(const LinearMap& m) {
  return static_cast<long>(
      eliminate(integer_rows(m), m.src().dim()).pivcols.size());
}

Rref rref(const LinearMap& m) {
  return reduce(eliminate(integer_rows(m), m.src().dim()));
}

std::vector<Vec> kernel_basis(const LinearMap& m) {
  const int n = m.src().dim();
  Rref r = rref(m);
  std::vector<bool> is_pivot(n, false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vec v(n, Scalar(0));
    v[f] = 1;
    for (size_t k = 0; k < r.pivot_cols.size(); ++k)
      v[r.pivot_cols[k]] = -r.rows[k][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const LinearMap& m, const Vec& b) {
  assert(static_cast<int>(b.size()) == m.tgt().dim());
  const int n = m.src().dim();
  // augmented system [A | b], b as column n
  std::vector<std::map<int, Scalar>> qrows(m.tgt().dim());
  for (const auto& [rc, v] : m.entries()) qrows[rc.first][rc.second] = v;
  for (int i = 0; i < m.tgt().dim(); ++i)
    if (!is_zero(b[i])) qrows[i][n] = b[i];
  std::vector<ZRow> rows;
  for (auto& qr : qrows) {
    if (qr.empty()) continue;
    mpz_class l = 1;
    for (const auto& [c, v] : qr) l = lcm(l, v.get_den());
    ZRow zr;
    for (const auto& [c, v] : qr) zr[c] = v.get_num() * (l / v.get_den());
    strip_content(zr);
    rows.push_back(std::move(zr));
  }
  Rref r = reduce(eliminate(std::move(rows), n + 1));
  Vec x(n, Scalar(0));
  for (size_t k = 0; k < r.pivot_cols.size(); ++k) {
    if (r.pivot_cols[k] == n) return std::nullopt;  // pivot in the b column
    x[r.pivot_cols[k]] = r.rows[k][n];
  }
  return x;
}

Subquotient subquotient(const Space& ambient, const LinearMap& f,
                        const LinearMap& g, SubquotientMode mode) {
  assert(f.src().dim() == g.src().dim() && f.tgt().dim() == g.tgt().dim());
  LinearMap d = f - g;
  if (mode == SubquotientMode::equalizer) {
    assert(ambient.dim() == d.src().dim());
    Rref r = rref(d);
    std::vector<bool> is_pivot(ambient.dim(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;
    Space sub;
    for (int c = 0; c < ambient.dim(); ++c)
      if (!is_pivot[c]) sub.labels.push_back(ambient.labels[c]);
    LinearMap inc(sub, ambient);
    int col = 0;
    for (const Vec& v : kernel_basis(d)) {
      for (int i = 0; i < ambient.dim(); ++i)
        if (!is_zero(v[i])) inc.set(i, col, v[i]);
      ++col;
    }
    return {std::move(sub), std::move(inc)};
  }
  // coequalizer: row space of d's transpose spans im(f-g) inside ambient
  assert(ambient.dim() == d.tgt().dim());
  LinearMap dt(d.tgt(), d.src());
  for (const auto& [rc, v] : d.entries()) dt.set(rc.second, rc.first, v);
  Rref r = rref(dt);
  std::vector<bool> is_pivot(ambient.dim(), false);
  for (int c : r.pivot_cols) is_pivot[c] = true;
  Space quot;
  std::vector<int> kept_index(ambient.dim(), -1);
  for (int c = 0; c < ambient.dim(); ++c) {
    if (is_pivot[c]) continue;
    kept_index[c] = quot.dim();
    quot.labels.push_back("[" + ambient.labels[c] + "]");
  }
  LinearMap proj(ambient, quot);
  for (int c = 0; c < ambient.dim(); ++c)
    if (kept_index[c] >= 0) proj.set(kept_index[c], c, 1);
  // a pivot coordinate is congruent to minus the free part of its rref row
  for (size_t k = 0; k < r.pivot_cols.size(); ++k) {
    const int p = r.pivot_cols[k];
    for (int c = 0; c < ambient.dim(); ++c)
      if (kept_index[c] >= 0 && !is_zero(r.rows[k][c]))
        proj.set(kept_index[c], p, -r.rows[k][c]);
  }
  return {std::move(quot), std::move(proj)};
}

}  // namespace qha
