#include "qha/cochain.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace qha {

Space CochainComplex::component(int n) const {
  auto it = components.find(n);
  return it == components.end() ? Space{} : it->second;
}

LinearMap CochainComplex::differential(int n) const {
  auto it = differentials.find(n);
  if (it != differentials.end()) return it->second;
  return LinearMap::zero(component(n), component(n + 1));
}

std::pair<int, int> CochainComplex::degree_window() const {
  int lo = 0, hi = -1;
  bool any = false;
  for (const auto& [n, sp] : components) {
    if (sp.dim() == 0) continue;
    if (!any) {
      lo = hi = n;
      any = true;
    } else {
      lo = std::min(lo, n);
      hi = std::max(hi, n);
    }
  }
  return {lo, hi};
}

void CochainComplex::set_differential(int n, LinearMap d) {
  assert(d.src().dim() == component(n).dim());
  assert(d.tgt().dim() == component(n + 1).dim());
  differentials[n] = std::move(d);
}

void CochainComplex::validate() const {
  auto [lo, hi] = degree_window();
  for (int n = lo - 1; n <= hi; ++n) {
    LinearMap d0 = differential(n);
    assert(d0.src().dim() == component(n).dim());
    assert(d0.tgt().dim() == component(n + 1).dim());
    LinearMap dd = compose(differential(n + 1), d0);
    if (!dd.is_zero()) throw std::logic_error("d∘d != 0");
  }
}

LinearMap ComplexMap::layer(int n) const {
  auto it = layers.find(n);
  if (it != layers.end()) return it->second;
  return LinearMap::zero(source.component(n), target.component(n));
}

void ComplexMap::set_layer(int n, LinearMap f) {
  assert(f.src().dim() == source.component(n).dim());
  assert(f.tgt().dim() == target.component(n).dim());
  layers[n] = std::move(f);
}

void ComplexMap::validate() const {
  auto [slo, shi] = source.degree_window();
  auto [tlo, thi] = target.degree_window();
  int lo = std::min(slo, tlo), hi = std::max(shi, thi);
  for (int n = lo; n <= hi; ++n) {
    LinearMap lhs = compose(layer(n + 1), source.differential(n));
    LinearMap rhs = compose(target.differential(n), layer(n));
    if (!lhs.same_matrix(rhs)) throw std::logic_error("not a chain map");
  }
}

ComplexMap identity_map(const CochainComplex& c) {
  ComplexMap f;
  f.source = c;
  f.target = c;
  for (const auto& [n, sp] : c.components)
    f.layers[n] = LinearMap::identity(sp);
  return f;
}

ComplexMap compose_maps(const ComplexMap& g, const ComplexMap& f) {
  ComplexMap out;
  out.source = f.source;
  out.target = g.target;
  auto [lo1, hi1] = f.source.degree_window();
  auto [lo2, hi2] = g.target.degree_window();
  int lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
  for (int n = lo; n <= hi; ++n) {
    LinearMap l = compose(g.layer(n), f.layer(n));
    if (l.src().dim() > 0 && l.tgt().dim() > 0) out.layers[n] = std::move(l);
  }
  return out;
}

bool same_map(const ComplexMap& a, const ComplexMap& b) {
  auto [lo1, hi1] = a.source.degree_window();
  auto [lo2, hi2] = b.source.degree_window();
  int lo = std::min(lo1, lo2), hi = std::max(hi1, hi2);
  for (int n = lo; n <= hi; ++n) {
    if (a.source.component(n).dim() != b.source.component(n).dim()) return false;
    if (a.target.component(n).dim() != b.target.component(n).dim()) return false;
    if (!a.layer(n).same_matrix(b.layer(n))) return false;
  }
  return true;
}

std::map<int, int> cohomology_dims(const CochainComplex& c) {
  std::map<int, int> out;
  auto [lo, hi] = c.degree_window();
  for (int n = lo; n <= hi; ++n) {
    long zr = c.component(n).dim() - rank(c.differential(n));
    out[n] = static_cast<int>(zr - rank(c.differential(n - 1)));
  }
  return out;
}

CohomologySpace cohomology_at(const CochainComplex& c, int n) {
  LinearMap dn = c.differential(n);
  auto [z, inc] =
      subquotient(c.component(n), dn, LinearMap::zero(dn.src(), dn.tgt()),
                  SubquotientMode::equalizer);
  // express boundaries in cocycle coordinates
  LinearMap dprev = c.differential(n - 1);
  LinearMap bz(dprev.src(), z);
  for (int j = 0; j < dprev.src().dim(); ++j) {
    Vec col(dprev.src().dim(), Scalar(0));
    col[j] = 1;
    Vec b = dprev.apply(col);
    auto coords = solve(inc, b);
    assert(coords.has_value());  // boundaries are cocycles
    for (int i = 0; i < z.dim(); ++i)
      if (!is_zero((*coords)[i])) bz.set(i, j, (*coords)[i]);
  }
  auto [h, proj] = subquotient(z, bz, LinearMap::zero(bz.src(), bz.tgt()),
                               SubquotientMode::coequalizer);
  return {std::move(h), std::move(inc), std::move(proj)};
}

LinearMap induced_h_map(const ComplexMap& f, int n) {
  CohomologySpace hs = cohomology_at(f.source, n);
  CohomologySpace ht = cohomology_at(f.target, n);
  LinearMap out(hs.h, ht.h);
  LinearMap fn = f.layer(n);
  for (int i = 0; i < hs.h.dim(); ++i) {
    Vec ei(hs.h.dim(), Scalar(0));
    ei[i] = 1;
    auto zrep = solve(hs.projection, ei);
    assert(zrep.has_value());  // projection is surjective
    Vec v = fn.apply(hs.z_inclusion.apply(*zrep));
    auto coords = solve(ht.z_inclusion, v);
    assert(coords.has_value());  // chain maps preserve cocycles
    Vec hclass = ht.projection.apply(*coords);
    for (int r = 0; r < ht.h.dim(); ++r)
      if (!is_zero(hclass[r])) out.set(r, i, hclass[r]);
  }
  return out;
}

QuasiIsoReport is_quasi_iso(const ComplexMap& f) {
  QuasiIsoReport rep;
  auto [slo, shi] = f.source.degree_window();
  auto [tlo, thi] = f.target.degree_window();
  int lo = std::min(slo, tlo), hi = std::max(shi, thi);
  std::map<int, int> hsrc = cohomology_dims(f.source);
  std::map<int, int> htgt = cohomology_dims(f.target);
  for (int n = lo; n <= hi; ++n) {
    int a = hsrc.count(n) ? hsrc[n] : 0;
    int b = htgt.count(n) ? htgt[n] : 0;
    bool bij;
    if (a == 0 && b == 0) {
      bij = true;
    } else {
      LinearMap ind = induced_h_map(f, n);
      bij = (a == b) && rank(ind) == a;
    }
    rep.degrees[n] = {a, b, bij ? 1 : 0};
    rep.ok = rep.ok && bij;
  }
  return rep;
}

CochainComplex cone(const ComplexMap& f) {
  CochainComplex out;
  auto [slo, shi] = f.source.degree_window();
  auto [tlo, thi] = f.target.degree_window();
  int lo = std::min(slo - 1, tlo), hi = std::max(shi - 1, thi);
  for (int n = lo; n <= hi; ++n) {
    Space s = f.source.component(n + 1);
    Space shifted;
    for (const auto& l : s.labels) shifted.labels.push_back("s:" + l);
    Space comp = direct_sum(shifted, f.target.component(n));
    if (comp.dim() > 0) out.components[n] = comp;
  }
  for (int n = lo; n <= hi; ++n) {
    LinearMap d(out.component(n), out.component(n + 1));
    int sdim = f.source.component(n + 1).dim();
    int sdim_next = f.source.component(n + 2).dim();
    LinearMap ds = f.source.differential(n + 1);
    LinearMap dt = f.target.differential(n);
    LinearMap fn = f.layer(n + 1);
    for (const auto& [rc, v] : ds.entries()) d.set(rc.first, rc.second, -v);
    for (const auto& [rc, v] : fn.entries())
      d.set(sdim_next + rc.first, rc.second, v);
    for (const auto& [rc, v] : dt.entries())
      d.set(sdim_next + rc.first, sdim + rc.second, v);
    if (!d.is_zero()) out.differentials[n] = std::move(d);
  }
  out.validate();
  return out;
}

TensorLayout tensor_layout(const CochainComplex& a, const CochainComplex& b) {
  TensorLayout out;
  for (const auto& [p, ap] : a.components) {
    if (ap.dim() == 0) continue;
    for (const auto& [q, bq] : b.components) {
      if (bq.dim() == 0) continue;
      out.blocks[p + q].push_back({p, q, 0, ap.dim(), bq.dim()});
    }
  }
  for (auto& [n, blocks] : out.blocks) {
    std::sort(blocks.begin(), blocks.end());
    int off = 0;
    for (auto& blk : blocks) {
      blk[2] = off;
      off += blk[3] * blk[4];
    }
  }
  return out;
}

namespace {

// offset of block (p, q) in total degree p+q, or -1 when absent
int block_offset(const TensorLayout& lay, int p, int q) {
  auto it = lay.blocks.find(p + q);
  if (it == lay.blocks.end()) return -1;
  for (const auto& blk : it->second)
    if (blk[0] == p && blk[1] == q) return blk[2];
  return -1;
}

}  // namespace

CochainComplex tensor_complexes(const CochainComplex& a,
                                const CochainComplex& b) {
  TensorLayout lay = tensor_layout(a, b);
  CochainComplex out;
  for (const auto& [n, blocks] : lay.blocks) {
    Space sp;
    for (const auto& blk : blocks) {
      Space t = tensor(a.component(blk[0]), b.component(blk[1]));
      sp.labels.insert(sp.labels.end(), t.labels.begin(), t.labels.end());
    }
    out.components[n] = std::move(sp);
  }
  for (const auto& [n, blocks] : lay.blocks) {
    LinearMap d(out.component(n), out.component(n + 1));
    for (const auto& blk : blocks) {
      const int p = blk[0], q = blk[1], off = blk[2], dq = blk[4];
      LinearMap da = a.differential(p);
      int offA = block_offset(lay, p + 1, q);
      if (offA >= 0 && !da.is_zero()) {
        for (const auto& [rc, v] : da.entries())
          for (int k = 0; k < dq; ++k)
            d.add_to(offA + rc.first * dq + k, off + rc.second * dq + k, v);
      }
      LinearMap db = b.differential(q);
      int offB = block_offset(lay, p, q + 1);
      if (offB >= 0 && !db.is_zero()) {
        const int dqn = b.component(q + 1).dim();
        Scalar sign((p % 2 == 0) ? 1 : -1);
        for (const auto& [rc, v] : db.entries())
          for (int i = 0; i < blk[3]; ++i)
            d.add_to(offB + i * dqn + rc.first, off + i * dq + rc.second,
                     sign * v);
      }
    }
    if (!d.is_zero()) out.differentials[n] = std::move(d);
  }
  out.validate();
  return out;
}

ComplexMap tensor_map(const ComplexMap& f, const ComplexMap& g) {
  TensorLayout lsrc = tensor_layout(f.source, g.source);
  TensorLayout ltgt = tensor_layout(f.target, g.target);
  ComplexMap out;
  out.source = tensor_complexes(f.source, g.source);
  out.target = tensor_complexes(f.target, g.target);
  for (const auto& [n, blocks] : lsrc.blocks) {
    LinearMap l(out.source.component(n), out.target.component(n));
    for (const auto& blk : blocks) {
      const int p = blk[0], q = blk[1], off = blk[2], dq = blk[4];
      int offT = block_offset(ltgt, p, q);
      if (offT < 0) continue;
      const int dqT = g.target.component(q).dim();
      LinearMap fp = f.layer(p), gq = g.layer(q);
      for (const auto& [frc, fv] : fp.entries())
        for (const auto& [grc, gv] : gq.entries())
          l.add_to(offT + frc.first * dqT + grc.first,
                   off + frc.second * dq + grc.second, fv * gv);
    }
    if (!l.is_zero()) out.layers[n] = std::move(l);
  }
  out.validate();
  return out;
}

namespace {

std::vector<std::vector<int>> combinations(int n, int l) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == l) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i <= n; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

std::string wedge_label(const std::vector<int>& s) {
  if (s.empty()) return "1";
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (i) out += "∧";
    out += "e" + std::to_string(s[i]);
  }
  return out;
}

}  // namespace

CochainComplex lambda_complex(int n) {
  if (n < 1) throw std::invalid_argument("lambda_complex needs n >= 1");
  CochainComplex out;
  std::vector<std::vector<std::vector<int>>> subs(n + 1);
  std::vector<std::map<std::vector<int>, int>> index(n + 1);
  for (int l = 0; l <= n; ++l) {
    subs[l] = combinations(n, l);
    Space sp;
    for (size_t j = 0; j < subs[l].size(); ++j) {
      index[l][subs[l][j]] = static_cast<int>(j);
      sp.labels.push_back(wedge_label(subs[l][j]));
    }
    out.components[-l] = std::move(sp);
  }
  for (int l = 1; l <= n; ++l) {
    LinearMap d(out.component(-l), out.component(-l + 1));
    for (size_t j = 0; j < subs[l].size(); ++j) {
      const auto& s = subs[l][j];
      for (size_t pos = 0; pos < s.size(); ++pos) {
        std::vector<int> t = s;
        t.erase(t.begin() + pos);
        d.add_to(index[l - 1][t], static_cast<int>(j),
                 Scalar((pos % 2 == 0) ? 1 : -1));
      }
    }
    out.set_differential(-l, std::move(d));
  }
  out.validate();
  return out;
}

std::map<int, LinearMap> lambda_contracting_homotopy(int n) {
  CochainComplex c = lambda_complex(n);
  std::vector<std::vector<std::vector<int>>> subs(n + 1);
  std::vector<std::map<std::vector<int>, int>> index(n + 1);
  for (int l = 0; l <= n; ++l) {
    subs[l] = combinations(n, l);
    for (size_t j = 0; j < subs[l].size(); ++j)
      index[l][subs[l][j]] = static_cast<int>(j);
  }
  std::map<int, LinearMap> h;
  Scalar inv_n(1, n);
  inv_n.canonicalize();
  for (int l = 0; l < n; ++l) {
    // h : degree -l -> degree -l-1, ω ↦ (1/n)(e1+...+en)∧ω
    LinearMap hl(c.component(-l), c.component(-l - 1));
    for (size_t j = 0; j < subs[l].size(); ++j) {
      const auto& s = subs[l][j];
      for (int i = 1; i <= n; ++i) {
        if (std::binary_search(s.begin(), s.end(), i)) continue;
        std::vector<int> t = s;
        t.insert(std::lower_bound(t.begin(), t.end(), i), i);
        int below = static_cast<int>(
            std::lower_bound(s.begin(), s.end(), i) - s.begin());
        Scalar coeff = inv_n;
        if (below % 2 == 1) coeff = -coeff;
        hl.add_to(index[l + 1][t], static_cast<int>(j), coeff);
      }
    }
    h[-l] = std::move(hl);
  }
  return h;
}

namespace {

// collapse-to-one-generator map Λ(src with n generators) -> Λ(U₁)
ComplexMap psi_collapse(const CochainComplex& lam_n, int n,
                        const CochainComplex& lam_1) {
  ComplexMap psi;
  psi.source = lam_n;
  psi.target = lam_1;
  LinearMap l0(lam_n.component(0), lam_1.component(0));
  l0.set(0, 0, 1);
  psi.layers[0] = std::move(l0);
  LinearMap l1(lam_n.component(-1), lam_1.component(-1));
  for (int i = 0; i < n; ++i) l1.set(0, i, 1);
  psi.layers[-1] = std::move(l1);
  psi.validate();
  return psi;
}

}  // namespace

LambdaMaps lambda_maps(int n, int m) {
  LambdaMaps out;
  CochainComplex lam_v = lambda_complex(n);
  CochainComplex lam_w = lambda_complex(m);
  CochainComplex lam_vw = lambda_complex(n + m);
  CochainComplex lam_1 = lambda_complex(1);
  CochainComplex vw_tensor = tensor_complexes(lam_v, lam_w);
  TensorLayout lay = tensor_layout(lam_v, lam_w);

  // subset indices for the three exterior algebras
  auto build_index = [](int gens) {
    std::vector<std::map<std::vector<int>, int>> idx(gens + 1);
    for (int l = 0; l <= gens; ++l) {
      auto cs = combinations(gens, l);
      for (size_t j = 0; j < cs.size(); ++j)
        idx[l][cs[j]] = static_cast<int>(j);
    }
    return idx;
  };
  auto idx_v = build_index(n), idx_w = build_index(m),
       idx_vw = build_index(n + m);

  // β: e_S ↦ e_{S∩V} ⊗ e_{S∩W}; the chain-map property (checked below)
  // pins all signs to +1 under d(a⊗b) = da⊗b + (-1)^{deg a} a⊗db
  out.beta.source = lam_vw;
  out.beta.target = vw_tensor;
  for (int l = 0; l <= n + m; ++l) {
    LinearMap bl(lam_vw.component(-l), vw_tensor.component(-l));
    auto cs = combinations(n + m, l);
    for (size_t j = 0; j < cs.size(); ++j) {
      std::vector<int> sv, sw;
      for (int i : cs[j])
        (i <= n ? sv : sw).push_back(i <= n ? i : i - n);
      int p = -static_cast<int>(sv.size()), q = -static_cast<int>(sw.size());
      int off = block_offset(lay, p, q);
      assert(off >= 0);
      int wdim = lam_w.component(q).dim();
      bl.set(off + idx_v[sv.size()][sv] * wdim + idx_w[sw.size()][sw],
             static_cast<int>(j), 1);
    }
    out.beta.layers[-l] = std::move(bl);
  }
  out.beta.validate();

  out.psi_v = psi_collapse(lam_v, n, lam_1);
  out.psi_w = psi_collapse(lam_w, m, lam_1);
  out.psi_vw = psi_collapse(lam_vw, n + m, lam_1);

  // σ merges the two generators: 1⊗1 ↦ 1, e₁⊗1 and 1⊗e₁ ↦ e₁, e₁⊗e₁ ↦ 0
  CochainComplex uu = tensor_complexes(lam_1, lam_1);
  TensorLayout ulay = tensor_layout(lam_1, lam_1);
  out.sigma.source = uu;
  out.sigma.target = lam_1;
  {
    LinearMap l0(uu.component(0), lam_1.component(0));
    l0.set(0, 0, 1);
    out.sigma.layers[0] = std::move(l0);
    LinearMap l1(uu.component(-1), lam_1.component(-1));
    l1.set(0, block_offset(ulay, -1, 0), 1);
    l1.set(0, block_offset(ulay, 0, -1), 1);
    out.sigma.layers[-1] = std::move(l1);
  }
  out.sigma.validate();

  ComplexMap right = compose_maps(
      out.sigma, compose_maps(tensor_map(out.psi_v, out.psi_w), out.beta));
  out.commutation = same_map(right, out.psi_vw);
  return out;
}

}  // namespace qha
