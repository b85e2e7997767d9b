#include "nilbal/lie.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace nilbal {

LieAlgebra::LieAlgebra(std::vector<std::string> basis) : names_(std::move(basis)) {
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw InputError("lie algebra: empty basis name");
    if (!seen.insert(n).second) throw InputError("lie algebra: repeated basis name " + n);
  }
  const std::size_t n = names_.size();
  table_.assign(n, std::vector<std::vector<Rational>>(n, std::vector<Rational>(n)));
}

std::size_t LieAlgebra::index(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw InputError("lie algebra: unknown basis element " + name);
  return static_cast<std::size_t>(it - names_.begin());
}

void LieAlgebra::set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& value) {
  if (i >= dim() || j >= dim() || value.size() != dim()) throw InputError("lie algebra: bracket out of range");
  if (i == j) {
    for (const auto& x : value)
      if (x != 0) throw InputError("lie algebra: [a,a] must vanish");
    return;
  }
  table_[i][j] = value;
  for (std::size_t k = 0; k < dim(); ++k) table_[j][i][k] = -value[k];
}

void LieAlgebra::set_bracket(const std::string& a, const std::string& b,
                             const std::vector<std::pair<std::string, Rational>>& value) {
  std::vector<Rational> v(dim());
  for (const auto& [name, coef] : value) v[index(name)] += coef;
  set_bracket(index(a), index(b), v);
}

std::vector<Rational> LieAlgebra::bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const {
  std::vector<Rational> out(dim());
  for (std::size_t i = 0; i < dim(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < dim(); ++j) {
      if (b[j] == 0 || i == j) continue;
      Rational s = a[i] * b[j];
      for (std::size_t k = 0; k < dim(); ++k) out[k] += s * table_[i][j][k];
    }
  }
  return out;
}

namespace {

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n);
  v[i] = 1;
  return v;
}

bool is_zero(const std::vector<Rational>& v) {
  return std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; });
}

RationalMatrix rows_to_matrix(const std::vector<std::vector<Rational>>& rows, std::size_t cols) {
  RationalMatrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  return m;
}

std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::map<std::vector<std::size_t>, std::size_t> wedge_index(std::size_t n, std::size_t k) {
  std::map<std::vector<std::size_t>, std::size_t> out;
  auto basis = wedge_basis(n, k);
  for (std::size_t i = 0; i < basis.size(); ++i) out[basis[i]] = i;
  return out;
}

// Echelon basis of the coboundaries in degree k.
RowEchelon coboundaries(const LieAlgebra& L, std::size_t k, const Field& field) {
  if (k == 0) return row_echelon(RationalMatrix(0, 1), field);
  return row_echelon(ce_differential(L, k - 1).transpose(), field);
}

std::vector<Rational> reduce_all(std::vector<Rational> v, const Field& field) {
  for (auto& x : v) x = field.reduce(x);
  return v;
}

}  // namespace

LieCheck check_lie(const LieAlgebra& L) {
  LieCheck out;
  const std::size_t n = L.dim();
  for (std::size_t i = 0; i < n && !out.jacobi_violation; ++i)
    for (std::size_t j = i + 1; j < n && !out.jacobi_violation; ++j)
      for (std::size_t k = j + 1; k < n && !out.jacobi_violation; ++k) {
        auto a = unit(n, i), b = unit(n, j), c = unit(n, k);
        auto t1 = L.bracket(a, L.bracket(b, c));
        auto t2 = L.bracket(b, L.bracket(c, a));
        auto t3 = L.bracket(c, L.bracket(a, b));
        for (std::size_t m = 0; m < n; ++m) t1[m] += t2[m] + t3[m];
        if (!is_zero(t1)) out.jacobi_violation = std::array<std::size_t, 3>{i, j, k};
      }
  auto dims = lie_lcs_dims(L);
  out.nilpotent = dims.back() == 0;
  out.ok = !out.jacobi_violation && out.nilpotent;
  if (out.jacobi_violation) {
    const auto& t = *out.jacobi_violation;
    out.message = "Jacobi fails at (" + L.basis()[t[0]] + "," + L.basis()[t[1]] + "," + L.basis()[t[2]] + ")";
  } else if (!out.nilpotent) {
    out.message = "lower central series stabilizes at dimension " + std::to_string(dims.back());
  } else {
    out.message = "ok";
  }
  return out;
}

std::vector<std::size_t> lie_lcs_dims(const LieAlgebra& L) {
  const std::size_t n = L.dim();
  std::vector<std::vector<Rational>> term;
  for (std::size_t i = 0; i < n; ++i) term.push_back(unit(n, i));
  std::vector<std::size_t> dims{n};
  while (dims.back() > 0) {
    std::vector<std::vector<Rational>> next;
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& v : term) next.push_back(L.bracket(unit(n, i), v));
    RowEchelon e = row_echelon(rows_to_matrix(next, n));
    term.clear();
    for (std::size_t r = 0; r < e.rank(); ++r) {
      std::vector<Rational> v(n);
      for (std::size_t c = 0; c < n; ++c) v[c] = e.reduced(r, c);
      term.push_back(v);
    }
    if (term.size() == dims.back()) break;
    dims.push_back(term.size());
  }
  return dims;
}

std::vector<std::vector<std::size_t>> wedge_basis(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  if (k > n) return out;
  std::vector<std::size_t> cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  for (;;) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

RationalMatrix ce_differential(const LieAlgebra& L, std::size_t k) {
  const std::size_t n = L.dim();
  if (k > n) throw InputError("ce_differential: degree exceeds dimension");
  auto rows = wedge_basis(n, k + 1);
  auto cols = wedge_index(n, k);
  RationalMatrix d(rows.size(), binomial(n, k));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& J = rows[r];
    for (std::size_t a = 0; a < J.size(); ++a)
      for (std::size_t b = a + 1; b < J.size(); ++b) {
        const auto& v = L.bracket(J[a], J[b]);
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t < J.size(); ++t)
          if (t != a && t != b) rest.push_back(J[t]);
        const int outer = (a + b) % 2 ? -1 : 1;
        for (std::size_t m = 0; m < n; ++m) {
          if (v[m] == 0 || std::find(rest.begin(), rest.end(), m) != rest.end()) continue;
          std::size_t pos = std::lower_bound(rest.begin(), rest.end(), m) - rest.begin();
          std::vector<std::size_t> I = rest;
          I.insert(I.begin() + pos, m);
          d(r, cols.at(I)) += (pos % 2 ? -outer : outer) * v[m];
        }
      }
  }
  return d;
}

std::vector<std::size_t> betti_lie(const LieAlgebra& L, const Field& field) {
  const std::size_t n = L.dim();
  std::vector<std::size_t> ranks(n + 1, 0);
  for (std::size_t k = 0; k < n; ++k) ranks[k] = rank(ce_differential(L, k), field);
  std::vector<std::size_t> b(n + 1);
  for (std::size_t k = 0; k <= n; ++k) b[k] = binomial(n, k) - ranks[k] - (k > 0 ? ranks[k - 1] : 0);
  return b;
}

CohomologyClass cohomology_class(const LieAlgebra& L, std::size_t k, std::vector<Rational> form, const Field& field) {
  const std::size_t n = L.dim();
  if (k > n || form.size() != binomial(n, k)) throw InputError("cohomology class: form has the wrong shape");
  form = reduce_all(std::move(form), field);
  if (k < n) {
    RationalMatrix d = ce_differential(L, k);
    RationalMatrix col(form.size(), 1);
    for (std::size_t i = 0; i < form.size(); ++i) col(i, 0) = form[i];
    RationalMatrix dv = d * col;
    for (std::size_t i = 0; i < dv.rows(); ++i)
      if (field.reduce(dv(i, 0)) != 0) throw InputError("cohomology class: form is not closed");
  }
  return {k, reduce_modulo(coboundaries(L, k, field), std::move(form), field)};
}

std::vector<CohomologyClass> cohomology_basis(const LieAlgebra& L, std::size_t k, const Field& field) {
  const std::size_t n = L.dim();
  if (k > n) throw InputError("cohomology basis: degree exceeds dimension");
  const std::size_t m = binomial(n, k);
  RationalMatrix z = k < n ? kernel(ce_differential(L, k), field) : RationalMatrix::identity(m);
  RowEchelon b = coboundaries(L, k, field);
  std::vector<std::vector<Rational>> span;
  for (std::size_t r = 0; r < b.rank(); ++r) {
    std::vector<Rational> v(m);
    for (std::size_t c = 0; c < m; ++c) v[c] = b.reduced(r, c);
    span.push_back(v);
  }
  std::vector<CohomologyClass> out;
  for (std::size_t c = 0; c < z.cols(); ++c) {
    std::vector<Rational> v(m);
    for (std::size_t r = 0; r < m; ++r) v[r] = z(r, c);
    RowEchelon cur = row_echelon(rows_to_matrix(span, m), field);
    if (is_zero(reduce_modulo(cur, v, field))) continue;
    span.push_back(v);
    out.push_back(cohomology_class(L, k, v, field));
  }
  return out;
}

std::vector<Rational> wedge(std::size_t n, std::size_t p, const std::vector<Rational>& a, std::size_t q,
                            const std::vector<Rational>& b) {
  auto pb = wedge_basis(n, p), qb = wedge_basis(n, q);
  if (a.size() != pb.size() || b.size() != qb.size()) throw InputError("wedge: form has the wrong shape");
  auto target = wedge_index(n, p + q);
  std::vector<Rational> out(binomial(n, p + q));
  for (std::size_t i = 0; i < pb.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < qb.size(); ++j) {
      if (b[j] == 0) continue;
      std::vector<std::size_t> all = pb[i];
      all.insert(all.end(), qb[j].begin(), qb[j].end());
      int inversions = 0;
      bool repeated = false;
      for (std::size_t s = 0; s < all.size(); ++s)
        for (std::size_t t = s + 1; t < all.size(); ++t) {
          repeated |= all[s] == all[t];
          inversions += all[s] > all[t];
        }
      if (repeated) continue;
      std::sort(all.begin(), all.end());
      out[target.at(all)] += (inversions % 2 ? -1 : 1) * a[i] * b[j];
    }
  }
  return out;
}

CohomologyClass cup(const LieAlgebra& L, const CohomologyClass& u, const CohomologyClass& v, const Field& field) {
  const std::size_t k = u.degree + v.degree;
  if (k > L.dim()) throw InputError("cup: total degree exceeds dimension");
  return cohomology_class(L, k, wedge(L.dim(), u.degree, u.rep, v.degree, v.rep), field);
}

ExtensionCocycle make_cocycle(const LieAlgebra& Q,
                              const std::vector<std::pair<std::array<std::string, 2>, Rational>>& entries,
                              std::string generator) {
  auto index = wedge_index(Q.dim(), 2);
  ExtensionCocycle e{std::vector<Rational>(index.size()), std::move(generator)};
  for (const auto& [pair, value] : entries) {
    std::size_t a = Q.index(pair[0]), b = Q.index(pair[1]);
    if (a == b) throw InputError("cocycle: repeated basis element");
    e.values[index.at({std::min(a, b), std::max(a, b)})] += a < b ? value : Rational(-value);
  }
  return e;
}

LieAlgebra central_extension(const LieAlgebra& Q, const ExtensionCocycle& e) {
  const std::size_t n = Q.dim();
  if (e.values.size() != binomial(n, 2)) throw InputError("central extension: cocycle has the wrong shape");
  cohomology_class(Q, 2, e.values);  // closedness
  std::vector<std::string> names = Q.basis();
  names.push_back(e.generator);
  LieAlgebra L(names);
  auto pairs = wedge_basis(n, 2);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    std::vector<Rational> v = Q.bracket(pairs[p][0], pairs[p][1]);
    v.push_back(e.values[p]);
    L.set_bracket(pairs[p][0], pairs[p][1], v);
  }
  return L;
}

ExtensionData extension_cocycle(const LieAlgebra& L, std::size_t z) {
  const std::size_t n = L.dim();
  if (z >= n) throw InputError("extension cocycle: index out of range");
  for (std::size_t j = 0; j < n; ++j)
    if (!is_zero(L.bracket(z, j)))
      throw InputError("extension cocycle: " + L.basis()[z] + " is not central");
  std::vector<std::size_t> keep;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i)
    if (i != z) {
      keep.push_back(i);
      names.push_back(L.basis()[i]);
    }
  ExtensionData out{LieAlgebra(names), {std::vector<Rational>(binomial(n - 1, 2)), L.basis()[z]}};
  auto pairs = wedge_basis(n - 1, 2);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const auto& v = L.bracket(keep[pairs[p][0]], keep[pairs[p][1]]);
    std::vector<Rational> w;
    for (std::size_t i : keep) w.push_back(v[i]);
    out.quotient.set_bracket(pairs[p][0], pairs[p][1], w);
    out.cocycle.values[p] = v[z];
  }
  return out;
}

std::size_t gysin_beta2(const LieAlgebra& Q, const ExtensionCocycle& e, const Field& field) {
  CohomologyClass cls = cohomology_class(Q, 2, e.values, field);
  if (is_zero(cls.rep))
    throw InputError("gysin: the cocycle is exact over " + field.name() +
                     ", so the extension splits and the Gysin count does not apply");
  const std::size_t n = Q.dim();
  auto h1 = cohomology_basis(Q, 1, field);
  std::size_t image_rank = 0;
  if (n >= 3) {
    std::vector<std::vector<Rational>> images;
    for (const auto& a : h1) images.push_back(cup(Q, a, cls, field).rep);
    image_rank = rank(rows_to_matrix(images, binomial(n, 3)), field);
  }
  return betti_lie(Q, field)[2] - 1 + (h1.size() - image_rank);
}

LieAlgebra graded_from_quotient(const WeightedQuotient& q) {
  const PcPresentation& pc = q.pc;
  for (std::size_t i = 0; i < pc.size(); ++i)
    if (pc.is_finite(i)) throw InputError("graded Lie algebra: torsion layers are not supported");
  LieAlgebra L(pc.names());
  for (std::size_t j = 0; j < pc.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) {
      NormalWord tail = pc.dense(pc.commutator_tail(j, i));
      std::vector<Rational> v(pc.size());
      for (std::size_t m = 0; m < pc.size(); ++m)
        if (pc.weight(m) == pc.weight(i) + pc.weight(j)) v[m] = Rational(tail[m]);
      L.set_bracket(j, i, v);
    }
  LieCheck c = check_lie(L);
  if (!c.ok) throw ComputationError("graded Lie algebra: " + c.message);
  return L;
}

}  // namespace nilbal
