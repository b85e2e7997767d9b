#include "nilbal/nq.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace nilbal {

std::size_t AbelianInvariants::p_rank(std::uint64_t p) const {
  std::size_t r = 0;
  for (const auto& d : factors)
    if (d % p == 0) ++r;
  return r;
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream out;
  bool first = true;
  if (free_rank > 0 || factors.empty()) {
    out << "Z^" << free_rank;
    first = false;
  }
  for (const auto& d : factors) {
    out << (first ? "" : " + ") << "Z/" << d.get_str();
    first = false;
  }
  return out.str();
}

AbelianInvariants cokernel_invariants(const IntegerMatrix& m, std::size_t cols) {
  // Eliminate unit pivots on sparse rows first (each removes one row and one column
  // without changing the cokernel), then take the Smith form of what is left.
  using Row = std::map<std::size_t, Integer>;
  std::vector<Row> rows(m.rows());
  std::vector<std::set<std::size_t>> in_col(cols);
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < cols; ++c)
      if (m(r, c) != 0) {
        rows[r][c] = m(r, c);
        in_col[c].insert(r);
      }
  std::vector<bool> row_alive(rows.size(), true), col_alive(cols, true);
  std::size_t eliminated = 0;
  for (bool progress = true; progress;) {
    progress = false;
    std::optional<std::pair<std::size_t, std::size_t>> best;
    std::size_t best_cost = 0;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (!row_alive[r]) continue;
      for (const auto& [c, x] : rows[r]) {
        if (abs(x) != 1) continue;
        std::size_t cost = (rows[r].size() - 1) * (in_col[c].size() - 1);
        if (!best || cost < best_cost) {
          best = {r, c};
          best_cost = cost;
        }
      }
    }
    if (!best) break;
    auto [pr, pc] = *best;
    const Row pivot = rows[pr];
    const Integer sign = pivot.at(pc);
    for (std::size_t r : std::vector<std::size_t>(in_col[pc].begin(), in_col[pc].end())) {
      if (r == pr) continue;
      Integer f = rows[r].at(pc) * sign;  // row_r -= f * pivot
      for (const auto& [c, x] : pivot) {
        Integer v = rows[r][c] - f * x;
        if (v == 0) {
          rows[r].erase(c);
          in_col[c].erase(r);
        } else {
          rows[r][c] = v;
          in_col[c].insert(r);
        }
      }
    }
    for (const auto& [c, x] : pivot) in_col[c].erase(pr);
    row_alive[pr] = false;
    col_alive[pc] = false;
    ++eliminated;
    progress = true;
  }
  std::vector<std::size_t> live_cols;
  std::vector<std::size_t> where(cols);
  for (std::size_t c = 0; c < cols; ++c)
    if (col_alive[c]) {
      where[c] = live_cols.size();
      live_cols.push_back(c);
    }
  std::vector<std::size_t> live_rows;
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (row_alive[r] && !rows[r].empty()) live_rows.push_back(r);
  AbelianInvariants inv;
  std::size_t rank = 0;
  if (!live_rows.empty() && !live_cols.empty()) {
    IntegerMatrix rest(live_rows.size(), live_cols.size());
    for (std::size_t i = 0; i < live_rows.size(); ++i)
      for (const auto& [c, x] : rows[live_rows[i]]) rest(i, where[c]) = x;
    SmithNormalForm snf = smith_normal_form(rest);
    rank = snf.rank();
    for (const auto& d : snf.divisors)
      if (d != 1) inv.factors.push_back(d);
  }
  inv.free_rank = cols - eliminated - rank;
  return inv;
}

IntegerMatrix relator_exponent_matrix(const FinitePresentation& pres) {
  IntegerMatrix m(pres.relators().size(), pres.generator_count());
  for (std::size_t r = 0; r < pres.relators().size(); ++r)
    for (const auto& l : pres.relators()[r].letters()) m(r, l.gen) += l.exp;
  return m;
}

AbelianInvariants abelianization(const FinitePresentation& pres) {
  return cokernel_invariants(relator_exponent_matrix(pres), pres.generator_count());
}

std::size_t min_generators(const AbelianInvariants& inv) { return inv.free_rank + inv.factors.size(); }

namespace {

std::int64_t narrow(const Integer& x) {
  if (!x.fits_slong_p()) throw ComputationError("exponent does not fit in 64 bits");
  return x.get_si();
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

// A relation of the current pc presentation that may receive a tail.
struct Slot {
  enum class Kind { image, power, commutator } kind;
  std::size_t a = 0, b = 0;  // input generator | i | (j, i)
};

std::string fresh_name(const std::string& base, std::size_t index, const std::set<std::string>& taken) {
  std::string prefix = base;
  for (;;) {
    std::string n = prefix + std::to_string(index);
    if (!taken.count(n)) return n;
    prefix += base;
  }
}

// The abelian group spanned by the new tails: generators in column order with
// optional finite orders and power relations over later generators.
struct Layer {
  std::vector<std::optional<Integer>> orders;
  std::vector<std::vector<Integer>> raw_powers;  // over layer generators

  std::vector<Integer> normalize(std::vector<Integer> v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (!orders[i]) continue;
      Integer q = floor_div(v[i], *orders[i]);
      if (q == 0) continue;
      v[i] -= q * *orders[i];
      for (std::size_t l = i + 1; l < v.size(); ++l) v[l] += q * raw_powers[i][l];
    }
    return v;
  }
};

class QuotientBuilder {
 public:
  QuotientBuilder(const FinitePresentation& pres) : pres_(pres) {
    for (const auto& g : pres.generators()) taken_.insert(g);
    image_defined_.assign(pres.generator_count(), false);
    epimorphism_.assign(pres.generator_count(), NormalWord());
  }

  // Adds layer `weight`; returns false if the layer is trivial.
  bool step(int weight, std::vector<AbelianInvariants>& layers) {
    const std::size_t n = pc_.size();
    std::vector<Slot> slots;
    for (std::size_t g = 0; g < pres_.generator_count(); ++g)
      if (!image_defined_[g]) slots.push_back({Slot::Kind::image, g, 0});
    for (std::size_t i = 0; i < n; ++i)
      if (pc_.is_finite(i) && !power_defined_.count(i)) slots.push_back({Slot::Kind::power, i, 0});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (pc_.weight(i) + pc_.weight(j) <= weight && !comm_defined_.count({j, i}))
          slots.push_back({Slot::Kind::commutator, j, i});
    const std::size_t T = slots.size();

    std::map<std::pair<std::size_t, std::size_t>, std::size_t> slot_of_comm;
    std::map<std::size_t, std::size_t> slot_of_power, slot_of_image;
    for (std::size_t s = 0; s < T; ++s) {
      const Slot& sl = slots[s];
      if (sl.kind == Slot::Kind::image) slot_of_image[sl.a] = s;
      if (sl.kind == Slot::Kind::power) slot_of_power[sl.a] = s;
      if (sl.kind == Slot::Kind::commutator) slot_of_comm[{sl.a, sl.b}] = s;
    }

    auto extend = [&](const NormalWord& w, std::optional<std::size_t> slot) {
      NormalWord out(n + T, 0);
      std::copy(w.begin(), w.end(), out.begin());
      if (slot) out[n + *slot] = 1;
      return out;
    };
    auto lookup = [](const auto& map, const auto& key) -> std::optional<std::size_t> {
      auto it = map.find(key);
      if (it == map.end()) return std::nullopt;
      return it->second;
    };

    // covering presentation: old relations with central tails appended
    PcPresentation::Spec spec;
    spec.names = pc_.names();
    spec.weights = pc_.weights();
    for (std::size_t i = 0; i < n; ++i) spec.orders.push_back(pc_.order(i));
    for (std::size_t t = 0; t < T; ++t) {
      spec.names.push_back(fresh_name("_tail", t, taken_));
      spec.weights.push_back(weight);
      spec.orders.push_back(std::nullopt);
    }
    for (std::size_t i = 0; i < n; ++i)
      if (pc_.is_finite(i))
        spec.powers.push_back({i, extend(pc_.dense(pc_.power_tail(i)), lookup(slot_of_power, i))});
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        auto slot = lookup(slot_of_comm, std::make_pair(j, i));
        const Word& c = pc_.commutator_tail(j, i);
        if (c.empty() && !slot) continue;
        spec.commutators.push_back({{j, i}, extend(pc_.dense(c), slot)});
      }
    PcPresentation cover(std::move(spec));
    Collector col(cover);

    std::vector<NormalWord> images(pres_.generator_count());
    for (std::size_t g = 0; g < images.size(); ++g)
      images[g] = extend(epimorphism_[g].empty() ? NormalWord(n, 0) : epimorphism_[g], lookup(slot_of_image, g));

    std::set<std::vector<std::int64_t>> rows;
    auto add_row = [&](const NormalWord& diff_lhs, const NormalWord& diff_rhs) {
      for (std::size_t m = 0; m < n; ++m)
        if (diff_lhs[m] != diff_rhs[m]) throw ComputationError("nilpotent quotient: covering group collapses below the tails");
      std::vector<std::int64_t> r(T);
      bool nonzero = false;
      for (std::size_t t = 0; t < T; ++t) {
        r[t] = diff_lhs[n + t] - diff_rhs[n + t];
        nonzero |= r[t] != 0;
      }
      if (!nonzero) return;
      // canonical sign so duplicates merge
      for (std::size_t t = 0; t < T; ++t)
        if (r[t] != 0) {
          if (r[t] < 0)
            for (auto& x : r) x = -x;
          break;
        }
      rows.insert(std::move(r));
    };
    for (const auto& [lhs, rhs] : col.consistency_pairs()) add_row(lhs, rhs);
    for (const auto& rel : pres_.relators()) {
      NormalWord x = col.identity();
      for (const auto& l : rel.letters()) x = col.multiply(x, col.power(images[l.gen], l.exp));
      add_row(x, col.identity());
    }

    // Column order: definitions we prefer to keep (commutators with a weight-1
    // generator on the right) go last so that they avoid Hermite pivots.
    auto priority = [&](const Slot& s) {
      switch (s.kind) {
        case Slot::Kind::image: return 0;
        case Slot::Kind::power: return 1;
        case Slot::Kind::commutator: return pc_.weight(s.b) == 1 ? 3 : 2;
      }
      return 0;
    };
    std::vector<std::size_t> order(T);
    for (std::size_t t = 0; t < T; ++t) order[t] = t;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return priority(slots[a]) < priority(slots[b]); });

    IntegerMatrix M(rows.size(), T);
    {
      std::size_t r = 0;
      for (const auto& row : rows) {
        for (std::size_t c = 0; c < T; ++c) M(r, c) = row[order[c]];
        ++r;
      }
    }
    HermiteForm h = rows.empty() ? HermiteForm{IntegerMatrix(0, T), {}} : hermite_rows(M);
    layers.push_back(cokernel_invariants(h.rows, T));

    std::vector<std::optional<std::size_t>> pivot_row(T);
    for (std::size_t r = 0; r < h.pivots.size(); ++r) pivot_row[h.pivots[r]] = r;
    std::vector<std::optional<std::size_t>> survivor(T);  // column -> layer index
    std::size_t S = 0;
    for (std::size_t c = 0; c < T; ++c)
      if (!pivot_row[c] || h.rows(*pivot_row[c], c) != 1) survivor[c] = S++;
    if (S == 0) return false;

    Layer layer;
    layer.orders.assign(S, std::nullopt);
    layer.raw_powers.assign(S, std::vector<Integer>(S));
    std::vector<std::vector<Integer>> column_value(T, std::vector<Integer>(S));
    for (std::size_t c = 0; c < T; ++c) {
      if (survivor[c]) column_value[c][*survivor[c]] = 1;
      if (!pivot_row[c]) continue;
      std::vector<Integer> rest(S);
      for (std::size_t c2 = c + 1; c2 < T; ++c2)
        if (survivor[c2]) rest[*survivor[c2]] = -h.rows(*pivot_row[c], c2);
      if (survivor[c]) {
        layer.orders[*survivor[c]] = h.rows(*pivot_row[c], c);
        layer.raw_powers[*survivor[c]] = rest;
      } else {
        column_value[c] = rest;
      }
    }
    std::vector<NormalWord> slot_value(T);
    for (std::size_t c = 0; c < T; ++c) {
      std::vector<Integer> v = layer.normalize(column_value[c]);
      NormalWord w(S);
      for (std::size_t l = 0; l < S; ++l) w[l] = narrow(v[l]);
      slot_value[order[c]] = w;
    }

    // assemble the class-`weight` presentation
    PcPresentation::Spec next;
    next.names = pc_.names();
    next.weights = pc_.weights();
    for (std::size_t i = 0; i < n; ++i) next.orders.push_back(pc_.order(i));
    std::vector<std::size_t> column_of_survivor(S);
    for (std::size_t c = 0; c < T; ++c)
      if (survivor[c]) column_of_survivor[*survivor[c]] = c;
    for (std::size_t l = 0; l < S; ++l) {
      const Slot& s = slots[order[column_of_survivor[l]]];
      std::string name;
      if (s.kind == Slot::Kind::image) name = pres_.generators()[s.a];
      if (name.empty() || !taken_names_in_pc_.insert(name).second)
        name = fresh_name("a", n + l + 1, taken_);
      taken_.insert(name);
      taken_names_in_pc_.insert(name);
      next.names.push_back(name);
      next.weights.push_back(weight);
      if (layer.orders[l]) {
        next.orders.push_back(narrow(*layer.orders[l]));
      } else {
        next.orders.push_back(std::nullopt);
      }
      if (s.kind == Slot::Kind::image) image_defined_[s.a] = true;
      if (s.kind == Slot::Kind::power) power_defined_.insert(s.a);
      if (s.kind == Slot::Kind::commutator) comm_defined_.insert({s.a, s.b});
    }
    const std::size_t N = n + S;
    auto join = [&](const NormalWord& head, const NormalWord* layer_part) {
      NormalWord out(N, 0);
      std::copy(head.begin(), head.end(), out.begin());
      if (layer_part) std::copy(layer_part->begin(), layer_part->end(), out.begin() + n);
      return out;
    };
    for (std::size_t i = 0; i < n; ++i)
      if (pc_.is_finite(i)) {
        auto slot = lookup(slot_of_power, i);
        next.powers.push_back({i, join(pc_.dense(pc_.power_tail(i)), slot ? &slot_value[*slot] : nullptr)});
      }
    for (std::size_t l = 0; l < S; ++l)
      if (layer.orders[l]) {
        std::vector<Integer> v = layer.raw_powers[l];
        for (std::size_t m = 0; m <= l; ++m) v[m] = 0;
        v = layer.normalize(v);
        NormalWord w(S);
        for (std::size_t m = 0; m < S; ++m) w[m] = narrow(v[m]);
        next.powers.push_back({n + l, join(NormalWord(n, 0), &w)});
      }
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        auto slot = lookup(slot_of_comm, std::make_pair(j, i));
        const Word& c = pc_.commutator_tail(j, i);
        if (c.empty() && !slot) continue;
        NormalWord tail = join(pc_.dense(c), slot ? &slot_value[*slot] : nullptr);
        if (std::all_of(tail.begin(), tail.end(), [](std::int64_t e) { return e == 0; })) continue;
        next.commutators.push_back({{j, i}, tail});
      }
    for (std::size_t g = 0; g < epimorphism_.size(); ++g) {
      auto slot = lookup(slot_of_image, g);
      NormalWord head = epimorphism_[g].empty() ? NormalWord(n, 0) : epimorphism_[g];
      epimorphism_[g] = join(head, slot ? &slot_value[*slot] : nullptr);
    }
    pc_ = PcPresentation(std::move(next));
    return true;
  }

  WeightedQuotient result(int c, std::vector<AbelianInvariants> layers, bool complete) const {
    WeightedQuotient q;
    q.pc = pc_;
    q.class_bound = c;
    q.layers = std::move(layers);
    q.complete = complete;
    q.epimorphism = epimorphism_;
    for (auto& e : q.epimorphism) e.resize(pc_.size(), 0);
    return q;
  }

 private:
  const FinitePresentation& pres_;
  PcPresentation pc_;
  std::vector<NormalWord> epimorphism_;
  std::vector<bool> image_defined_;
  std::set<std::size_t> power_defined_;
  std::set<std::pair<std::size_t, std::size_t>> comm_defined_;
  std::set<std::string> taken_;
  std::set<std::string> taken_names_in_pc_;
};

}  // namespace

WeightedQuotient nilpotent_quotient(const FinitePresentation& pres, int c) {
  if (c < 1) throw InputError("nilpotent quotient: class bound must be at least 1");
  QuotientBuilder builder(pres);
  std::vector<AbelianInvariants> layers;
  bool complete = false;
  for (int w = 1; w <= c; ++w)
    if (!builder.step(w, layers)) {
      layers.pop_back();
      complete = true;
      break;
    }
  return builder.result(c, std::move(layers), complete);
}

std::vector<std::size_t> lcs_ranks(const WeightedQuotient& q) {
  std::vector<std::size_t> ranks(q.nilpotency_class(), 0);
  for (std::size_t i = 0; i < q.pc.size(); ++i)
    if (!q.pc.is_finite(i)) ++ranks[q.pc.weight(i) - 1];
  return ranks;
}

std::size_t hirsch(const WeightedQuotient& q) {
  std::size_t h = 0;
  for (std::size_t i = 0; i < q.pc.size(); ++i)
    if (!q.pc.is_finite(i)) ++h;
  return h;
}

NormalWord evaluate(const WeightedQuotient& q, const Word& w) {
  Collector col(q.pc);
  NormalWord x = col.identity();
  for (const auto& l : w.letters()) {
    if (l.gen >= q.epimorphism.size()) throw InputError("word references an unknown input generator");
    x = col.multiply(x, col.power(q.epimorphism[l.gen], l.exp));
  }
  return x;
}

WeightedQuotient central_quotient(const WeightedQuotient& q, const NormalWord& element) {
  if (element.size() != q.pc.size()) throw InputError("central quotient: element has the wrong length");
  Collector col(q.pc);
  for (std::size_t i = 0; i < q.pc.size(); ++i)
    if (col.commutator(element, col.generator(i)) != col.identity())
      throw ComputationError("central quotient: element does not commute with " + q.pc.name(i));

  const std::size_t n = q.pc.size();
  bool last_only = n > 0 && element[n - 1] != 0 && !q.pc.is_finite(n - 1);
  for (std::size_t i = 0; i + 1 < n && last_only; ++i) last_only = element[i] == 0;
  if (last_only) {
    // a power of the last (central) generator: drop it or give it finite order
    const std::int64_t k = element[n - 1] < 0 ? -element[n - 1] : element[n - 1];
    const std::size_t m = k == 1 ? n - 1 : n;
    auto project = [&](NormalWord w) {
      if (k == 1) {
        w.resize(m);
      } else {
        w[n - 1] %= k;
        if (w[n - 1] < 0) w[n - 1] += k;
      }
      return w;
    };
    PcPresentation::Spec spec;
    spec.names = q.pc.names();
    spec.weights = q.pc.weights();
    for (std::size_t i = 0; i < n; ++i) spec.orders.push_back(q.pc.order(i));
    spec.names.resize(m);
    spec.weights.resize(m);
    spec.orders.resize(m);
    if (k > 1) spec.orders[n - 1] = k;
    for (std::size_t i = 0; i < m; ++i) {
      if (spec.orders[i] && i != n - 1) spec.powers.push_back({i, project(q.pc.dense(q.pc.power_tail(i)))});
      for (std::size_t h = 0; h < i; ++h) {
        NormalWord t = project(q.pc.dense(q.pc.commutator_tail(i, h)));
        if (std::any_of(t.begin(), t.end(), [](std::int64_t e) { return e != 0; })) spec.commutators.push_back({{i, h}, t});
      }
    }
    WeightedQuotient r;
    r.pc = PcPresentation(std::move(spec));
    r.class_bound = q.class_bound;
    r.complete = q.complete;
    for (const auto& img : q.epimorphism) r.epimorphism.push_back(project(img));
    r.layers = q.layers;
    // the top layer is the only one that changes
    const int top = q.pc.weight(n - 1);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (r.pc.weight(i) == top) idx.push_back(i);
    IntegerMatrix rel(0, idx.size());
    std::vector<std::vector<Integer>> rows;
    for (std::size_t a = 0; a < idx.size(); ++a) {
      if (!r.pc.is_finite(idx[a])) continue;
      std::vector<Integer> row(idx.size());
      row[a] = *r.pc.order(idx[a]);
      NormalWord tail = r.pc.dense(r.pc.power_tail(idx[a]));
      for (std::size_t b = 0; b < idx.size(); ++b) row[b] -= tail[idx[b]];
      rows.push_back(row);
    }
    rel = IntegerMatrix(rows.size(), idx.size());
    for (std::size_t a = 0; a < rows.size(); ++a)
      for (std::size_t b = 0; b < idx.size(); ++b) rel(a, b) = rows[a][b];
    r.layers[top - 1] = cokernel_invariants(rel, idx.size());
    if (r.layers.back() == AbelianInvariants{}) r.layers.pop_back();
    return r;
  }

  FinitePresentation base = q.pc.to_finite_presentation();
  std::vector<Word> rels = base.relators();
  rels.push_back(q.pc.sparse(element));
  FinitePresentation pres(base.generators(), std::move(rels));
  WeightedQuotient r = nilpotent_quotient(pres, std::max(q.class_bound, 1));

  // compose with the original epimorphism
  Collector rc(r.pc);
  std::vector<NormalWord> composed;
  for (const auto& img : q.epimorphism) {
    NormalWord x = rc.identity();
    for (std::size_t i = 0; i < img.size(); ++i)
      if (img[i] != 0) x = rc.multiply(x, rc.power(r.epimorphism[i], img[i]));
    composed.push_back(x);
  }
  r.epimorphism = std::move(composed);
  r.class_bound = q.class_bound;
  return r;
}

}  // namespace nilbal
