#include "nilbal/pc.hpp"

#include <set>

namespace nilbal {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ComputationError("exponent overflow during collection");
  return r;
}

std::int64_t floor_div(std::int64_t a, std::int64_t m) {
  std::int64_t q = a / m;
  if ((a % m != 0) && ((a < 0) != (m < 0))) --q;
  return q;
}

}  // namespace

PcPresentation::PcPresentation(Spec spec)
    : names_(std::move(spec.names)), weights_(std::move(spec.weights)), orders_(std::move(spec.orders)) {
  const std::size_t n = names_.size();
  if (weights_.size() != n || orders_.size() != n)
    throw InputError("pc presentation: names, weights and orders must have equal length");
  std::set<std::string> seen;
  for (const auto& s : names_)
    if (s.empty() || !seen.insert(s).second) throw InputError("pc presentation: generator names must be distinct");
  for (std::size_t i = 0; i < n; ++i) {
    if (weights_[i] < 1) throw InputError("pc presentation: weights must be positive");
    if (i > 0 && weights_[i] < weights_[i - 1]) throw InputError("pc presentation: weights must be nondecreasing");
    if (orders_[i] && *orders_[i] < 2) throw InputError("pc presentation: finite relative orders must be >= 2");
  }

  auto check_normal = [&](const NormalWord& w, std::size_t above, int min_weight, const std::string& what) {
    if (w.size() != n) throw InputError(what + ": wrong length");
    for (std::size_t k = 0; k < n; ++k) {
      if (w[k] == 0) continue;
      if (k <= above) throw InputError(what + ": tail must be supported on later generators");
      if (weights_[k] < min_weight) throw InputError(what + ": tail violates the weight grading");
      if (orders_[k] && (w[k] < 0 || w[k] >= *orders_[k])) throw InputError(what + ": tail is not a normal word");
    }
  };

  powers_.assign(n, Word());
  comms_.assign(n, std::vector<Word>(n));
  for (auto& [i, tail] : spec.powers) {
    if (i >= n || !orders_[i]) throw InputError("pc presentation: power tail for a generator of infinite order");
    check_normal(tail, i, weights_[i], "power tail of " + names_[i]);
    powers_[i] = sparse(tail);
  }
  for (auto& [ji, tail] : spec.commutators) {
    auto [j, i] = ji;
    if (j >= n || i >= j) throw InputError("pc presentation: commutator tails are indexed by j > i");
    check_normal(tail, j, weights_[i] + weights_[j],
                 "commutator tail of [" + names_[j] + "," + names_[i] + "]");
    comms_[j][i] = sparse(tail);
  }
}

NormalWord PcPresentation::dense(const Word& w) const {
  NormalWord out(size(), 0);
  for (const auto& l : w.letters()) out[l.gen] += l.exp;
  return out;
}

Word PcPresentation::sparse(const NormalWord& d) const {
  Word w;
  for (std::size_t k = 0; k < d.size(); ++k) w.append(k, d[k]);
  return w;
}

FinitePresentation PcPresentation::to_finite_presentation() const {
  std::vector<Word> rels;
  for (std::size_t i = 0; i < size(); ++i)
    if (orders_[i]) rels.push_back(Word::generator(i, *orders_[i]) * powers_[i].inverse());
  for (std::size_t j = 0; j < size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      rels.push_back(nilbal::commutator(Word::generator(j), Word::generator(i)) * comms_[j][i].inverse());
  return FinitePresentation(names_, std::move(rels));
}

// ---------------------------------------------------------------------------

Collector::Collector(const PcPresentation& pc) : pc_(pc), n_(pc.size()) {
  central_.assign(n_, true);
  for (std::size_t j = 0; j < n_; ++j) {
    if (pc_.is_finite(j)) central_[j] = false;
    for (std::size_t i = 0; i < j; ++i)
      if (!pc_.commutator_tail(j, i).empty()) central_[j] = central_[i] = false;
  }

  conj_.assign(n_, std::vector<Word>(n_));
  conj_inv_.assign(n_, std::vector<Word>(n_));
  // Descending j: everything needed for row j only involves generators above j.
  for (std::size_t jj = n_; jj-- > 0;) {
    for (std::size_t k = n_; k-- > jj + 1;) {
      const Word& c = conj_[k][jj];
      if (c.letters().size() == 1) {
        conj_inv_[k][jj] = c;
        continue;
      }
      NormalWord tail = pc_.dense(c);
      tail[k] = 0;
      NormalWord v = conj_gen(inverse(tail), jj, -1);
      v[k] = 1;
      conj_inv_[k][jj] = pc_.sparse(v);
    }
    for (std::size_t i = 0; i < jj; ++i) {
      const Word& C = pc_.commutator_tail(jj, i);
      if (C.empty()) {
        conj_[jj][i] = Word::generator(jj);
        continue;
      }
      NormalWord t = conj_gen(conj_gen(pc_.dense(C), i, +1), jj, +1);
      t[jj] = 1;
      conj_[jj][i] = pc_.sparse(t);
    }
  }
}

NormalWord Collector::generator(std::size_t i, std::int64_t k) const {
  NormalWord x = identity();
  mul_gen_power(x, i, k);
  return x;
}

NormalWord Collector::collect(const Word& w) const {
  NormalWord x = identity();
  for (const auto& l : w.letters()) {
    if (l.gen >= n_) throw InputError("word references a generator outside the pc presentation");
    mul_gen_power(x, l.gen, l.exp);
  }
  return x;
}

// x <- x * a_i^k, where x = x_{<i} a_i^{x_i} x_{>i} becomes
// x_{<i} a_i^{x_i + k} (x_{>i})^{a_i^k}, followed by power reduction of a_i.
void Collector::mul_gen_power(NormalWord& x, std::size_t i, std::int64_t k) const {
  if (k == 0) return;
  if (central_[i]) {
    x[i] = checked_add(x[i], k);
    return;
  }
  bool has_tail = false;
  for (std::size_t m = i + 1; m < n_; ++m)
    if (x[m] != 0) {
      has_tail = true;
      break;
    }
  NormalWord tail;
  if (has_tail) {
    tail = identity();
    for (std::size_t m = i + 1; m < n_; ++m) std::swap(tail[m], x[m]);
    tail = conj_power(std::move(tail), i, k);
  }
  std::int64_t s = checked_add(x[i], k);
  if (const auto& order = pc_.order(i)) {
    std::int64_t q = floor_div(s, *order);
    x[i] = s - q * *order;
    if (q != 0) {
      NormalWord high = power_word(pc_.power_tail(i), q);
      if (has_tail) high = multiply(high, tail);
      for (std::size_t m = i + 1; m < n_; ++m) x[m] = high[m];
      return;
    }
  } else {
    x[i] = s;
  }
  if (has_tail)
    for (std::size_t m = i + 1; m < n_; ++m) x[m] = tail[m];
}

NormalWord Collector::multiply(const NormalWord& a, const NormalWord& b) const {
  NormalWord x = a;
  for (std::size_t i = 0; i < n_; ++i)
    if (b[i] != 0) mul_gen_power(x, i, b[i]);
  return x;
}

NormalWord Collector::inverse(const NormalWord& a) const {
  std::size_t i = 0;
  while (i < n_ && a[i] == 0) ++i;
  if (i == n_) return a;
  NormalWord rest = a;
  rest[i] = 0;
  NormalWord x = inverse(rest);
  mul_gen_power(x, i, -a[i]);
  return x;
}

NormalWord Collector::power(const NormalWord& a, std::int64_t k) const {
  if (k < 0) return power(inverse(a), -k);
  std::size_t support = 0, where = 0;
  for (std::size_t m = 0; m < n_; ++m)
    if (a[m] != 0) {
      ++support;
      where = m;
    }
  if (support == 0) return a;
  if (support == 1 && !pc_.is_finite(where)) {
    NormalWord x = identity();
    std::int64_t e;
    if (__builtin_mul_overflow(a[where], k, &e)) throw ComputationError("exponent overflow during collection");
    x[where] = e;
    return x;
  }
  NormalWord result = identity(), base = a;
  while (k > 0) {
    if (k & 1) result = multiply(result, base);
    k >>= 1;
    if (k > 0) base = multiply(base, base);
  }
  return result;
}

NormalWord Collector::power_word(const Word& sparse, std::int64_t k) const {
  return power(pc_.dense(sparse), k);
}

NormalWord Collector::conjugate(const NormalWord& a, const NormalWord& g) const {
  return multiply(multiply(inverse(g), a), g);
}

NormalWord Collector::commutator(const NormalWord& a, const NormalWord& b) const {
  return multiply(multiply(a, b), inverse(multiply(b, a)));
}

// w supported above i; returns a_i^-sign w a_i^sign.
NormalWord Collector::conj_gen(const NormalWord& w, std::size_t i, int sign) const {
  const auto& table = sign > 0 ? conj_ : conj_inv_;
  NormalWord result = identity();
  std::vector<std::pair<std::size_t, std::int64_t>> deferred;
  for (std::size_t m = i + 1; m < n_; ++m) {
    if (w[m] == 0) continue;
    if (central_[m]) {
      deferred.emplace_back(m, w[m]);
      continue;
    }
    const Word& image = table[m][i];
    if (image.letters().size() == 1 && image.letters()[0].exp == 1)
      mul_gen_power(result, m, w[m]);
    else
      result = multiply(result, power_word(image, w[m]));
  }
  for (auto [m, e] : deferred) result[m] = checked_add(result[m], e);
  return result;
}

NormalWord Collector::conj_power(NormalWord w, std::size_t i, std::int64_t k) const {
  int sign = k > 0 ? 1 : -1;
  for (std::int64_t step = 0; step < (k > 0 ? k : -k); ++step) w = conj_gen(w, i, sign);
  return w;
}

std::vector<std::pair<NormalWord, NormalWord>> Collector::consistency_pairs() const {
  std::vector<std::pair<NormalWord, NormalWord>> out;
  std::vector<NormalWord> g(n_);
  for (std::size_t i = 0; i < n_; ++i) g[i] = generator(i);
  auto order = [&](std::size_t i) { return *pc_.order(i); };
  auto full_power = [&](std::size_t i) { return pc_.dense(pc_.power_tail(i)); };

  for (std::size_t k = 0; k < n_; ++k)
    for (std::size_t j = 0; j < k; ++j) {
      // a declared-central generator makes the overlap trivially associative
      if (central_[k] || central_[j]) continue;
      for (std::size_t i = 0; i < j; ++i) {
        if (central_[i]) continue;
        out.emplace_back(multiply(multiply(g[k], g[j]), g[i]), multiply(g[k], multiply(g[j], g[i])));
      }
    }
  for (std::size_t j = 0; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (pc_.is_finite(j))
        out.emplace_back(multiply(full_power(j), g[i]),
                         multiply(generator(j, order(j) - 1), multiply(g[j], g[i])));
      if (pc_.is_finite(i))
        out.emplace_back(multiply(g[j], full_power(i)),
                         multiply(multiply(g[j], g[i]), generator(i, order(i) - 1)));
      else
        out.emplace_back(g[j], multiply(multiply(g[j], generator(i, -1)), g[i]));
      if (!pc_.is_finite(j)) out.emplace_back(g[i], multiply(generator(j, -1), multiply(g[j], g[i])));
    }
  for (std::size_t i = 0; i < n_; ++i)
    if (pc_.is_finite(i)) out.emplace_back(multiply(g[i], full_power(i)), multiply(full_power(i), g[i]));
  return out;
}

bool is_consistent(const PcPresentation& pc) {
  Collector c(pc);
  for (const auto& [lhs, rhs] : c.consistency_pairs())
    if (lhs != rhs) return false;
  return true;
}

NormalWord collect(const PcPresentation& pc, const Word& w) { return Collector(pc).collect(w); }

}  // namespace nilbal
