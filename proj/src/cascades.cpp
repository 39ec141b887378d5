#include "ccg/cascades.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ccg {

using Kind = DeviationVector::Kind;

void DeviationVector::add(int size, long long x) {
  require(size >= 1 && size <= n(), "vector index out of range");
  v_[size] += x;
}

DeviationVector& DeviationVector::operator+=(const DeviationVector& o) {
  if (o.v_.size() > v_.size()) v_.resize(o.v_.size(), 0);
  for (std::size_t i = 0; i < o.v_.size(); ++i) v_[i] += o.v_[i];
  kind_ = Kind::Composite;
  return *this;
}

long long DeviationVector::node_balance() const {
  long long s = 0;
  for (int i = 1; i <= n(); ++i) s += i * v_[i];
  return s;
}

std::vector<std::pair<int, long long>> DeviationVector::nonzero() const {
  std::vector<std::pair<int, long long>> out;
  for (int i = n(); i >= 1; --i)
    if (v_[i]) out.emplace_back(i, v_[i]);
  return out;
}

std::string DeviationVector::str() const {
  std::ostringstream os;
  os << '{';
  bool first = true;
  for (auto [i, x] : nonzero()) {
    os << (first ? "" : ", ") << i << ':' << (x > 0 ? "+" : "") << x;
    first = false;
  }
  os << '}';
  return os.str();
}

DeviationVector delta4(int p, int n) {
  require(p >= 5 && 5 * p <= n, "delta4 needs 5 <= p <= n/5");
  DeviationVector v(n, Kind::Delta4);
  v.add(p, 1);
  v.add(p - 1, -4);
  v.add(p - 2, 4);
  v.add(p - 4, -1);
  return v;
}

DeviationVector gamma3(int p, int n) {
  require(p >= 4 && 4 * p <= n, "gamma3 needs 4 <= p <= n/4");
  DeviationVector v(n, Kind::Gamma3);
  v.add(p, 1);
  v.add(p - 1, -3);
  v.add(p - 2, 3);
  v.add(p - 3, -1);
  return v;
}

DeviationVector alpha(int p, int q, int n) {
  VectorMove m = VectorMove::alpha(p, q);
  m.validate();
  require(p <= n, "alpha size exceeds n");
  DeviationVector v(n, Kind::Alpha);
  for (auto [s, x] : m.entries()) v.add(s, x);
  return v;
}

bool is_symmetric(const DeviationVector& v) {
  auto nz = v.nonzero();
  if (nz.empty()) return true;
  int hi = nz.front().first, lo = nz.back().first;
  for (int i = 0; lo + i <= hi - i; ++i)
    if (v[hi - i] != v[lo + i]) return false;
  return true;
}

// ------------------------------------------------------------- VectorMove

int VectorMove::movers() const {
  switch (kind) {
    case Kind::Delta4: return 4;
    case Kind::Gamma3: return 3;
    default: return 1;
  }
}

int VectorMove::source_size() const { return kind == Kind::Alpha ? q + 1 : p - 1; }

int VectorMove::target_size() const {
  switch (kind) {
    case Kind::Delta4: return p - 4;
    case Kind::Gamma3: return p - 3;
    default: return p - 1;
  }
}

std::vector<std::pair<int, int>> VectorMove::entries() const {
  std::map<int, int> m;
  int k = movers();
  m[source_size()] -= k;
  m[source_size() - 1] += k;
  m[target_size()] -= 1;
  m[target_size() + k] += 1;
  std::vector<std::pair<int, int>> out;
  for (auto it = m.rbegin(); it != m.rend(); ++it)
    if (it->first >= 1 && it->second) out.emplace_back(it->first, it->second);
  return out;
}

void VectorMove::validate() const {
  switch (kind) {
    case Kind::Delta4: require(p >= 5, "delta move needs p >= 5"); break;
    case Kind::Gamma3: require(p >= 4, "gamma move needs p >= 4"); break;
    case Kind::Alpha:
      require(q >= 0, "alpha move needs q >= 0");
      require(p >= q + 2, "alpha move needs p >= q + 2");
      break;
    default: throw PreconditionError("composite is not a primitive move");
  }
}

std::string VectorMove::str() const {
  switch (kind) {
    case Kind::Delta4: return "delta[" + std::to_string(p) + "]";
    case Kind::Gamma3: return "gamma[" + std::to_string(p) + "]";
    default:
      return q == 0 ? "alpha[" + std::to_string(p) + "]"
                    : "alpha[" + std::to_string(p) + "," + std::to_string(q) + "]";
  }
}

std::vector<VectorMove> alpha_run(int p, int pd, int qd, int q) {
  int d = p - pd;
  require(d >= 1 && qd - q == d && pd >= qd, "invalid composite alpha");
  std::vector<VectorMove> out;
  for (int j = 0; j < d; ++j) {
    out.push_back(VectorMove::alpha(p - j, q + j));
    out.back().validate();
  }
  return out;
}

// ---------------------------------------------------------- VectorSequence

VectorSequence VectorSequence::shift(int i) const {
  VectorSequence s;
  for (auto m : moves_) {
    m.p -= i;
    if (m.kind == Kind::Alpha && m.q > 0) m.q -= i;
    if (m.kind == Kind::Alpha && m.q < 0) throw PreconditionError("shift leaves alpha range");
    m.validate();
    s.moves_.push_back(m);
  }
  return s;
}

DeviationVector VectorSequence::total(int n) const {
  DeviationVector v(n);
  for (const auto& m : moves_)
    for (auto [s, x] : m.entries()) v.add(s, x);
  return v;
}

int VectorSequence::max_size() const {
  int m = 0;
  for (const auto& mv : moves_) m = std::max(m, mv.p);
  return m;
}

int VectorSequence::min_size() const {
  int m = max_size();
  for (const auto& mv : moves_)
    for (auto [s, x] : mv.entries()) m = std::min(m, s);
  return m;
}

int balance(const VectorSequence& seq) {
  std::vector<long long> acc(seq.max_size() + 2, 0);
  long long lowest = 0;
  for (const auto& m : seq.moves())
    for (auto [s, x] : m.entries()) {
      acc[s] += x;
      lowest = std::min(lowest, acc[s]);
    }
  return static_cast<int>(-lowest);
}

// ------------------------------------------------------------- realization

Partition staircase_partition(int L, int c, int extra) {
  require(L >= 1 && c >= 1 && extra >= 0, "staircase needs L, c >= 1");
  std::vector<std::vector<Node>> groups;
  Node next = 0;
  for (int s = L; s >= 1; --s)
    for (int i = 0; i < c; ++i) {
      std::vector<Node> g(s);
      for (auto& x : g) x = next++;
      groups.push_back(std::move(g));
    }
  for (int i = 0; i < extra; ++i) groups.push_back({next++});
  return Partition(next, std::move(groups));
}

namespace {

// Live partition indexed by group size for fast selection.
class LivePartition {
 public:
  LivePartition(const Partition& p, const std::vector<Node>& frozen) : n_(p.n()) {
    std::set<Node> fz(frozen.begin(), frozen.end());
    for (const auto& g : p.groups()) {
      bool is_frozen = std::any_of(g.begin(), g.end(), [&](Node u) { return fz.count(u); });
      if (is_frozen) {
        require(g.size() == 1, "frozen nodes must be singletons");
        parked_.push_back(g.front());
        continue;
      }
      int id = static_cast<int>(groups_.size());
      groups_.emplace_back(g.begin(), g.end());
      index(id);
    }
    lam_.assign(n_ + 2, 0);
    for (const auto& g : groups_)
      if (!g.empty()) ++lam_[g.size()];
  }

  // The `count` groups of the given size with the smallest members, skipping `exclude`.
  std::vector<int> pick(int size, int count, const std::vector<int>& exclude = {}) const {
    std::vector<int> out;
    auto it = buckets_.find(size);
    if (it != buckets_.end())
      for (auto [mn, id] : it->second) {
        if (static_cast<int>(out.size()) == count) break;
        if (std::find(exclude.begin(), exclude.end(), id) != exclude.end()) continue;
        out.push_back(id);
      }
    if (static_cast<int>(out.size()) < count)
      throw InsufficientGroups("need " + std::to_string(count) + " groups of size " + std::to_string(size));
    return out;
  }

  Node pop_min(int id) {
    unindex(id);
    Node u = *groups_[id].begin();
    groups_[id].erase(groups_[id].begin());
    index(id);
    return u;
  }
  void insert(int id, Node u) {
    unindex(id);
    groups_[id].insert(u);
    index(id);
  }
  int new_group() {
    groups_.emplace_back();
    return static_cast<int>(groups_.size()) - 1;
  }
  const std::set<Node>& group(int id) const { return groups_[id]; }
  const std::vector<long long>& lambda() const { return lam_; }

  Partition snapshot() const {
    std::vector<std::vector<Node>> gs;
    for (const auto& g : groups_)
      if (!g.empty()) gs.emplace_back(g.begin(), g.end());
    for (Node u : parked_) gs.push_back({u});
    return Partition(n_, std::move(gs));
  }

 private:
  void index(int id) {
    const auto& g = groups_[id];
    if (g.empty()) return;
    buckets_[g.size()].insert({*g.begin(), id});
    ++lam_grow(g.size());
  }
  void unindex(int id) {
    const auto& g = groups_[id];
    if (g.empty()) return;
    buckets_[g.size()].erase({*g.begin(), id});
    --lam_grow(g.size());
  }
  long long& lam_grow(std::size_t s) {
    if (lam_.size() <= s) lam_.resize(s + 1, 0);
    return lam_[s];
  }

  int n_;
  std::vector<std::set<Node>> groups_;
  std::vector<Node> parked_;
  std::map<int, std::set<std::pair<Node, int>>> buckets_;
  std::vector<long long> lam_;
};

long long vat(const std::vector<long long>& v, std::size_t i) { return i < v.size() ? v[i] : 0; }

}  // namespace

Realization realize(const VectorSequence& seq, const Partition& p0, const RealizeOptions& opts) {
  LivePartition live(p0, opts.frozen);
  std::vector<long long> start = live.lambda();
  std::vector<long long> prefix(start.size(), 0);
  Realization r;
  for (const auto& m : seq.moves()) {
    m.validate();
    int k = m.movers();
    auto sources = live.pick(m.source_size(), k);
    int target;
    if (m.target_size() == 0)
      target = live.new_group();
    else
      target = live.pick(m.target_size(), 1, sources).front();
    ConcreteMove cm;
    cm.source_size = m.source_size();
    cm.target_size = m.target_size();
    cm.target_min = live.group(target).empty() ? -1 : *live.group(target).begin();
    cm.util_before = m.source_size() - 1;
    cm.util_after = m.target_size() + k - 1;
    if (cm.util_after <= cm.util_before)
      throw std::logic_error("move " + m.str() + " does not strictly improve its movers");
    for (int id : sources) cm.movers.push_back(live.pop_min(id));
    for (Node u : cm.movers) live.insert(target, u);
    // Utilities from the live groups, not from the move arithmetic.
    for (Node u : cm.movers)
      if (static_cast<std::int64_t>(live.group(target).size()) - 1 != cm.util_after)
        throw std::logic_error("realized utility differs for node " + std::to_string(u));
    for (auto [s, x] : m.entries()) {
      if (prefix.size() <= static_cast<std::size_t>(s)) prefix.resize(s + 1, 0);
      prefix[s] += x;
    }
    const auto& lam = live.lambda();
    for (auto [s, x] : m.entries()) {
      (void)x;
      if (vat(lam, s) != vat(start, s) + vat(prefix, s)) r.vectors_agree = false;
    }
    if (opts.record) r.trace.push_back(std::move(cm));
    ++r.moves;
  }
  // Entries untouched by any move must also agree.
  const auto& lam = live.lambda();
  for (std::size_t s = 1; s < std::max({lam.size(), start.size(), prefix.size()}); ++s)
    if (vat(lam, s) != vat(start, s) + vat(prefix, s)) r.vectors_agree = false;
  r.final = live.snapshot();
  return r;
}

// -------------------------------------------------------------------- k = 3

K3Result build_k3(int t, const K3Options& opts) {
  require(t >= 4, "k = 3 cascade needs t >= 4");
  K3Result res;
  res.t = t;
  res.L = 4 * t + 1;
  int L = res.L;
  auto range = [](int count, bool ascending_size) {
    // Offsets below the top size; top-down means offset 0 first.
    std::vector<int> o(count);
    for (int i = 0; i < count; ++i) o[i] = ascending_size ? count - 1 - i : i;
    return o;
  };
  VectorSequence g1, g2, g3, g4;
  for (int i : range(t + 1, false)) g1.push(VectorMove::gamma(L - i));
  for (int i : range(t - 1, false)) g2.append(g1.shift(i));
  for (int i : range(t - 3, false)) g3.append(g2.shift(i));
  bool outer_up = opts.schedule == K3Schedule::OuterAscending;
  for (int i : range(t, outer_up)) g4.append(g3.shift(i));
  res.seq = g4;
  res.stage[0] = g1.total(L);
  res.stage[1] = g2.total(L);
  res.stage[2] = g3.total(L);
  res.stage[3] = g4.total(L);
  res.balance = balance(g4);
  res.c = opts.c.value_or(std::max(res.balance, 1));
  res.n = static_cast<long long>(res.c) * L * (L + 1) / 2;
  if (opts.realize) res.realization = realize(res.seq, staircase_partition(L, res.c));
  return res;
}

// -------------------------------------------------------------------- k = 4

int k4_levels(int t) {
  require(t >= 2, "k = 4 cascade needs t >= 2");
  int T = 0;
  while ((1 << (T + 1)) <= t) ++T;
  return T + 1;
}

int k4_top(int t) { return 2 * (t * t * t + t); }

bool has_good_property(const DeviationVector& v, int L, int s, int t1, int t2) {
  if (s <= 0 || s % 2) return false;
  auto nz = v.nonzero();
  if (nz.empty() || nz.front().first != L || nz.back().first != L - s + 1) return false;
  if (!is_symmetric(v)) return false;
  int half = s / 2;
  std::map<int, long long> want{{0, 1}, {t1, -1}, {t2, -1}, {half - 1, 1}};
  for (int o = 0; o < half; ++o) {
    long long w = want.count(o) ? want[o] : 0;
    if (v[L - o] != w) return false;
  }
  return true;
}

namespace {

int window(const DeviationVector& v, int L) {
  auto nz = v.nonzero();
  return nz.empty() ? 0 : L - nz.back().first + 1;
}

void finish_level(ZetaLevel& z, int L) {
  z.vec = z.seq.total(L);
  z.s = window(z.vec, L);
  z.balance = balance(z.seq);
  z.symmetric = is_symmetric(z.vec);
  z.good = has_good_property(z.vec, L, z.s, z.t1, z.t2);
}

}  // namespace

ZetaLevel build_zeta1(int t, int L) {
  require(t >= 2, "zeta needs t >= 2");
  int T = t * t;
  require(L >= 2 * T + 2, "top size too small for zeta");
  ZetaLevel z;
  z.level = 1;
  if (t == 2) {
    // delta runs do not fit below t = 3; three single moves give the same vector.
    z.seq.push(VectorMove::alpha(L, L - 4));
    z.seq.push(VectorMove::alpha(L - 1, L - 8));
    z.seq.push(VectorMove::alpha(L - 5, L - 9));
  } else {
    VectorSequence phi;
    for (int j = 0; j < T; ++j) phi.push(VectorMove::delta(L - j));
    phi.append(alpha_run(L - 1, L - 2, L - 2, L - 3));
    phi.append(alpha_run(L - T, L - T - 1, L - T - 1, L - T - 2));
    phi.append(alpha_run(L - T - 3, L - T - 4, L - T - 5, L - T - 6));
    phi.append(alpha_run(L - 1, L - 3, L - 3, L - 5));
    for (int j = 0; j < T - 4; ++j) z.seq.append(phi.shift(j));
    z.seq.append(alpha_run(L - 4, L - T + 1, L - T - 2, L - 2 * T + 3));
    z.seq.append(alpha_run(L - T + 4, L - T + 2, L - T - 3, L - T - 5));
  }
  finish_level(z, L);
  return z;
}

ZetaLevel build_zeta_next(const ZetaLevel& prev, int L) {
  ZetaLevel z;
  z.level = prev.level + 1;
  int a = 0;
  for (int j = 0; j * prev.t1 + prev.t2 < prev.s / 2 - 1; ++j)
    if (j % 2 == 0) a = j;
  z.a = a;
  if (a == 0) {
    // Nothing to repeat: the level is carried over unchanged.
    z.seq = prev.seq;
    z.t1 = prev.t1;
    z.t2 = prev.t2;
    finish_level(z, L);
    return z;
  }
  for (int j = 0; j <= a; ++j) z.seq.append(prev.seq.shift(j * prev.t1));
  z.t1 = prev.t2;
  z.t2 = prev.t1 + prev.t2;
  DeviationVector phi = z.seq.total(L);
  int s = window(phi, L);
  int half = s / 2;
  std::map<int, long long> want{{0, 1}, {z.t1, -1}, {z.t2, -1}, {half - 1, 1}};
  // Residual entries of the upper half, paired outward-in.
  std::vector<int> neg, pos;
  for (int o = 0; o < half; ++o) {
    long long r = phi[L - o] - (want.count(o) ? want[o] : 0);
    for (long long i = 0; i < -r; ++i) neg.push_back(o);
    for (long long i = 0; i < r; ++i) pos.push_back(o);
  }
  if (neg.size() != pos.size()) throw std::logic_error("residual entries cannot be paired");
  for (std::size_t i = 0; i < neg.size(); ++i) {
    int hi = neg[i], lo = pos[i];
    if (hi >= lo) throw std::logic_error("residual pairing is not outward-in");
    z.seq.append(alpha_run(L - hi, L - lo, L - (s - 1 - lo), L - (s - 1 - hi)));
  }
  finish_level(z, L);
  return z;
}

K4Result build_k4(int t, const K4Options& opts) {
  K4Result res;
  res.t = t;
  res.T = k4_levels(t);
  res.L = k4_top(t);
  res.levels.push_back(build_zeta1(t, res.L));
  for (int i = 1; i < res.T; ++i) res.levels.push_back(build_zeta_next(res.levels.back(), res.L));
  res.c1 = res.levels.front().balance;
  res.c = opts.c.value_or(std::max(res.levels.back().balance, 1));
  res.n = static_cast<long long>(res.c) * res.L * (res.L + 1) / 2;
  if (opts.realize) res.realization = realize(res.levels.back().seq, staircase_partition(res.L, res.c));
  return res;
}

std::vector<GrowthRow> measure_growth(const std::vector<int>& ts) {
  std::vector<GrowthRow> rows;
  for (int t : ts) {
    K4Result r = build_k4(t, {std::nullopt, false});
    GrowthRow g;
    g.t = t;
    g.T = r.T;
    g.n = r.n;
    g.first = r.levels.front().seq.size();
    g.last = r.levels.back().seq.size();
    g.ratio = static_cast<double>(g.last) / std::pow(t, std::log2(t));
    for (std::size_t i = 0; i + 1 < r.levels.size(); ++i) {
      const auto& a = r.levels[i];
      const auto& b = r.levels[i + 1];
      double bound = (a.s / std::pow(2.0, static_cast<double>(i + 1) + 2) - 6) * static_cast<double>(a.seq.size());
      if (static_cast<double>(b.seq.size()) < bound) g.recursion_ok = false;
    }
    for (const auto& z : r.levels) g.good_ok = g.good_ok && z.good;
    rows.push_back(g);
  }
  return rows;
}

}  // namespace ccg
