#include "iyb/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "iyb/error.hpp"

namespace iyb {

namespace detail {

struct GroupImpl {
  virtual ~GroupImpl() = default;
  virtual u64 order() const = 0;
  virtual u64 mul(u64 x, u64 y) const = 0;
  virtual u64 inv(u64 x) const = 0;
  virtual std::vector<u64> generators() const = 0;
  virtual std::optional<std::vector<Word>> relators() const { return std::nullopt; }
  virtual nlohmann::json descriptor() const = 0;
  virtual std::string name() const = 0;
  virtual const SemidirectParts* semidirect() const { return nullptr; }
};

struct GroupCore {
  std::unique_ptr<GroupImpl> impl;
  u64 order = 1;
  std::vector<u64> gens;

  // Breadth-first spanning tree of the right Cayley graph, built on first use.
  mutable std::once_flag bfs_once;
  mutable std::vector<u64> parent;
  mutable std::vector<std::uint32_t> parent_gen;

  void ensure_bfs() const {
    std::call_once(bfs_once, [this] {
      constexpr u64 kUnseen = ~u64{0};
      parent.assign(order, kUnseen);
      parent_gen.assign(order, 0);
      parent[0] = 0;
      std::vector<u64> queue{0};
      queue.reserve(order);
      for (std::size_t head = 0; head < queue.size(); ++head) {
        u64 x = queue[head];
        for (std::uint32_t i = 0; i < gens.size(); ++i) {
          u64 y = impl->mul(x, gens[i]);
          if (parent[y] == kUnseen) {
            parent[y] = x;
            parent_gen[y] = i;
            queue.push_back(y);
          }
        }
      }
      if (queue.size() != order) throw Error("group generators do not generate the group");
    });
  }
};

}  // namespace detail

namespace {

using detail::GroupCore;
using detail::GroupImpl;

Group wrap(std::unique_ptr<GroupImpl> impl) {
  auto core = std::make_shared<GroupCore>();
  core->order = impl->order();
  core->gens = impl->generators();
  core->impl = std::move(impl);
  return Group(std::shared_ptr<const GroupCore>(std::move(core)));
}

// w^-1 written with positive letters.
Word inverse_word(const Group& g, const Word& w) {
  Word out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    u64 o = g.element_order(g.generators()[*it]);
    for (u64 k = 1; k < o; ++k) out.push_back(*it);
  }
  return out;
}

Word power_word(std::uint32_t letter, u64 e) { return Word(e, letter); }

Word concat(std::initializer_list<Word> parts) {
  Word out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

Word shifted(const Word& w, std::uint32_t by) {
  Word out(w);
  for (auto& x : out) x += by;
  return out;
}

// [a, b] = a^-1 b^-1 a b with a, b generator letters of orders oa, ob.
Word commutator_word(std::uint32_t a, u64 oa, std::uint32_t b, u64 ob) {
  return concat({power_word(a, oa - 1), power_word(b, ob - 1), {a, b}});
}

// ---------------------------------------------------------------------------

class AbelianImpl : public GroupImpl {
 public:
  AbelianImpl(std::vector<u64> orders, bool cyclic) : orders_(std::move(orders)), cyclic_(cyclic) {
    order_ = 1;
    for (u64 o : orders_) {
      if (o == 0) throw ParseError("abelian group: factor orders must be positive");
      if (order_ > (u64{1} << 40) / o) throw ResourceLimit("abelian group too large");
      order_ *= o;
    }
  }
  u64 order() const override { return order_; }
  u64 mul(u64 x, u64 y) const override {
    u64 r = 0, place = 1;
    for (u64 o : orders_) {
      u64 a = x % o, b = y % o;
      x /= o;
      y /= o;
      r += ((a + b) % o) * place;
      place *= o;
    }
    return r;
  }
  u64 inv(u64 x) const override {
    u64 r = 0, place = 1;
    for (u64 o : orders_) {
      u64 a = x % o;
      x /= o;
      r += ((o - a) % o) * place;
      place *= o;
    }
    return r;
  }
  std::vector<u64> generators() const override {
    std::vector<u64> g;
    u64 place = 1;
    for (u64 o : orders_) {
      if (o > 1) g.push_back(place);
      place *= o;
    }
    return g;
  }
  std::optional<std::vector<Word>> relators() const override {
    std::vector<u64> gen_orders;
    for (u64 o : orders_)
      if (o > 1) gen_orders.push_back(o);
    std::vector<Word> rels;
    for (std::uint32_t i = 0; i < gen_orders.size(); ++i) {
      rels.push_back(power_word(i, gen_orders[i]));
      for (std::uint32_t j = i + 1; j < gen_orders.size(); ++j)
        rels.push_back(commutator_word(i, gen_orders[i], j, gen_orders[j]));
    }
    return rels;
  }
  nlohmann::json descriptor() const override { return name(); }
  std::string name() const override {
    if (cyclic_) return "cyclic:" + std::to_string(orders_.empty() ? 1 : orders_[0]);
    std::string s = "abelian:";
    for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "x" : "") + std::to_string(orders_[i]);
    return s;
  }

 private:
  std::vector<u64> orders_;
  bool cyclic_;
  u64 order_;
};

class DihedralImpl : public GroupImpl {
 public:
  explicit DihedralImpl(u64 n) : n_(n) {
    if (n == 0) throw ParseError("dihedral:n needs n >= 1");
  }
  u64 order() const override { return 2 * n_; }
  u64 mul(u64 x, u64 y) const override {
    u64 a = x % n_, b = x / n_, c = y % n_, d = y / n_;
    u64 rot = b == 0 ? (a + c) % n_ : (a + n_ - c) % n_;
    return rot + n_ * ((b + d) % 2);
  }
  u64 inv(u64 x) const override {
    u64 a = x % n_, b = x / n_;
    return b == 1 ? x : (n_ - a) % n_;
  }
  std::vector<u64> generators() const override {
    if (n_ == 1) return {1};
    return {1, n_};
  }
  std::optional<std::vector<Word>> relators() const override {
    if (n_ == 1) return std::vector<Word>{{0, 0}};
    return std::vector<Word>{power_word(0, n_), {1, 1}, {1, 0, 1, 0}};
  }
  nlohmann::json descriptor() const override { return name(); }
  std::string name() const override { return "dihedral:" + std::to_string(n_); }

 private:
  u64 n_;
};

// <x, y | x^2n, y^2 = x^n, y^-1 x y = x^-1>
class DicyclicImpl : public GroupImpl {
 public:
  explicit DicyclicImpl(u64 n) : n_(n), m_(2 * n) {
    if (n < 1) throw ParseError("dicyclic:n needs n >= 1");
  }
  u64 order() const override { return 2 * m_; }
  u64 mul(u64 x, u64 y) const override {
    u64 a = x % m_, b = x / m_, c = y % m_, d = y / m_;
    if (b == 0) return (a + c) % m_ + m_ * d;
    u64 rot = (a + m_ - c) % m_;
    if (d == 0) return rot + m_;
    return (rot + n_) % m_;
  }
  u64 inv(u64 x) const override {
    u64 a = x % m_, b = x / m_;
    if (b == 0) return (m_ - a) % m_;
    // (x^a y)^-1 = y^-1 x^-a = x^n y x^-a = x^(n+a) y
    return (a + n_) % m_ + m_;
  }
  std::vector<u64> generators() const override { return {1, m_}; }
  std::optional<std::vector<Word>> relators() const override {
    // x^2n, y^2 x^n, y^3 x y x
    return std::vector<Word>{power_word(0, m_), concat({{1, 1}, power_word(0, n_)}), {1, 1, 1, 0, 1, 0}};
  }
  nlohmann::json descriptor() const override { return name(); }
  std::string name() const override { return n_ == 2 ? "quaternion" : "dicyclic:" + std::to_string(n_); }

 private:
  u64 n_, m_;
};

u64 factorial(unsigned n) {
  u64 f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

class SymmetricImpl : public GroupImpl {
 public:
  explicit SymmetricImpl(unsigned n) : n_(n) {
    if (n > 10) throw ResourceLimit("symmetric:n supported for n <= 10");
    order_ = factorial(n);
  }
  u64 order() const override { return order_; }
  u64 mul(u64 x, u64 y) const override {
    auto s = symmetric_unrank(n_, x), t = symmetric_unrank(n_, y);
    std::vector<unsigned> r(n_);
    for (unsigned i = 0; i < n_; ++i) r[i] = s[t[i]];
    return symmetric_rank(r);
  }
  u64 inv(u64 x) const override {
    auto s = symmetric_unrank(n_, x);
    std::vector<unsigned> r(n_);
    for (unsigned i = 0; i < n_; ++i) r[s[i]] = i;
    return symmetric_rank(r);
  }
  std::vector<u64> generators() const override {
    std::vector<u64> g;
    for (unsigned i = 0; i + 1 < n_; ++i) {
      std::vector<unsigned> p(n_);
      std::iota(p.begin(), p.end(), 0u);
      std::swap(p[i], p[i + 1]);
      g.push_back(symmetric_rank(p));
    }
    return g;
  }
  std::optional<std::vector<Word>> relators() const override {
    std::vector<Word> rels;
    for (std::uint32_t i = 0; i + 1 < n_; ++i) {
      rels.push_back({i, i});
      for (std::uint32_t j = i + 1; j + 1 < n_; ++j) {
        Word w;
        u64 reps = j == i + 1 ? 3 : 2;
        for (u64 k = 0; k < reps; ++k) {
          w.push_back(i);
          w.push_back(j);
        }
        rels.push_back(w);
      }
    }
    return rels;
  }
  nlohmann::json descriptor() const override { return name(); }
  std::string name() const override { return "symmetric:" + std::to_string(n_); }

 private:
  unsigned n_;
  u64 order_;
};

class HeisenbergImpl : public GroupImpl {
 public:
  explicit HeisenbergImpl(u64 q) : q_(q) {
    if (q < 3 || q % 2 == 0 || !is_prime(q)) throw ParseError("heis:q needs an odd prime q, got " + std::to_string(q));
    if (q > 2000) throw ResourceLimit("heis:q supported for q <= 2000");
  }
  u64 order() const override { return q_ * q_ * q_; }
  u64 mul(u64 x, u64 y) const override {
    u64 n1 = x % q_, n2 = (x / q_) % q_, n3 = x / (q_ * q_);
    u64 m1 = y % q_, m2 = (y / q_) % q_, m3 = y / (q_ * q_);
    return (n1 + m1) % q_ + q_ * ((n2 + m2) % q_) + q_ * q_ * ((n3 + m3 + n2 * m1) % q_);
  }
  u64 inv(u64 x) const override {
    u64 n1 = x % q_, n2 = (x / q_) % q_, n3 = x / (q_ * q_);
    // (-n1, -n2, n1 n2 - n3)
    return (q_ - n1) % q_ + q_ * ((q_ - n2) % q_) + q_ * q_ * ((n1 * n2 + q_ - n3) % q_);
  }
  std::vector<u64> generators() const override { return {1, q_, q_ * q_}; }
  std::optional<std::vector<Word>> relators() const override {
    // d_i^q, [d1,d3], [d2,d3], [d2,d1] d3^-1
    return std::vector<Word>{power_word(0, q_),
                             power_word(1, q_),
                             power_word(2, q_),
                             commutator_word(0, q_, 2, q_),
                             commutator_word(1, q_, 2, q_),
                             concat({commutator_word(1, q_, 0, q_), power_word(2, q_ - 1)})};
  }
  nlohmann::json descriptor() const override { return name(); }
  std::string name() const override { return "heis:" + std::to_string(q_); }

 private:
  u64 q_;
};

class TableImpl : public GroupImpl {
 public:
  TableImpl(std::vector<std::uint32_t> table, std::vector<std::uint32_t> inverse, std::vector<u64> gens, u64 n)
      : table_(std::move(table)), inverse_(std::move(inverse)), gens_(std::move(gens)), n_(n) {}
  u64 order() const override { return n_; }
  u64 mul(u64 x, u64 y) const override { return table_[x * n_ + y]; }
  u64 inv(u64 x) const override { return inverse_[x]; }
  std::vector<u64> generators() const override { return gens_; }
  nlohmann::json descriptor() const override {
    nlohmann::json rows = nlohmann::json::array();
    for (u64 i = 0; i < n_; ++i)
      rows.push_back(std::vector<std::uint32_t>(table_.begin() + static_cast<std::ptrdiff_t>(i * n_),
                                                table_.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_)));
    return {{"type", "table"}, {"table", rows}};
  }
  std::string name() const override { return "table(" + std::to_string(n_) + ")"; }

 private:
  std::vector<std::uint32_t> table_, inverse_;
  std::vector<u64> gens_;
  u64 n_;
};

class SemidirectImpl : public GroupImpl {
 public:
  explicit SemidirectImpl(const GroupAction& act) : parts_{act.target(), act.actor(), act} {
    nn_ = parts_.n.order();
    nh_ = parts_.h.order();
    if (nn_ * nh_ > (u64{1} << 32)) throw ResourceLimit("semidirect product too large");
    if (nn_ * nh_ > (u64{1} << 26)) throw ResourceLimit("semidirect product: action table too large");
    perms_.reserve(nh_);
    for (u64 h = 0; h < nh_; ++h) perms_.push_back(act.perm_of(h));
  }
  u64 order() const override { return nn_ * nh_; }
  u64 mul(u64 x, u64 y) const override {
    u64 n1 = x % nn_, h1 = x / nn_, n2 = y % nn_, h2 = y / nn_;
    return parts_.n.mul(n1, perms_[h1][n2]) + nn_ * parts_.h.mul(h1, h2);
  }
  u64 inv(u64 x) const override {
    u64 n = x % nn_, h = x / nn_;
    u64 hi = parts_.h.inv(h);
    return perms_[hi][parts_.n.inv(n)] + nn_ * hi;
  }
  std::vector<u64> generators() const override {
    std::vector<u64> g = parts_.n.generators();
    for (u64 h : parts_.h.generators()) g.push_back(h * nn_);
    return g;
  }
  std::optional<std::vector<Word>> relators() const override {
    auto rn = parts_.n.relators();
    auto rh = parts_.h.relators();
    if (!rn || !rh) return std::nullopt;
    const auto& gn = parts_.n.generators();
    const auto& gh = parts_.h.generators();
    auto off = static_cast<std::uint32_t>(gn.size());
    std::vector<Word> rels = *rn;
    for (const auto& w : *rh) rels.push_back(shifted(w, off));
    // h n h^-1 = ^h n
    for (std::uint32_t j = 0; j < gh.size(); ++j) {
      u64 oh = parts_.h.element_order(gh[j]);
      for (std::uint32_t i = 0; i < gn.size(); ++i) {
        Word target = parts_.n.factor(perms_[gh[j]][gn[i]]);
        rels.push_back(concat({{off + j, i}, power_word(off + j, oh - 1), inverse_word(parts_.n, target)}));
      }
    }
    return rels;
  }
  nlohmann::json descriptor() const override {
    return {{"type", "sdp"},
            {"n", parts_.n.descriptor()},
            {"h", parts_.h.descriptor()},
            {"action", parts_.action.generator_images()}};
  }
  std::string name() const override { return "sdp(" + parts_.n.name() + "," + parts_.h.name() + ")"; }
  const SemidirectParts* semidirect() const override { return &parts_; }

 private:
  SemidirectParts parts_;
  u64 nn_ = 1, nh_ = 1;
  std::vector<Perm> perms_;
};

class PowerImpl : public GroupImpl {
 public:
  PowerImpl(std::vector<Group> factors, bool is_power) : factors_(std::move(factors)), is_power_(is_power) {
    order_ = 1;
    for (const auto& f : factors_) {
      if (order_ > (u64{1} << 40) / f.order()) throw ResourceLimit("direct product too large");
      order_ *= f.order();
    }
  }
  u64 order() const override { return order_; }
  u64 mul(u64 x, u64 y) const override {
    u64 r = 0, place = 1;
    for (const auto& f : factors_) {
      u64 o = f.order();
      r += f.mul(x % o, y % o) * place;
      x /= o;
      y /= o;
      place *= o;
    }
    return r;
  }
  u64 inv(u64 x) const override {
    u64 r = 0, place = 1;
    for (const auto& f : factors_) {
      u64 o = f.order();
      r += f.inv(x % o) * place;
      x /= o;
      place *= o;
    }
    return r;
  }
  std::vector<u64> generators() const override {
    std::vector<u64> g;
    u64 place = 1;
    for (const auto& f : factors_) {
      for (u64 s : f.generators()) g.push_back(s * place);
      place *= f.order();
    }
    return g;
  }
  std::optional<std::vector<Word>> relators() const override {
    std::vector<Word> rels;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ranges;
    std::vector<u64> orders;
    std::uint32_t off = 0;
    for (const auto& f : factors_) {
      auto r = f.relators();
      if (!r) return std::nullopt;
      for (const auto& w : *r) rels.push_back(shifted(w, off));
      auto cnt = static_cast<std::uint32_t>(f.generators().size());
      ranges.emplace_back(off, off + cnt);
      for (u64 s : f.generators()) orders.push_back(f.element_order(s));
      off += cnt;
    }
    for (std::size_t a = 0; a < ranges.size(); ++a)
      for (std::size_t b = a + 1; b < ranges.size(); ++b)
        for (auto i = ranges[a].first; i < ranges[a].second; ++i)
          for (auto j = ranges[b].first; j < ranges[b].second; ++j)
            rels.push_back(commutator_word(i, orders[i], j, orders[j]));
    return rels;
  }
  nlohmann::json descriptor() const override {
    if (is_power_) return {{"type", "power"}, {"base", factors_[0].descriptor()}, {"n", factors_.size()}};
    nlohmann::json f = nlohmann::json::array();
    for (const auto& g : factors_) f.push_back(g.descriptor());
    return {{"type", "product"}, {"factors", f}};
  }
  std::string name() const override {
    if (is_power_) return factors_[0].name() + "^" + std::to_string(factors_.size());
    std::string s;
    for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + factors_[i].name();
    return s;
  }

 private:
  std::vector<Group> factors_;
  bool is_power_;
  u64 order_;
};

}  // namespace

// ---------------------------------------------------------------------------

Group::Group() : Group(cyclic(1)) {}

Group Group::cyclic(u64 n) {
  if (n == 0) throw ParseError("cyclic:n needs n >= 1");
  return wrap(std::make_unique<AbelianImpl>(std::vector<u64>{n}, true));
}
Group Group::abelian(std::vector<u64> orders) {
  if (orders.empty()) throw ParseError("abelian group needs at least one factor");
  return wrap(std::make_unique<AbelianImpl>(std::move(orders), false));
}
Group Group::dihedral(u64 n) { return wrap(std::make_unique<DihedralImpl>(n)); }
Group Group::dicyclic(u64 n) { return wrap(std::make_unique<DicyclicImpl>(n)); }
Group Group::quaternion() { return dicyclic(2); }
Group Group::symmetric(unsigned n) { return wrap(std::make_unique<SymmetricImpl>(n)); }
Group Group::heisenberg(u64 q) { return wrap(std::make_unique<HeisenbergImpl>(q)); }
Group Group::semidirect(const GroupAction& act) { return wrap(std::make_unique<SemidirectImpl>(act)); }
Group Group::direct_product(const Group& a, const Group& b) {
  return wrap(std::make_unique<PowerImpl>(std::vector<Group>{a, b}, false));
}
Group Group::direct_power(const Group& g, unsigned n) {
  if (n < 1) throw ConstructionError("direct power needs n >= 1");
  return wrap(std::make_unique<PowerImpl>(std::vector<Group>(n, g), true));
}

Group Group::from_table(std::vector<std::vector<u64>> table) {
  const u64 n = table.size();
  if (n == 0) throw ParseError("group table is empty");
  if (n > 4096) throw ResourceLimit("group tables are limited to order 4096");
  std::vector<std::uint32_t> flat(n * n);
  for (u64 i = 0; i < n; ++i) {
    if (table[i].size() != n) throw ParseError("group table row " + std::to_string(i) + " has wrong length");
    for (u64 j = 0; j < n; ++j) {
      if (table[i][j] >= n) throw ParseError("group table entry out of range at (" + std::to_string(i) + "," + std::to_string(j) + ")");
      flat[i * n + j] = static_cast<std::uint32_t>(table[i][j]);
    }
  }
  for (u64 i = 0; i < n; ++i)
    if (flat[i] != i || flat[i * n] != i) throw ParseError("index 0 is not the identity of the table");
  // Latin square: every row and column a permutation.
  std::vector<u64> seen(n, ~u64{0});
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j) {
      u64 v = flat[i * n + j];
      if (seen[v] == i) throw ParseError("group table row " + std::to_string(i) + " repeats an entry");
      seen[v] = i;
    }
  std::fill(seen.begin(), seen.end(), ~u64{0});
  for (u64 j = 0; j < n; ++j)
    for (u64 i = 0; i < n; ++i) {
      u64 v = flat[i * n + j];
      if (seen[v] == j) throw ParseError("group table column " + std::to_string(j) + " repeats an entry");
      seen[v] = j;
    }
  std::vector<std::uint32_t> inverse(n);
  for (u64 i = 0; i < n; ++i)
    for (u64 j = 0; j < n; ++j)
      if (flat[i * n + j] == 0) inverse[i] = static_cast<std::uint32_t>(j);
  // Greedy generating set: add the first element outside the closure so far.
  std::vector<u64> gens;
  std::vector<char> in(n, 0);
  in[0] = 1;
  std::vector<u64> members{0};
  for (u64 x = 1; x < n; ++x) {
    if (in[x]) continue;
    gens.push_back(x);
    std::vector<u64> queue(members);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (u64 s : gens) {
        u64 y = flat[queue[head] * n + s];
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    }
    members = std::move(queue);
  }
  // Light's test: associativity holds iff (x s) y = x (s y) for generators s.
  for (u64 s : gens)
    for (u64 x = 0; x < n; ++x) {
      u64 xs = flat[x * n + s];
      for (u64 y = 0; y < n; ++y)
        if (flat[xs * n + y] != flat[x * n + flat[s * n + y]])
          throw ParseError("group table is not associative: (" + std::to_string(x) + "*" + std::to_string(s) + ")*" +
                           std::to_string(y) + " != " + std::to_string(x) + "*(" + std::to_string(s) + "*" +
                           std::to_string(y) + ")");
    }
  return wrap(std::make_unique<TableImpl>(std::move(flat), std::move(inverse), std::move(gens), n));
}

void Group::check(u64 x) const {
  if (x >= core_->order) throw std::out_of_range("group element index " + std::to_string(x) + " out of range");
}

u64 Group::order() const { return core_->order; }
u64 Group::mul(u64 x, u64 y) const {
  check(x);
  check(y);
  return core_->impl->mul(x, y);
}
u64 Group::inv(u64 x) const {
  check(x);
  return core_->impl->inv(x);
}
u64 Group::pow(u64 x, u64 e) const {
  u64 r = 0, b = x;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}
u64 Group::conj(u64 x, u64 y) const { return mul(mul(inv(y), x), y); }
u64 Group::commutator(u64 a, u64 b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }
u64 Group::element_order(u64 x) const {
  check(x);
  u64 k = 1;
  for (u64 y = x; y != 0; y = core_->impl->mul(y, x)) ++k;
  return k;
}
const std::vector<u64>& Group::generators() const { return core_->gens; }
std::optional<std::vector<Word>> Group::relators() const { return core_->impl->relators(); }

Word Group::factor(u64 x) const {
  check(x);
  core_->ensure_bfs();
  Word w;
  while (x != 0) {
    w.push_back(core_->parent_gen[x]);
    x = core_->parent[x];
  }
  std::reverse(w.begin(), w.end());
  return w;
}

u64 Group::evaluate(const Word& w) const {
  u64 r = 0;
  for (auto letter : w) r = core_->impl->mul(r, core_->gens.at(letter));
  return r;
}

std::string Group::name() const { return core_->impl->name(); }
nlohmann::json Group::descriptor() const { return core_->impl->descriptor(); }
const SemidirectParts* Group::semidirect_parts() const { return core_->impl->semidirect(); }
bool Group::same_as(const Group& o) const { return core_ == o.core_ || descriptor() == o.descriptor(); }

std::vector<std::vector<u64>> Group::cayley_table() const {
  if (order() > 4096) throw ResourceLimit("Cayley table requested for a group of order " + std::to_string(order()));
  std::vector<std::vector<u64>> t(order(), std::vector<u64>(order()));
  for (u64 i = 0; i < order(); ++i)
    for (u64 j = 0; j < order(); ++j) t[i][j] = core_->impl->mul(i, j);
  return t;
}

// ---------------------------------------------------------------------------
// Automorphisms and actions

namespace {

void check_automorphism(const Group& g, const Perm& p) {
  const u64 n = g.order();
  if (p.size() != n) throw Error("automorphism has " + std::to_string(p.size()) + " images, group order is " + std::to_string(n));
  if (p[0] != 0) throw Error("automorphism does not fix the identity");
  std::vector<char> hit(n, 0);
  for (u64 x : p) {
    if (x >= n || hit[x]) throw Error("automorphism is not a bijection");
    hit[x] = 1;
  }
  for (u64 s : g.generators())
    for (u64 x = 0; x < n; ++x)
      if (p[g.mul(x, s)] != g.mul(p[x], p[s]))
        throw Error("map is not a homomorphism at (" + std::to_string(x) + ", " + std::to_string(s) + ")");
}

Perm compose(const Perm& a, const Perm& b) {  // a after b
  Perm r(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[b[i]];
  return r;
}

constexpr u64 kActionCacheLimit = u64{1} << 24;

}  // namespace

Automorphism::Automorphism(Group g, Perm perm) : group_(std::move(g)), perm_(std::move(perm)) {
  check_automorphism(group_, perm_);
}

Automorphism Automorphism::from_generator_images(const Group& g, const std::vector<u64>& images) {
  if (images.size() != g.generators().size()) throw Error("automorphism: one image per generator required");
  Perm p(g.order());
  for (u64 x = 0; x < g.order(); ++x) {
    u64 r = 0;
    for (auto letter : g.factor(x)) r = g.mul(r, images[letter]);
    p[x] = r;
  }
  return Automorphism(g, std::move(p));
}

Automorphism Automorphism::identity(const Group& g) {
  Perm p(g.order());
  std::iota(p.begin(), p.end(), u64{0});
  return Automorphism(g, std::move(p));
}

GroupAction::GroupAction(Group actor, Group target, std::vector<Perm> images, bool check)
    : actor_(std::move(actor)), target_(std::move(target)), images_(std::move(images)) {
  if (images_.size() != actor_.generators().size())
    throw Error("group action: expected " + std::to_string(actor_.generators().size()) + " generator images, got " +
                std::to_string(images_.size()));
  if (check) verify();
  if (actor_.order() * target_.order() <= kActionCacheLimit) {
    auto all = std::make_shared<std::vector<Perm>>(actor_.order());
    for (u64 a = 0; a < actor_.order(); ++a) {
      Perm p(target_.order());
      std::iota(p.begin(), p.end(), u64{0});
      for (auto letter : actor_.factor(a)) p = compose(p, images_[letter]);
      (*all)[a] = std::move(p);
    }
    cache_ = std::move(all);
  }
}

GroupAction GroupAction::trivial(const Group& actor, const Group& target) {
  Perm id(target.order());
  std::iota(id.begin(), id.end(), u64{0});
  return GroupAction(actor, target, std::vector<Perm>(actor.generators().size(), id), false);
}

GroupAction GroupAction::conjugation(const Group& g) {
  std::vector<Perm> imgs;
  for (u64 s : g.generators()) {
    Perm p(g.order());
    u64 si = g.inv(s);
    for (u64 x = 0; x < g.order(); ++x) p[x] = g.mul(g.mul(s, x), si);
    imgs.push_back(std::move(p));
  }
  return GroupAction(g, g, std::move(imgs), false);
}

u64 GroupAction::apply(u64 a, u64 g) const {
  if (cache_) return (*cache_)[a][g];
  Word w = actor_.factor(a);
  for (auto it = w.rbegin(); it != w.rend(); ++it) g = images_[*it][g];
  return g;
}

Perm GroupAction::perm_of(u64 a) const {
  if (cache_) return (*cache_)[a];
  Perm p(target_.order());
  std::iota(p.begin(), p.end(), u64{0});
  for (auto letter : actor_.factor(a)) p = compose(p, images_[letter]);
  return p;
}

void GroupAction::verify() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    try {
      check_automorphism(target_, images_[i]);
    } catch (const Error& e) {
      throw Error("action image of generator " + std::to_string(i) + ": " + e.what());
    }
  }
  const u64 n = target_.order();
  if (auto rels = actor_.relators()) {
    Perm id(n);
    std::iota(id.begin(), id.end(), u64{0});
    auto power = [&](const Perm& p, u64 e) {
      Perm r = id, b = p;
      for (; e; e >>= 1) {
        if (e & 1) r = compose(r, b);
        if (e > 1) b = compose(b, b);
      }
      return r;
    };
    for (std::size_t r = 0; r < rels->size(); ++r) {
      const Word& w = (*rels)[r];
      // runs of equal letters are composed by repeated squaring
      Perm total = id;
      for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        total = compose(total, j - i == 1 ? images_[w[i]] : power(images_[w[i]], j - i));
        i = j;
      }
      for (u64 x = 0; x < n; ++x)
        if (total[x] != x)
          throw Error("action violates relator " + std::to_string(r) + " of the acting group at element " + std::to_string(x));
    }
    return;
  }
  if (actor_.order() * n > (u64{1} << 25))
    throw ResourceLimit("action homomorphism check: acting group has no presentation and is too large for a table check");
  // All Cayley edges a -> a*s of the actor: perm(a s) = perm(a) o perm(s).
  std::vector<Perm> all(actor_.order());
  std::vector<char> have(actor_.order(), 0);
  Perm id(n);
  std::iota(id.begin(), id.end(), u64{0});
  all[0] = id;
  have[0] = 1;
  std::vector<u64> queue{0};
  const auto& gens = actor_.generators();
  for (std::size_t head = 0; head < queue.size(); ++head) {
    u64 a = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      u64 b = actor_.mul(a, gens[i]);
      Perm p = compose(all[a], images_[i]);
      if (!have[b]) {
        all[b] = std::move(p);
        have[b] = 1;
        queue.push_back(b);
      } else if (all[b] != p) {
        throw Error("action is not a homomorphism: inconsistent image for actor element " + std::to_string(b));
      }
    }
  }
}

GroupAction GroupAction::pull_back(const Group& b, const std::vector<u64>& images) const {
  if (images.size() != b.generators().size()) throw Error("pull_back: one image per generator required");
  std::vector<Perm> perms;
  for (u64 a : images) perms.push_back(perm_of(a));
  return GroupAction(b, target_, std::move(perms));
}

// ---------------------------------------------------------------------------
// Subgroups

ElementSet subgroup_generated(const Group& g, const std::vector<u64>& gens) {
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<u64> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (u64 s : gens) {
      u64 y = g.mul(queue[head], s);
      if (!in[y]) {
        in[y] = 1;
        queue.push_back(y);
      }
    }
  std::sort(queue.begin(), queue.end());
  return queue;
}

ElementSet normal_closure(const Group& g, const std::vector<u64>& gens) {
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<u64> queue{0};
  std::vector<u64> conj_by = g.generators();
  std::vector<u64> conj_inv;
  for (u64 s : conj_by) conj_inv.push_back(g.inv(s));
  auto add = [&](u64 y) {
    if (!in[y]) {
      in[y] = 1;
      queue.push_back(y);
    }
  };
  for (u64 s : gens) add(s);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    u64 x = queue[head];
    for (u64 s : gens) add(g.mul(x, s));
    for (std::size_t i = 0; i < conj_by.size(); ++i) add(g.mul(g.mul(conj_inv[i], x), conj_by[i]));
  }
  // Closed under conjugation by generators and contains gens; close under products.
  std::vector<u64> elems(queue);
  return subgroup_generated(g, elems);
}

bool is_normal(const Group& g, const ElementSet& s) {
  std::vector<char> in(g.order(), 0);
  for (u64 x : s) in[x] = 1;
  for (u64 t : g.generators()) {
    u64 ti = g.inv(t);
    for (u64 x : s)
      if (!in[g.mul(g.mul(ti, x), t)]) return false;
  }
  return true;
}

ElementSet center(const Group& g) {
  ElementSet z;
  const auto& gens = g.generators();
  for (u64 x = 0; x < g.order(); ++x) {
    bool central = std::all_of(gens.begin(), gens.end(), [&](u64 s) { return g.mul(x, s) == g.mul(s, x); });
    if (central) z.push_back(x);
  }
  return z;
}

ElementSet commutator_subgroup(const Group& g, const std::vector<u64>& a, const std::vector<u64>& b) {
  std::vector<u64> comms;
  for (u64 x : a)
    for (u64 y : b) {
      u64 c = g.commutator(x, y);
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

ElementSet derived_subgroup(const Group& g) { return commutator_subgroup(g, g.generators(), g.generators()); }

namespace {
// Generators for a normal subgroup: the subgroup elements themselves when
// few, otherwise a greedy generating set.
std::vector<u64> gens_of(const Group& g, const ElementSet& s) {
  std::vector<u64> gens;
  std::vector<char> in(g.order(), 0);
  in[0] = 1;
  std::vector<u64> members{0};
  for (u64 x : s) {
    if (in[x]) continue;
    gens.push_back(x);
    std::vector<u64> queue(members);
    for (std::size_t head = 0; head < queue.size(); ++head)
      for (u64 t : gens) {
        u64 y = g.mul(queue[head], t);
        if (!in[y]) {
          in[y] = 1;
          queue.push_back(y);
        }
      }
    members = std::move(queue);
  }
  return gens;
}
}  // namespace

StructuralInvariants structural_invariants(const Group& g) {
  StructuralInvariants inv;
  inv.center = center(g);
  ElementSet all(g.order());
  std::iota(all.begin(), all.end(), u64{0});
  inv.lower_central_series.push_back(all);
  std::vector<u64> cur_gens = g.generators();
  for (;;) {
    ElementSet next = commutator_subgroup(g, cur_gens, g.generators());
    if (next.size() == inv.lower_central_series.back().size()) break;
    inv.lower_central_series.push_back(next);
    if (next.size() == 1) break;
    cur_gens = gens_of(g, next);
  }
  inv.derived = inv.lower_central_series.size() > 1 ? inv.lower_central_series[1] : inv.lower_central_series[0];
  if (inv.lower_central_series.back().size() == 1)
    inv.nilpotency_class = static_cast<unsigned>(inv.lower_central_series.size() - 1);
  for (u64 x = 0; x < g.order(); ++x) ++inv.element_orders[g.element_order(x)];
  return inv;
}

std::optional<unsigned> nilpotency_class(const Group& g) {
  unsigned cls = 0;
  ElementSet cur(g.order());
  std::iota(cur.begin(), cur.end(), u64{0});
  std::vector<u64> cur_gens = g.generators();
  while (cur.size() > 1) {
    ElementSet next = commutator_subgroup(g, cur_gens, g.generators());
    if (next.size() == cur.size()) return std::nullopt;
    cur = std::move(next);
    cur_gens = gens_of(g, cur);
    ++cls;
  }
  return cls;
}

u64 sqrt_odd(const Group& g, u64 x) {
  u64 o = g.element_order(x);
  if (o % 2 == 0) throw Error("sqrt_odd: element " + std::to_string(x) + " has even order " + std::to_string(o));
  return g.pow(x, (o + 1) / 2);
}

QuotientGroup quotient_group(const Group& g, const ElementSet& normal) {
  if (!is_normal(g, normal)) throw Error("quotient_group: subgroup is not normal");
  const u64 n = g.order();
  const u64 k = n / normal.size();
  if (k > 4096) throw ResourceLimit("quotient group too large for a table");
  constexpr u64 kUnset = ~u64{0};
  std::vector<u64> proj(n, kUnset), reps;
  for (u64 x = 0; x < n; ++x) {
    if (proj[x] != kUnset) continue;
    u64 c = reps.size();
    reps.push_back(x);
    for (u64 y : normal) proj[g.mul(x, y)] = c;
  }
  std::vector<std::vector<u64>> table(k, std::vector<u64>(k));
  for (u64 a = 0; a < k; ++a)
    for (u64 b = 0; b < k; ++b) table[a][b] = proj[g.mul(reps[a], reps[b])];
  return {Group::from_table(std::move(table)), std::move(proj), std::move(reps)};
}

std::string group_fingerprint(const Group& g) {
  const u64 n = g.order();
  if (n > 4096) throw ResourceLimit("fingerprint limited to order 4096");
  auto inv = structural_invariants(g);
  std::map<std::pair<u64, u64>, u64> order_centralizer;
  u64 commuting = 0;
  std::vector<char> square(n, 0);
  for (u64 x = 0; x < n; ++x) {
    u64 c = 0;
    for (u64 y = 0; y < n; ++y) c += g.mul(x, y) == g.mul(y, x);
    commuting += c;
    ++order_centralizer[{g.element_order(x), c}];
    square[g.mul(x, x)] = 1;
  }
  std::ostringstream os;
  os << "n=" << n << ";z=" << inv.center.size() << ";d=" << inv.derived.size() << ";cls="
     << (inv.nilpotency_class ? static_cast<int>(*inv.nilpotency_class) : -1) << ";comm=" << commuting
     << ";sq=" << std::count(square.begin(), square.end(), 1) << ";oc=";
  for (auto [k, v] : order_centralizer) os << k.first << "/" << k.second << ":" << v << ",";
  return os.str();
}

// ---------------------------------------------------------------------------

std::vector<unsigned> symmetric_unrank(unsigned n, u64 index) {
  std::vector<unsigned> pool(n);
  std::iota(pool.begin(), pool.end(), 0u);
  std::vector<unsigned> out;
  out.reserve(n);
  for (unsigned i = 0; i < n; ++i) {
    u64 f = factorial(n - 1 - i);
    u64 d = index / f;
    index %= f;
    out.push_back(pool[d]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(d));
  }
  return out;
}

u64 symmetric_rank(const std::vector<unsigned>& perm) {
  const auto n = static_cast<unsigned>(perm.size());
  u64 r = 0;
  for (unsigned i = 0; i < n; ++i) {
    u64 smaller = 0;
    for (unsigned j = i + 1; j < n; ++j) smaller += perm[j] < perm[i];
    r += smaller * factorial(n - 1 - i);
  }
  return r;
}

WreathData direct_power_with_wreath(const GroupAction& a_on_g, unsigned n) {
  if (n < 1) throw ConstructionError("direct_power_with_wreath: n must be >= 1");
  const Group& g = a_on_g.target();
  const Group& a = a_on_g.actor();
  Group gn = Group::direct_power(g, n);
  Group an = Group::direct_power(a, n);
  Group sn = Group::symmetric(n);

  auto digits = [](u64 x, u64 base, unsigned k) {
    std::vector<u64> d(k);
    for (unsigned i = 0; i < k; ++i) {
      d[i] = x % base;
      x /= base;
    }
    return d;
  };
  auto undigits = [](const std::vector<u64>& d, u64 base) {
    u64 x = 0;
    for (auto it = d.rbegin(); it != d.rend(); ++it) x = x * base + *it;
    return x;
  };
  // sigma permutes coordinates: (sigma.v)_i = v_{sigma^-1(i)}, i.e. v_j moves to sigma(j).
  auto permute = [&](const std::vector<unsigned>& sigma, u64 x, u64 base) {
    auto d = digits(x, base, n);
    std::vector<u64> out(n);
    for (unsigned j = 0; j < n; ++j) out[sigma[j]] = d[j];
    return undigits(out, base);
  };

  std::vector<Perm> sn_on_an;
  for (u64 s : sn.generators()) {
    auto sigma = symmetric_unrank(n, s);
    Perm p(an.order());
    for (u64 x = 0; x < an.order(); ++x) p[x] = permute(sigma, x, a.order());
    sn_on_an.push_back(std::move(p));
  }
  Group wreath = Group::semidirect(GroupAction(sn, an, sn_on_an));

  // Generators of the wreath product: those of A^n (copy by copy), then S_n.
  std::vector<Perm> imgs;
  const auto& agens = a.generators();
  for (unsigned copy = 0; copy < n; ++copy)
    for (std::size_t i = 0; i < agens.size(); ++i) {
      const Perm& ap = a_on_g.generator_images()[i];
      Perm p(gn.order());
      for (u64 x = 0; x < gn.order(); ++x) {
        auto d = digits(x, g.order(), n);
        d[copy] = ap[d[copy]];
        p[x] = undigits(d, g.order());
      }
      imgs.push_back(std::move(p));
    }
  for (u64 s : sn.generators()) {
    auto sigma = symmetric_unrank(n, s);
    Perm p(gn.order());
    for (u64 x = 0; x < gn.order(); ++x) p[x] = permute(sigma, x, g.order());
    imgs.push_back(std::move(p));
  }
  GroupAction act(wreath, gn, std::move(imgs));
  return {gn, wreath, act};
}

}  // namespace iyb
