#include "iyb/zk.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "iyb/error.hpp"

namespace iyb::zk {

namespace {

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](u64 x) { return x == 0; });
}

// r <- r - q * s
void sub_multiple(Vec& r, const Vec& s, u64 q, u64 m, std::size_t from = 0) {
  if (q == 0) return;
  for (std::size_t j = from; j < r.size(); ++j) {
    if (s[j] != 0) r[j] = submod(r[j], mulmod(q, s[j], m), m);
  }
}

struct Unimodular {
  u64 s, t, u, v;  // [[s, t], [u, v]], determinant 1
};

// Transform sending (x, y) to (gcd(x, y), 0). When x already divides y this
// is a plain elimination that leaves x's row untouched; otherwise repeated
// clearing passes could swap rows back and forth forever.
Unimodular gcdex(u64 x, u64 y, u64 m) {
  if (x != 0 && y % x == 0) return {1, 0, negmod((y / x) % m, m), 1};
  i64 s, t;
  u64 g = egcd(x, y, s, t);
  return {reduce_signed(s, m), reduce_signed(t, m), negmod((y / g) % m, m), (x / g) % m};
}

// Unimodular combination of rows a and b on column c: afterwards b[c] == 0
// and a[c] == gcd of the old entries.
void gcd_combine(Vec& a, Vec& b, std::size_t c, u64 m) {
  auto [su, tu, u, v] = gcdex(a[c], b[c], m);
  for (std::size_t j = c; j < a.size(); ++j) {
    u64 aj = a[j], bj = b[j];
    a[j] = addmod(mulmod(su, aj, m), mulmod(tu, bj, m), m);
    b[j] = addmod(mulmod(u, aj, m), mulmod(v, bj, m), m);
  }
}

}  // namespace

ZkMatrix::ZkMatrix(u64 modulus, std::size_t rows, std::size_t cols)
    : modulus_(modulus), rows_(rows), cols_(cols), data_(rows * cols, 0) {
  if (modulus < 2) throw std::invalid_argument("ZkMatrix: modulus must be >= 2");
}

ZkMatrix::ZkMatrix(u64 modulus, std::size_t cols, const std::vector<Vec>& rows)
    : ZkMatrix(modulus, rows.size(), cols) {
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw std::invalid_argument("ZkMatrix: ragged rows");
    for (std::size_t j = 0; j < cols; ++j) set(i, j, rows[i][j]);
  }
}

Vec ZkMatrix::row(std::size_t i) const {
  return Vec(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
             data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
}

std::vector<Vec> ZkMatrix::row_list() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
  return out;
}

HowellBasis::HowellBasis(u64 modulus, std::size_t rank) : modulus_(modulus), rank_(rank) {
  if (modulus < 2) throw std::invalid_argument("HowellBasis: modulus must be >= 2");
}

HowellBasis span_of(u64 m, std::size_t rank, std::vector<Vec> a) {
  HowellBasis out(m, rank);
  // Drop zero rows up front; they never matter.
  std::vector<Vec> rows;
  rows.reserve(a.size());
  for (auto& r : a) {
    if (r.size() != rank) throw std::invalid_argument("span_of: vector length mismatch");
    for (auto& x : r) x %= m;
    if (!is_zero(r)) rows.push_back(std::move(r));
  }

  std::size_t top = 0;
  for (std::size_t c = 0; c < rank && top < rows.size(); ++c) {
    std::size_t first = rows.size();
    for (std::size_t i = top; i < rows.size(); ++i) {
      if (rows[i][c] != 0) {
        first = i;
        break;
      }
    }
    if (first == rows.size()) continue;
    std::swap(rows[top], rows[first]);
    for (std::size_t i = top + 1; i < rows.size(); ++i) {
      if (rows[i][c] != 0) gcd_combine(rows[top], rows[i], c, m);
    }
    Vec& piv = rows[top];
    u64 unit = normalizing_unit(piv[c], m);
    if (unit != 1)
      for (std::size_t j = c; j < rank; ++j) piv[j] = mulmod(piv[j], unit, m);
    u64 d = piv[c];
    // Annihilator row: (m/d) * piv vanishes at c and must stay in the span.
    Vec ann(rank, 0);
    for (std::size_t j = c + 1; j < rank; ++j) ann[j] = mulmod(m / d, piv[j], m);
    for (std::size_t i = 0; i < top; ++i) sub_multiple(rows[i], piv, rows[i][c] / d, m, c);
    if (!is_zero(ann)) rows.push_back(std::move(ann));
    out.pivots_.push_back(c);
    ++top;
  }
  rows.resize(top);
  out.rows_ = std::move(rows);
  return out;
}

HowellBasis howell_form(const ZkMatrix& m) { return span_of(m.modulus(), m.cols(), m.row_list()); }

HowellBasis full_module(u64 modulus, std::size_t rank) {
  std::vector<Vec> rows(rank, Vec(rank, 0));
  for (std::size_t i = 0; i < rank; ++i) rows[i][i] = 1;
  return span_of(modulus, rank, std::move(rows));
}

Vec HowellBasis::reduce(const Vec& v) const {
  if (v.size() != rank_) throw std::invalid_argument("reduce: dimension mismatch");
  Vec r(v);
  for (auto& x : r) x %= modulus_;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t c = pivots_[i];
    sub_multiple(r, rows_[i], r[c] / rows_[i][c], modulus_, c);
  }
  return r;
}

bool HowellBasis::contains(const Vec& v) const { return is_zero(reduce(v)); }

std::optional<Vec> HowellBasis::coordinates(const Vec& v) const {
  if (v.size() != rank_) throw std::invalid_argument("coordinates: dimension mismatch");
  Vec r(v);
  for (auto& x : r) x %= modulus_;
  Vec coeff(rows_.size(), 0);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::size_t c = pivots_[i];
    u64 q = r[c] / rows_[i][c];
    coeff[i] = q;
    sub_multiple(r, rows_[i], q, modulus_, c);
  }
  if (!is_zero(r)) return std::nullopt;
  return coeff;
}

bool HowellBasis::contains_all(const HowellBasis& other) const {
  if (other.rank_ != rank_ || other.modulus_ != modulus_) return false;
  return std::all_of(other.rows_.begin(), other.rows_.end(), [&](const Vec& r) { return contains(r); });
}

Cardinality HowellBasis::size() const {
  Cardinality c;
  for (std::size_t i = 0; i < rows_.size(); ++i) c *= Cardinality::of(modulus_ / rows_[i][pivots_[i]]);
  return c;
}

namespace {
void require_same_ambient(const HowellBasis& a, const HowellBasis& b) {
  if (a.modulus() != b.modulus() || a.rank() != b.rank())
    throw std::invalid_argument("submodules live in different ambient modules");
}
}  // namespace

HowellBasis sum(const HowellBasis& a, const HowellBasis& b) {
  require_same_ambient(a, b);
  std::vector<Vec> rows = a.rows();
  rows.insert(rows.end(), b.rows().begin(), b.rows().end());
  return span_of(a.modulus(), a.rank(), std::move(rows));
}

HowellBasis intersection(const HowellBasis& a, const HowellBasis& b) {
  require_same_ambient(a, b);
  const std::size_t r = a.rank();
  const u64 m = a.modulus();
  // Rows (x | x) for x in a and (y | 0) for y in b; span elements with a
  // vanishing first half carry a ∩ b in their second half.
  std::vector<Vec> rows;
  for (const auto& x : a.rows()) {
    Vec row(2 * r);
    std::copy(x.begin(), x.end(), row.begin());
    std::copy(x.begin(), x.end(), row.begin() + static_cast<std::ptrdiff_t>(r));
    rows.push_back(std::move(row));
  }
  for (const auto& y : b.rows()) {
    Vec row(2 * r, 0);
    std::copy(y.begin(), y.end(), row.begin());
    rows.push_back(std::move(row));
  }
  HowellBasis h = span_of(m, 2 * r, std::move(rows));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < h.rows().size(); ++i) {
    if (h.pivots()[i] >= r) out.emplace_back(h.rows()[i].begin() + static_cast<std::ptrdiff_t>(r), h.rows()[i].end());
  }
  return span_of(m, r, std::move(out));
}

HowellBasis image(const ZkMatrix& m) { return howell_form(m); }

HowellBasis kernel(const ZkMatrix& mat) {
  const std::size_t r = mat.rows(), c = mat.cols();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < r; ++i) {
    Vec row(c + r, 0);
    for (std::size_t j = 0; j < c; ++j) row[j] = mat(i, j);
    row[c + i] = 1;
    rows.push_back(std::move(row));
  }
  HowellBasis h = span_of(mat.modulus(), c + r, std::move(rows));
  std::vector<Vec> out;
  for (std::size_t i = 0; i < h.rows().size(); ++i) {
    if (h.pivots()[i] >= c) out.emplace_back(h.rows()[i].begin() + static_cast<std::ptrdiff_t>(c), h.rows()[i].end());
  }
  return span_of(mat.modulus(), r, std::move(out));
}

HowellBasis scale(const HowellBasis& b, u64 factor) {
  std::vector<Vec> rows = b.rows();
  for (auto& r : rows)
    for (auto& x : r) x = mulmod(x, factor % b.modulus(), b.modulus());
  return span_of(b.modulus(), b.rank(), std::move(rows));
}

Cardinality submodule_index(const HowellBasis& b) {
  Cardinality total;
  for (std::size_t i = 0; i < b.rank(); ++i) total *= Cardinality::of(b.modulus());
  return total / b.size();
}

Cardinality relative_index(const HowellBasis& outer, const HowellBasis& inner) {
  if (!outer.contains_all(inner)) throw std::invalid_argument("relative_index: not a submodule");
  return outer.size() / inner.size();
}

// ---------------------------------------------------------------------------
// Quotient modules

namespace {

// Diagonalizes rel (rows are relations among the generators gens) by
// unimodular row and column operations over Z/m. Column operations are
// mirrored on gens by the inverse transform, so the relation module of the
// returned generators is the diagonal. Returns the diagonal entries,
// normalized to divisors of m (0 meaning "no relation").
std::vector<u64> smith_diagonalize(std::vector<Vec>& rel, std::vector<Vec>& gens, u64 m) {
  const std::size_t k = rel.size();
  const std::size_t a = gens.size();
  auto col_swap = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : rel) std::swap(row[i], row[j]);
    std::swap(gens[i], gens[j]);
  };
  // new col_i = s col_i + t col_j, new col_j = u col_i + v col_j, sv - tu = 1
  auto col_combine = [&](std::size_t i, std::size_t j, u64 s, u64 t, u64 u, u64 v) {
    for (auto& row : rel) {
      u64 ci = row[i], cj = row[j];
      row[i] = addmod(mulmod(s, ci, m), mulmod(t, cj, m), m);
      row[j] = addmod(mulmod(u, ci, m), mulmod(v, cj, m), m);
    }
    // gens <- E^{-1} gens, E^{-1} = [[v, -u], [-t, s]] on rows (i, j)
    Vec& gi = gens[i];
    Vec& gj = gens[j];
    for (std::size_t x = 0; x < gi.size(); ++x) {
      u64 xi = gi[x], xj = gj[x];
      gi[x] = addmod(mulmod(v, xi, m), mulmod(negmod(u, m), xj, m), m);
      gj[x] = addmod(mulmod(negmod(t, m), xi, m), mulmod(s, xj, m), m);
    }
  };

  std::vector<u64> diag;
  for (std::size_t t = 0; t < std::min(k, a); ++t) {
    std::size_t pi = k, pj = a;
    for (std::size_t i = t; i < k && pi == k; ++i)
      for (std::size_t j = t; j < a; ++j)
        if (rel[i][j] != 0) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == k) break;
    std::swap(rel[t], rel[pi]);
    col_swap(t, pj);

    for (;;) {
      for (std::size_t i = t + 1; i < k; ++i)
        if (rel[i][t] != 0) gcd_combine(rel[t], rel[i], t, m);
      bool row_clean = true;
      for (std::size_t j = t + 1; j < a; ++j) {
        if (rel[t][j] == 0) continue;
        auto [su, tu, u, v] = gcdex(rel[t][t], rel[t][j], m);
        col_combine(t, j, su, tu, u, v);
        row_clean = false;
      }
      if (!row_clean) {
        // Column ops may have refilled column t below the pivot.
        bool col_clean = true;
        for (std::size_t i = t + 1; i < k; ++i) col_clean = col_clean && rel[i][t] == 0;
        if (!col_clean) continue;
      }
      u64 g = std::gcd(rel[t][t], m);
      std::size_t bad = k;
      for (std::size_t i = t + 1; i < k && bad == k; ++i)
        for (std::size_t j = t + 1; j < a; ++j)
          if (rel[i][j] % g != 0) {
            bad = i;
            break;
          }
      if (bad == k) break;
      for (std::size_t j = t; j < a; ++j) rel[t][j] = addmod(rel[t][j], rel[bad][j], m);
    }
    if (rel[t][t] != 0) {
      u64 unit = normalizing_unit(rel[t][t], m);
      for (auto& x : rel[t]) x = mulmod(x, unit, m);
    }
    diag.push_back(rel[t][t]);
  }
  diag.resize(a, 0);
  return diag;
}

HowellBasis coordinate_helper(const std::vector<Vec>& gens, const HowellBasis& sub) {
  const std::size_t n = sub.rank(), t = gens.size();
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < t; ++i) {
    Vec row(n + t, 0);
    std::copy(gens[i].begin(), gens[i].end(), row.begin());
    row[n + i] = 1;
    rows.push_back(std::move(row));
  }
  for (const auto& s : sub.rows()) {
    Vec row(n + t, 0);
    std::copy(s.begin(), s.end(), row.begin());
    rows.push_back(std::move(row));
  }
  return span_of(sub.modulus(), n + t, std::move(rows));
}

// Coefficients c (one per generator) with v = sum c_i gens_i modulo sub, or
// nullopt if v is outside span(gens) + sub.
std::optional<Vec> helper_coordinates(const HowellBasis& helper, std::size_t n, std::size_t t, const Vec& v) {
  Vec ext(n + t, 0);
  std::copy(v.begin(), v.end(), ext.begin());
  Vec r = helper.reduce(ext);
  for (std::size_t j = 0; j < n; ++j)
    if (r[j] != 0) return std::nullopt;
  Vec c(t);
  for (std::size_t i = 0; i < t; ++i) c[i] = negmod(r[n + i], helper.modulus());
  return c;
}

}  // namespace

QuotientModule::QuotientModule(HowellBasis top, HowellBasis sub)
    : top_(std::move(top)), sub_(std::move(sub)), helper_(top_.modulus(), 1) {
  require_same_ambient(top_, sub_);
  if (!top_.contains_all(sub_)) throw std::invalid_argument("QuotientModule: sub is not contained in top");
  const u64 m = top_.modulus();
  const std::size_t n = top_.rank(), a = top_.rows().size();

  // Relations among the rows of top modulo sub: kernel of (Z/m)^a -> top/sub.
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < a; ++i) {
    Vec row(n + a, 0);
    std::copy(top_.rows()[i].begin(), top_.rows()[i].end(), row.begin());
    row[n + i] = 1;
    rows.push_back(std::move(row));
  }
  for (const auto& s : sub_.rows()) {
    Vec row(n + a, 0);
    std::copy(s.begin(), s.end(), row.begin());
    rows.push_back(std::move(row));
  }
  HowellBasis h = span_of(m, n + a, std::move(rows));
  std::vector<Vec> rel;
  for (std::size_t i = 0; i < h.rows().size(); ++i)
    if (h.pivots()[i] >= n) rel.emplace_back(h.rows()[i].begin() + static_cast<std::ptrdiff_t>(n), h.rows()[i].end());

  std::vector<Vec> gens = top_.rows();
  std::vector<u64> diag = smith_diagonalize(rel, gens, m);
  for (std::size_t i = 0; i < a; ++i) {
    u64 order = diag[i] == 0 ? m : diag[i];
    if (order == 1) continue;
    invariants_.push_back(order);
    generators_.push_back(sub_.reduce(gens[i]));
  }
  // Diagonal entries come out as a divisibility chain; keep it sorted anyway
  // so coordinates are canonical even if equal entries were permuted.
  std::vector<std::size_t> perm(invariants_.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  std::stable_sort(perm.begin(), perm.end(), [&](std::size_t x, std::size_t y) { return invariants_[x] < invariants_[y]; });
  std::vector<u64> inv2;
  std::vector<Vec> gen2;
  for (auto i : perm) {
    inv2.push_back(invariants_[i]);
    gen2.push_back(generators_[i]);
  }
  invariants_ = std::move(inv2);
  generators_ = std::move(gen2);
  helper_ = coordinate_helper(generators_, sub_);
}

Cardinality QuotientModule::size() const {
  Cardinality c;
  for (u64 e : invariants_) c *= Cardinality::of(e);
  return c;
}

Vec QuotientModule::coordinates(const Vec& v) const {
  auto c = helper_coordinates(helper_, top_.rank(), generators_.size(), v);
  if (!c || !top_.contains(v)) throw std::invalid_argument("QuotientModule::coordinates: vector outside the module");
  for (std::size_t i = 0; i < c->size(); ++i) (*c)[i] %= invariants_[i];
  return *c;
}

Vec QuotientModule::lift(const Vec& coords) const {
  const u64 m = top_.modulus();
  Vec out(top_.rank(), 0);
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    u64 c = coords.at(i) % m;
    if (c == 0) continue;
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = addmod(out[j], mulmod(c, generators_[i][j], m), m);
  }
  return out;
}

// ---------------------------------------------------------------------------

LinearSolver::LinearSolver(std::vector<Vec> gens, const HowellBasis& sub)
    : gens_(std::move(gens)), helper_(coordinate_helper(gens_, sub)), n_(sub.rank()) {}

std::optional<Vec> LinearSolver::solve(const Vec& v) const {
  if (v.size() != n_) throw std::invalid_argument("LinearSolver: dimension mismatch");
  return helper_coordinates(helper_, n_, gens_.size(), v);
}

namespace {
std::vector<Vec> concat_rows(const HowellBasis& a, const HowellBasis& b) {
  std::vector<Vec> r = a.rows();
  r.insert(r.end(), b.rows().begin(), b.rows().end());
  return r;
}
}  // namespace

Projection::Projection(const HowellBasis& image, const HowellBasis& kernel, const HowellBasis& sub)
    : image_(image), kernel_(kernel), sub_(sub), solver_(concat_rows(image, kernel), sub), image_gens_(image.rows().size()) {
  if (!(intersection(sum(image, sub), sum(kernel, sub)) == sub))
    throw std::invalid_argument("Projection: image and kernel overlap beyond sub");
}

Vec Projection::apply(const Vec& v) const {
  auto c = solver_.solve(v);
  if (!c) throw std::invalid_argument("Projection: vector outside image + kernel");
  const u64 m = sub_.modulus();
  Vec out(v.size(), 0);
  for (std::size_t i = 0; i < image_gens_; ++i)
    if ((*c)[i] != 0)
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = addmod(out[j], mulmod((*c)[i], image_.rows()[i][j], m), m);
  return sub_.reduce(out);
}

std::vector<HowellBasis> enumerate_submodules(const HowellBasis& top, const HowellBasis& sub,
                                              const std::function<bool(const HowellBasis&)>& keep,
                                              const std::function<HowellBasis(HowellBasis)>& close,
                                              std::size_t limit) {
  const u64 m = top.modulus();
  // Coset representatives of top/sub through the quotient coordinates.
  QuotientModule q(top, sub);
  u64 count = q.size().to_u64();
  if (count > (u64{1} << 22)) throw ResourceLimit("enumerate_submodules: quotient too large");
  std::vector<Vec> reps;
  reps.reserve(count);
  Vec c(q.dimension(), 0);
  for (u64 i = 0; i < count; ++i) {
    reps.push_back(q.lift(c));
    for (std::size_t j = 0; j < c.size(); ++j) {
      if (++c[j] < q.invariants()[j]) break;
      c[j] = 0;
    }
  }
  auto canon = [&](HowellBasis b) { return close ? close(std::move(b)) : b; };
  std::set<std::vector<Vec>> seen;
  std::vector<HowellBasis> out;
  HowellBasis start = canon(sub);
  if (!keep || keep(start)) {
    seen.insert(start.rows());
    out.push_back(start);
  }
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (const auto& r : reps) {
      if (out[head].contains(r)) continue;
      std::vector<Vec> rows = out[head].rows();
      rows.push_back(r);
      HowellBasis next = canon(span_of(m, top.rank(), std::move(rows)));
      if (seen.count(next.rows())) continue;
      seen.insert(next.rows());
      if (keep && !keep(next)) continue;
      out.push_back(std::move(next));
      if (out.size() > limit) throw ResourceLimit("enumerate_submodules: more than " + std::to_string(limit) + " submodules");
    }
  }
  std::sort(out.begin(), out.end(), [](const HowellBasis& a, const HowellBasis& b) { return a.rows() < b.rows(); });
  return out;
}

// ---------------------------------------------------------------------------

HowellBasis pure_complement(const HowellBasis& s, const HowellBasis& top, const HowellBasis& sub) {
  require_same_ambient(s, top);
  require_same_ambient(sub, top);
  const u64 m = top.modulus();
  const std::size_t n = top.rank();
  HowellBasis s_plus = sum(s, sub);
  if (!top.contains_all(s_plus)) throw std::invalid_argument("pure_complement: S is not inside the ambient module");

  // Lift a basis of top/(S+sub); each lift a with order f in the quotient is
  // corrected by an element of S so that f*a lands in sub. That is possible
  // for every generator exactly when S is pure, i.e. a direct summand.
  QuotientModule quot(top, s_plus);
  const std::vector<Vec>& sgens = s.rows();
  std::map<u64, HowellBasis> helpers;
  std::vector<Vec> comp = sub.rows();
  for (std::size_t j = 0; j < quot.dimension(); ++j) {
    u64 f = quot.invariants()[j];
    Vec a = quot.generators()[j];
    Vec fa(n);
    for (std::size_t x = 0; x < n; ++x) fa[x] = mulmod(f, a[x], m);
    auto it = helpers.find(f);
    if (it == helpers.end()) {
      std::vector<Vec> fs = sgens;
      for (auto& v : fs)
        for (auto& x : v) x = mulmod(f, x, m);
      it = helpers.emplace(f, coordinate_helper(fs, sub)).first;
    }
    auto c = helper_coordinates(it->second, n, sgens.size(), fa);
    if (!c) throw NotASummand("submodule is not a direct summand (no complement exists)");
    for (std::size_t i = 0; i < sgens.size(); ++i) sub_multiple(a, sgens[i], (*c)[i], m);
    comp.push_back(std::move(a));
  }
  HowellBasis c = span_of(m, n, std::move(comp));
  if (!(intersection(c, s_plus) == sub) || !(c.size() * s_plus.size() == top.size() * sub.size()))
    throw NotASummand("complement check failed");
  return c;
}

HowellBasis pure_complement(const HowellBasis& s) {
  return pure_complement(s, full_module(s.modulus(), s.rank()), HowellBasis(s.modulus(), s.rank()));
}

// ---------------------------------------------------------------------------

HyperplaneStream::HyperplaneStream(const HowellBasis& j, const HowellBasis& rad, const Vec& v)
    : quotient_(j, rad) {
  if (!j.contains(v)) throw std::invalid_argument("hyperplanes_avoiding: v is not in J");
  for (u64 e : quotient_.invariants()) {
    if (p_ == 0) p_ = e;
    if (e != p_ || !is_prime(e)) throw std::invalid_argument("hyperplanes_avoiding: J/rad is not elementary abelian");
  }
  if (p_ == 0) p_ = prime_power_base(j.modulus());
  target_ = quotient_.coordinates(v);
  auto nz = std::find_if(target_.begin(), target_.end(), [](u64 x) { return x != 0; });
  if (nz == target_.end()) {
    count_ = 0;
    return;
  }
  pivot_ = static_cast<std::size_t>(nz - target_.begin());
  count_ = 1;
  for (std::size_t i = 1; i < dimension(); ++i) count_ *= p_;
}

HowellBasis HyperplaneStream::at(u64 index) const {
  if (index >= count_) throw std::out_of_range("HyperplaneStream::at");
  const std::size_t d = dimension();
  const u64 m = quotient_.top().modulus();
  // Functional lambda with lambda . target = 1: free coordinates are the base-p
  // digits of index, the pivot coordinate is solved for.
  Vec lambda(d, 0);
  u64 acc = 0;
  for (std::size_t i = 0; i < d; ++i) {
    if (i == pivot_) continue;
    lambda[i] = index % p_;
    index /= p_;
    acc = addmod(acc, mulmod(lambda[i], target_[i], p_), p_);
  }
  lambda[pivot_] = mulmod(submod(1, acc, p_), invmod(target_[pivot_], p_), p_);

  std::size_t lead = 0;
  while (lambda[lead] == 0) ++lead;
  u64 lead_inv = invmod(lambda[lead], p_);
  std::vector<Vec> rows = quotient_.sub().rows();
  for (std::size_t i = 0; i < d; ++i) {
    if (i == lead) continue;
    Vec coords(d, 0);
    coords[i] = 1;
    coords[lead] = negmod(mulmod(lambda[i], lead_inv, p_), p_);
    rows.push_back(quotient_.lift(coords));
  }
  return span_of(m, quotient_.top().rank(), std::move(rows));
}

HowellBasis HyperplaneStream::sample(std::mt19937_64& rng) const {
  if (count_ == 0) throw std::out_of_range("HyperplaneStream::sample: empty stream");
  std::uniform_int_distribution<u64> dist(0, count_ - 1);
  return at(dist(rng));
}

}  // namespace iyb::zk
