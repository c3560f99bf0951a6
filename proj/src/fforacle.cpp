#include "monodromy/fforacle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>

#include "monodromy/errors.hpp"

namespace monodromy {

namespace {

using Element = FiniteField::Element;

// Irreducible moduli, ascending coefficients, for the supported extensions.
const std::map<std::pair<int, int>, std::vector<int>>& modulus_table() {
  static const std::map<std::pair<int, int>, std::vector<int>> table = {
      {{2, 2}, {1, 1, 1}},     // x^2 + x + 1
      {{2, 3}, {1, 1, 0, 1}},  // x^3 + x + 1
      {{3, 2}, {1, 0, 1}},     // x^2 + 1
      {{3, 3}, {1, 2, 0, 1}},  // x^3 + 2x + 1
      {{5, 2}, {2, 1, 1}},     // x^2 + x + 2
      {{5, 3}, {3, 3, 0, 1}},  // x^3 + 3x + 3
      {{7, 2}, {1, 0, 1}},     // x^2 + 1
      {{7, 3}, {2, 3, 0, 1}},  // x^3 + 3x + 2
  };
  return table;
}

std::uint64_t checked_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < exp; ++i) {
    if (result > (std::uint64_t{1} << 40) / base) throw BudgetExceeded("enumeration space exceeds 2^40");
    result *= base;
  }
  return result;
}

void check_group_budget(int n, int q, const OracleLimits& limits) {
  if (n < 1) throw InputError("matrix size must be >= 1");
  const Integer order = gl_order_value(n, q);
  if (!limits.override_budget && order > limits.max_group_order) {
    throw BudgetExceeded("|GL_" + std::to_string(n) + "(F_" + std::to_string(q) + ")| = " + order.get_str() +
                         " exceeds the enumeration budget of " + std::to_string(limits.max_group_order));
  }
}

}  // namespace

// ---------------------------------------------------------------- FiniteField

FiniteField FiniteField::make(int p, int e) {
  if (p != 2 && p != 3 && p != 5 && p != 7) {
    throw UnsupportedField("characteristic " + std::to_string(p) + " is not in {2, 3, 5, 7}");
  }
  if (e < 1 || e > 3) throw UnsupportedField("extension degree " + std::to_string(e) + " is not in 1..3");
  if (e == 1) return FiniteField(p, 1, {0, 1});

  const std::vector<int>& modulus = modulus_table().at({p, e});
  const FiniteField prime(p, 1, {0, 1});
  FieldPoly as_poly(modulus.begin(), modulus.end());
  if (!fieldpoly::is_irreducible(prime, as_poly)) {
    throw std::logic_error("modulus table entry for F_" + std::to_string(p) + "^" + std::to_string(e) +
                           " is reducible");
  }
  return FiniteField(p, e, modulus);
}

FiniteField FiniteField::for_order(int q) {
  for (int p : {2, 3, 5, 7}) {
    int power = 1;
    for (int e = 1; e <= 3; ++e) {
      power *= p;
      if (power == q) return make(p, e);
    }
  }
  throw UnsupportedField("no supported field of order " + std::to_string(q));
}

FiniteField::FiniteField(int p, int e, std::vector<int> modulus)
    : p_(p), e_(e), q_(1), modulus_(std::move(modulus)) {
  for (int i = 0; i < e; ++i) q_ *= p;
  const auto q = static_cast<std::size_t>(q_);

  std::vector<std::vector<int>> digits(q, std::vector<int>(static_cast<std::size_t>(e)));
  for (std::size_t a = 0; a < q; ++a) {
    std::size_t v = a;
    for (int j = 0; j < e; ++j) {
      digits[a][j] = static_cast<int>(v % p);
      v /= p;
    }
  }
  auto encode = [&](const std::vector<int>& d) {
    std::size_t v = 0;
    for (int j = e - 1; j >= 0; --j) v = v * p + d[j];
    return static_cast<Element>(v);
  };

  add_.resize(q * q);
  mul_.resize(q * q);
  neg_.resize(q);
  inv_.assign(q, 0);
  std::vector<int> sum(static_cast<std::size_t>(e));
  for (std::size_t a = 0; a < q; ++a) {
    for (int j = 0; j < e; ++j) sum[j] = (p - digits[a][j]) % p;
    neg_[a] = encode(sum);
    for (std::size_t b = 0; b < q; ++b) {
      for (int j = 0; j < e; ++j) sum[j] = (digits[a][j] + digits[b][j]) % p;
      add_[a * q + b] = encode(sum);

      // Schoolbook product, then reduce by the monic modulus from the top.
      std::vector<int> prod(static_cast<std::size_t>(2 * e - 1), 0);
      for (int i = 0; i < e; ++i) {
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + digits[a][i] * digits[b][j]) % p;
      }
      for (int top = 2 * e - 2; top >= e; --top) {
        const int c = prod[top];
        if (c == 0) continue;
        for (int j = 0; j <= e; ++j) prod[top - e + j] = ((prod[top - e + j] - c * modulus_[j]) % p + p) % p;
      }
      prod.resize(static_cast<std::size_t>(e));
      mul_[a * q + b] = encode(prod);
    }
  }
  for (std::size_t a = 1; a < q; ++a) {
    for (std::size_t b = 1; b < q; ++b) {
      if (mul_[a * q + b] == 1) {
        inv_[a] = static_cast<Element>(b);
        break;
      }
    }
  }
}

Element FiniteField::inv(Element a) const {
  if (a == 0) throw std::domain_error("zero has no inverse");
  return inv_[a];
}

Element FiniteField::from_int(long v) const { return static_cast<Element>(((v % p_) + p_) % p_); }

int FiniteField::element_order(Element a) const {
  if (a == 0) throw std::domain_error("zero has no multiplicative order");
  int order = 1;
  for (Element x = a; x != 1; x = mul(x, a)) ++order;
  return order;
}

Element FiniteField::primitive_element() const {
  for (int a = 1; a < q_; ++a) {
    if (element_order(static_cast<Element>(a)) == q_ - 1) return static_cast<Element>(a);
  }
  throw std::logic_error("multiplicative group is not cyclic");
}

// ---------------------------------------------------------------- FieldPoly

namespace fieldpoly {

void trim(FieldPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

FieldPoly add(const FiniteField& f, const FieldPoly& a, const FieldPoly& b) {
  FieldPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.add(i < a.size() ? a[i] : Element{0}, i < b.size() ? b[i] : Element{0});
  }
  trim(out);
  return out;
}

FieldPoly sub(const FiniteField& f, const FieldPoly& a, const FieldPoly& b) {
  FieldPoly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = f.sub(i < a.size() ? a[i] : Element{0}, i < b.size() ? b[i] : Element{0});
  }
  trim(out);
  return out;
}

FieldPoly mul(const FiniteField& f, const FieldPoly& a, const FieldPoly& b) {
  if (a.empty() || b.empty()) return {};
  FieldPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(a[i], b[j]));
  }
  trim(out);
  return out;
}

std::pair<FieldPoly, FieldPoly> divmod(const FiniteField& f, const FieldPoly& a, const FieldPoly& b) {
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  FieldPoly rem = a;
  trim(rem);
  if (rem.size() < b.size()) return {{}, rem};
  const std::size_t db = b.size() - 1;
  const Element lead_inv = f.inv(b.back());
  FieldPoly quot(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    if (rem[i] == 0) continue;
    const Element factor = f.mul(rem[i], lead_inv);
    quot[i - db] = factor;
    for (std::size_t j = 0; j <= db; ++j) rem[i - db + j] = f.sub(rem[i - db + j], f.mul(factor, b[j]));
  }
  rem.resize(db);
  trim(rem);
  trim(quot);
  return {quot, rem};
}

FieldPoly derivative(const FiniteField& f, const FieldPoly& a) {
  if (a.size() <= 1) return {};
  FieldPoly out(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = f.mul(f.from_int(static_cast<long>(i)), a[i]);
  trim(out);
  return out;
}

FieldPoly gcd(const FiniteField& f, const FieldPoly& a, const FieldPoly& b) {
  FieldPoly x = a;
  FieldPoly y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    FieldPoly r = divmod(f, x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    const Element inv = f.inv(x.back());
    for (auto& c : x) c = f.mul(c, inv);
  }
  return x;
}

std::vector<FieldPoly> monic_of_degree(const FiniteField& f, int degree) {
  const auto q = static_cast<std::uint64_t>(f.order());
  const std::uint64_t count = checked_pow(q, static_cast<std::uint64_t>(degree));
  std::vector<FieldPoly> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    FieldPoly p(static_cast<std::size_t>(degree) + 1);
    std::uint64_t v = idx;
    for (int j = 0; j < degree; ++j) {
      p[j] = static_cast<Element>(v % q);
      v /= q;
    }
    p[degree] = 1;
    out.push_back(std::move(p));
  }
  return out;
}

bool is_irreducible(const FiniteField& f, const FieldPoly& a) {
  FieldPoly p = a;
  trim(p);
  const int deg = static_cast<int>(p.size()) - 1;
  if (deg < 1) return false;
  // A reducible polynomial has a monic factor of degree <= deg/2.
  for (int d = 1; 2 * d <= deg; ++d) {
    for (const auto& candidate : monic_of_degree(f, d)) {
      if (divmod(f, p, candidate).second.empty()) return false;
    }
  }
  return true;
}

}  // namespace fieldpoly

// ---------------------------------------------------------------- FFMatrix

FFMatrix::FFMatrix(int n, std::vector<FiniteField::Element> entries) : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != static_cast<std::size_t>(n) * n) throw std::invalid_argument("matrix needs n*n entries");
}

FFMatrix FFMatrix::identity(int n) {
  FFMatrix m(n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FFMatrix FFMatrix::from_code(int n, int q, std::uint64_t code) {
  FFMatrix m(n);
  for (auto& e : m.entries_) {
    e = static_cast<FiniteField::Element>(code % static_cast<std::uint64_t>(q));
    code /= static_cast<std::uint64_t>(q);
  }
  return m;
}

std::uint64_t FFMatrix::code(int q) const {
  std::uint64_t v = 0;
  for (std::size_t i = entries_.size(); i-- > 0;) v = v * static_cast<std::uint64_t>(q) + entries_[i];
  return v;
}

namespace matrix {

FFMatrix mul(const FiniteField& f, const FFMatrix& a, const FFMatrix& b) {
  const int n = a.size();
  FFMatrix out(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Element acc = 0;
      for (int l = 0; l < n; ++l) acc = f.add(acc, f.mul(a.at(i, l), b.at(l, j)));
      out.set(i, j, acc);
    }
  }
  return out;
}

FiniteField::Element det(const FiniteField& f, const FFMatrix& a) {
  const int n = a.size();
  FFMatrix m = a;
  Element result = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (int j = 0; j < n; ++j) {
        const Element t = m.at(col, j);
        m.set(col, j, m.at(pivot, j));
        m.set(pivot, j, t);
      }
      result = f.neg(result);
    }
    const Element p = m.at(col, col);
    result = f.mul(result, p);
    const Element p_inv = f.inv(p);
    for (int row = col + 1; row < n; ++row) {
      const Element factor = f.mul(m.at(row, col), p_inv);
      if (factor == 0) continue;
      for (int j = col; j < n; ++j) m.set(row, j, f.sub(m.at(row, j), f.mul(factor, m.at(col, j))));
    }
  }
  return result;
}

FFMatrix inverse(const FiniteField& f, const FFMatrix& a) {
  const int n = a.size();
  FFMatrix m = a;
  FFMatrix inv = FFMatrix::identity(n);
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && m.at(pivot, col) == 0) ++pivot;
    if (pivot == n) throw std::domain_error("singular matrix has no inverse");
    for (int j = 0; j < n; ++j) {
      Element t = m.at(col, j);
      m.set(col, j, m.at(pivot, j));
      m.set(pivot, j, t);
      t = inv.at(col, j);
      inv.set(col, j, inv.at(pivot, j));
      inv.set(pivot, j, t);
    }
    const Element p_inv = f.inv(m.at(col, col));
    for (int j = 0; j < n; ++j) {
      m.set(col, j, f.mul(m.at(col, j), p_inv));
      inv.set(col, j, f.mul(inv.at(col, j), p_inv));
    }
    for (int row = 0; row < n; ++row) {
      if (row == col) continue;
      const Element factor = m.at(row, col);
      if (factor == 0) continue;
      for (int j = 0; j < n; ++j) {
        m.set(row, j, f.sub(m.at(row, j), f.mul(factor, m.at(col, j))));
        inv.set(row, j, f.sub(inv.at(row, j), f.mul(factor, inv.at(col, j))));
      }
    }
  }
  return inv;
}

bool commutes(const FiniteField& f, const FFMatrix& a, const FFMatrix& b) {
  const int n = a.size();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      Element ab = 0;
      Element ba = 0;
      for (int l = 0; l < n; ++l) {
        ab = f.add(ab, f.mul(a.at(i, l), b.at(l, j)));
        ba = f.add(ba, f.mul(b.at(i, l), a.at(l, j)));
      }
      if (ab != ba) return false;
    }
  }
  return true;
}

FFMatrix conjugate(const FiniteField& f, const FFMatrix& g, const FFMatrix& g_inv, const FFMatrix& a) {
  return mul(f, mul(f, g, a), g_inv);
}

FFMatrix companion(const FiniteField& f, const FieldPoly& monic) {
  const int n = static_cast<int>(monic.size()) - 1;
  if (n < 1 || monic.back() != 1) throw std::invalid_argument("companion matrix needs a monic polynomial of degree >= 1");
  FFMatrix c(n);
  for (int i = 1; i < n; ++i) c.set(i, i - 1, 1);
  for (int i = 0; i < n; ++i) c.set(i, n - 1, f.neg(monic[i]));
  return c;
}

std::uint64_t order(const FiniteField& f, const FFMatrix& a) {
  const FFMatrix id = FFMatrix::identity(a.size());
  if (det(f, a) == 0) throw std::domain_error("singular matrix has no multiplicative order");
  std::uint64_t k = 1;
  for (FFMatrix x = a; !(x == id); x = mul(f, x, a)) ++k;
  return k;
}

}  // namespace matrix

// ---------------------------------------------------------------- min poly

FieldPoly min_poly(const FiniteField& f, const FFMatrix& a) {
  const int n = a.size();
  const auto len = static_cast<std::size_t>(n) * n;
  struct Row {
    std::vector<Element> vec;
    FieldPoly combo;  // coefficients over I, A, A^2, ...
    std::size_t pivot;
  };
  std::vector<Row> rows;
  FFMatrix power = FFMatrix::identity(n);
  for (int j = 0; j <= n; ++j) {
    std::vector<Element> v(power.entries().begin(), power.entries().end());
    FieldPoly combo(static_cast<std::size_t>(j) + 1, 0);
    combo[j] = 1;
    for (const Row& row : rows) {
      if (v[row.pivot] == 0) continue;
      const Element factor = f.mul(v[row.pivot], f.inv(row.vec[row.pivot]));
      for (std::size_t t = 0; t < len; ++t) v[t] = f.sub(v[t], f.mul(factor, row.vec[t]));
      for (std::size_t t = 0; t < row.combo.size(); ++t) combo[t] = f.sub(combo[t], f.mul(factor, row.combo[t]));
    }
    auto nz = std::find_if(v.begin(), v.end(), [](Element e) { return e != 0; });
    if (nz == v.end()) return combo;  // A^j + lower powers = 0, already monic
    const auto pivot = static_cast<std::size_t>(nz - v.begin());
    rows.push_back({std::move(v), std::move(combo), pivot});
    power = matrix::mul(f, power, a);
  }
  throw std::logic_error("minimal polynomial exceeded degree n");
}

bool is_semisimple(const FiniteField& f, const FFMatrix& a) {
  const FieldPoly m = min_poly(f, a);
  return fieldpoly::gcd(f, m, fieldpoly::derivative(f, m)).size() == 1;
}

// ---------------------------------------------------------------- GL_n

Integer gl_order_value(int n, int q) {
  Integer qn;
  mpz_ui_pow_ui(qn.get_mpz_t(), static_cast<unsigned long>(q), static_cast<unsigned long>(n));
  Integer result = 1;
  Integer qj = 1;
  for (int j = 0; j < n; ++j) {
    result *= qn - qj;
    qj *= q;
  }
  return result;
}

void for_each_invertible(int n, const FiniteField& f, const std::function<void(const FFMatrix&)>& visit,
                         const OracleLimits& limits) {
  check_group_budget(n, f.order(), limits);
  const std::uint64_t total = checked_pow(static_cast<std::uint64_t>(f.order()), static_cast<std::uint64_t>(n) * n);
  for (std::uint64_t code = 0; code < total; ++code) {
    FFMatrix m = FFMatrix::from_code(n, f.order(), code);
    if (matrix::det(f, m) != 0) visit(m);
  }
}

std::vector<FFMatrix> enumerate_invertible(int n, const FiniteField& f, const OracleLimits& limits) {
  std::vector<FFMatrix> out;
  for_each_invertible(n, f, [&out](const FFMatrix& m) { out.push_back(m); }, limits);
  return out;
}

GLContext::GLContext(const FiniteField& field, int n, const OracleLimits& limits) : field_(field), n_(n) {
  check_group_budget(n, field.order(), limits);
  const std::uint64_t total =
      checked_pow(static_cast<std::uint64_t>(field.order()), static_cast<std::uint64_t>(n) * n);
  flags_.assign(total, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    const FFMatrix m = decode(code);
    if (matrix::det(field_, m) == 0) continue;
    flags_[code] |= kInvertible;
    invertible_.push_back(code);
    if (monodromy::is_semisimple(field_, m)) {
      flags_[code] |= kSemisimple;
      semisimple_.push_back(code);
    }
  }
}

std::vector<std::uint64_t> GLContext::centralizer(std::span<const FFMatrix> with) const {
  const FiniteField& f = field_;
  const int n = n_;
  const auto vars = static_cast<std::size_t>(n) * n;

  // One equation per entry of XY - YX; variable index a*n+b is Y(a, b).
  std::vector<std::vector<Element>> rows;
  for (const FFMatrix& x : with) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::vector<Element> eq(vars, 0);
        for (int a = 0; a < n; ++a) eq[static_cast<std::size_t>(a) * n + j] = f.add(eq[static_cast<std::size_t>(a) * n + j], x.at(i, a));
        for (int b = 0; b < n; ++b) eq[static_cast<std::size_t>(i) * n + b] = f.sub(eq[static_cast<std::size_t>(i) * n + b], x.at(b, j));
        rows.push_back(std::move(eq));
      }
    }
  }

  // Reduced row echelon form.
  std::vector<std::size_t> pivot_cols;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < vars && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const Element inv = f.inv(rows[rank][col]);
    for (auto& e : rows[rank]) e = f.mul(e, inv);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Element factor = rows[r][col];
      for (std::size_t c = 0; c < vars; ++c) rows[r][c] = f.sub(rows[r][c], f.mul(factor, rows[rank][c]));
    }
    pivot_cols.push_back(col);
    ++rank;
  }

  // Null-space basis: one vector per free column.
  std::vector<bool> is_pivot(vars, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<std::vector<Element>> basis;
  for (std::size_t free = 0; free < vars; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Element> v(vars, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = f.neg(rows[r][free]);
    basis.push_back(std::move(v));
  }

  // Spread each basis vector over the F_p-basis 1, x, ..., x^{e-1} of F_q so
  // that an odometer with base-p digits walks the whole F_q-span by additions.
  std::vector<std::vector<Element>> steps;
  Element power = 1;
  std::vector<Element> prime_basis;
  for (int t = 0; t < f.degree(); ++t) {
    prime_basis.push_back(power);
    power = static_cast<Element>(power * f.characteristic());
  }
  for (const auto& v : basis) {
    for (Element alpha : prime_basis) {
      std::vector<Element> scaled(vars);
      for (std::size_t c = 0; c < vars; ++c) scaled[c] = f.mul(alpha, v[c]);
      steps.push_back(std::move(scaled));
    }
  }

  const auto q = static_cast<std::uint64_t>(f.order());
  const int p = f.characteristic();
  std::vector<Element> current(vars, 0);
  std::vector<int> digit(steps.size(), 0);
  std::vector<std::uint64_t> out;
  while (true) {
    std::uint64_t code = 0;
    for (std::size_t c = vars; c-- > 0;) code = code * q + current[c];
    if (is_invertible(code)) out.push_back(code);

    std::size_t pos = 0;
    for (; pos < steps.size(); ++pos) {
      for (std::size_t c = 0; c < vars; ++c) current[c] = f.add(current[c], steps[pos][c]);
      if (++digit[pos] < p) break;
      digit[pos] = 0;  // p additions returned this coordinate to zero
    }
    if (pos == steps.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------- tuple counts

namespace {

struct Candidate {
  std::uint64_t code;
  FFMatrix matrix;
};

class TupleWalker {
 public:
  TupleWalker(const GLContext& ctx, int k, TupleMode mode) : ctx_(ctx), k_(k), mode_(mode) {}

  bool allowed(int position, std::uint64_t code) const {
    if (mode_ == TupleMode::kLastFree && position == k_ - 1) return ctx_.is_invertible(code);
    return ctx_.is_semisimple(code);
  }

  std::vector<Candidate> first_centralizer(const FFMatrix& x) const {
    std::vector<Candidate> out;
    const FFMatrix with[] = {x};
    for (auto code : ctx_.centralizer(with)) out.push_back({code, ctx_.decode(code)});
    return out;
  }

  // Tuples extending a prefix of length `position` whose common centralizer
  // (invertible part) is `pool`.
  std::uint64_t count_from(int position, const std::vector<Candidate>& pool) const {
    if (position == k_ - 1) {
      return static_cast<std::uint64_t>(
          std::count_if(pool.begin(), pool.end(), [&](const Candidate& c) { return allowed(position, c.code); }));
    }
    std::uint64_t total = 0;
    for (const auto& c : pool) {
      if (!allowed(position, c.code)) continue;
      total += count_from(position + 1, narrow(pool, c.matrix));
    }
    return total;
  }

  void collect_from(int position, const std::vector<Candidate>& pool, std::vector<std::uint64_t>& prefix,
                    std::vector<std::vector<std::uint64_t>>& out) const {
    for (const auto& c : pool) {
      if (!allowed(position, c.code)) continue;
      prefix.push_back(c.code);
      if (position == k_ - 1) {
        out.push_back(prefix);
      } else {
        collect_from(position + 1, narrow(pool, c.matrix), prefix, out);
      }
      prefix.pop_back();
    }
  }

 private:
  std::vector<Candidate> narrow(const std::vector<Candidate>& pool, const FFMatrix& x) const {
    std::vector<Candidate> out;
    for (const auto& c : pool) {
      if (matrix::commutes(ctx_.field(), c.matrix, x)) out.push_back(c);
    }
    return out;
  }

  const GLContext& ctx_;
  int k_;
  TupleMode mode_;
};

}  // namespace

std::uint64_t brute_hom_count(int n, const FiniteField& f, int k, TupleMode mode, const OracleLimits& limits) {
  if (k < 0) throw InputError("tuple length must be >= 0");
  if (k == 0) return 1;
  const GLContext ctx(f, n, limits);
  const TupleWalker walker(ctx, k, mode);
  const auto& first = (k == 1 && mode == TupleMode::kLastFree) ? ctx.invertible() : ctx.semisimple();
  if (k == 1) return first.size();

  auto work = [&](std::size_t begin, std::size_t end) {
    std::uint64_t sum = 0;
    for (std::size_t i = begin; i < end; ++i) sum += walker.count_from(1, walker.first_centralizer(ctx.decode(first[i])));
    return sum;
  };

  const unsigned threads = std::max(1U, limits.threads);
  if (threads == 1) return work(0, first.size());
  std::vector<std::uint64_t> partial(threads, 0);
  std::vector<std::thread> pool;
  const std::size_t chunk = (first.size() + threads - 1) / threads;
  for (unsigned t = 0; t < threads; ++t) {
    const std::size_t begin = std::min(first.size(), t * chunk);
    const std::size_t end = std::min(first.size(), begin + chunk);
    pool.emplace_back([&, t, begin, end] { partial[t] = work(begin, end); });
  }
  for (auto& th : pool) th.join();
  std::uint64_t total = 0;
  for (auto v : partial) total += v;
  return total;
}

std::vector<std::vector<std::uint64_t>> semisimple_tuples(const GLContext& ctx, int k) {
  if (k < 1) throw InputError("tuple length must be >= 1");
  const TupleWalker walker(ctx, k, TupleMode::kAllSemisimple);
  std::vector<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> prefix;
  for (auto code : ctx.semisimple()) {
    if (k == 1) {
      out.push_back({code});
      continue;
    }
    prefix.assign(1, code);
    walker.collect_from(1, walker.first_centralizer(ctx.decode(code)), prefix, out);
  }
  return out;
}

std::uint64_t brute_conj_count(int n, const FiniteField& f, int k, const OracleLimits& limits) {
  const GLContext ctx(f, n, limits);
  const auto tuples = semisimple_tuples(ctx, k);  // lexicographically sorted

  std::vector<std::pair<FFMatrix, FFMatrix>> group;
  for (auto code : ctx.invertible()) {
    FFMatrix g = ctx.decode(code);
    group.emplace_back(g, matrix::inverse(f, g));
  }

  std::vector<bool> visited(tuples.size(), false);
  std::uint64_t orbits = 0;
  std::vector<std::uint64_t> image(static_cast<std::size_t>(k));
  for (std::size_t idx = 0; idx < tuples.size(); ++idx) {
    if (visited[idx]) continue;
    ++orbits;
    std::vector<FFMatrix> members;
    for (auto code : tuples[idx]) members.push_back(ctx.decode(code));
    for (const auto& [g, g_inv] : group) {
      for (int j = 0; j < k; ++j) image[j] = matrix::conjugate(f, g, g_inv, members[j]).code(f.order());
      auto it = std::lower_bound(tuples.begin(), tuples.end(), image);
      if (it == tuples.end() || *it != image) throw std::logic_error("conjugate of a commuting semisimple tuple missing");
      visited[static_cast<std::size_t>(it - tuples.begin())] = true;
    }
  }
  return orbits;
}

// ---------------------------------------------------------------- census

namespace {

std::vector<std::vector<FieldPoly>> irreducibles_up_to(const FiniteField& f, int max_degree) {
  std::vector<std::vector<FieldPoly>> by_degree(static_cast<std::size_t>(max_degree) + 1);
  for (int d = 1; d <= max_degree; ++d) {
    for (auto& candidate : fieldpoly::monic_of_degree(f, d)) {
      bool irreducible = true;
      for (int e = 1; 2 * e <= d && irreducible; ++e) {
        for (const auto& factor : by_degree[e]) {
          if (fieldpoly::divmod(f, candidate, factor).second.empty()) {
            irreducible = false;
            break;
          }
        }
      }
      if (irreducible) by_degree[d].push_back(std::move(candidate));
    }
  }
  return by_degree;
}

TypeOfN classify(const FiniteField& f, const FieldPoly& a, const std::vector<std::vector<FieldPoly>>& irreducibles) {
  if (a.empty() || a.back() != 1) throw std::invalid_argument("census polynomials must be monic");
  if (a.front() == 0) throw std::invalid_argument("census polynomials must have nonzero constant term");
  FieldPoly rest = a;
  TypeOfN t;
  for (std::size_t d = 1; d < irreducibles.size() && rest.size() > 1; ++d) {
    for (const auto& factor : irreducibles[d]) {
      int mult = 0;
      while (rest.size() > 1) {
        auto [quot, rem] = fieldpoly::divmod(f, rest, factor);
        if (!rem.empty()) break;
        rest = std::move(quot);
        ++mult;
      }
      if (mult == 0) continue;
      for (int j = 0; j < mult; ++j) t.lambda.parts.push_back(static_cast<int>(d));
      t.refinements[static_cast<int>(d)].parts.push_back(mult);
    }
  }
  if (rest.size() != 1) throw std::logic_error("trial division left an unfactored remainder");
  std::sort(t.lambda.parts.rbegin(), t.lambda.parts.rend());
  for (auto& [degree, part] : t.refinements) std::sort(part.parts.rbegin(), part.parts.rend());
  return t;
}

}  // namespace

TypeOfN factor_type(const FiniteField& f, const FieldPoly& a) {
  FieldPoly p = a;
  fieldpoly::trim(p);
  return classify(f, p, irreducibles_up_to(f, static_cast<int>(p.size()) - 1));
}

std::vector<CensusRecord> poly_type_census(const FiniteField& f, int n, const OracleLimits& limits) {
  if (n < 1) throw InputError("census degree must be >= 1");
  const std::uint64_t space = checked_pow(static_cast<std::uint64_t>(f.order()), static_cast<std::uint64_t>(n));
  if (!limits.override_budget && space > limits.max_poly_space) {
    throw BudgetExceeded("q^n = " + std::to_string(space) + " exceeds the census budget of " +
                         std::to_string(limits.max_poly_space));
  }
  const auto irreducibles = irreducibles_up_to(f, n);
  std::map<TypeOfN, std::uint64_t> tally;
  for (const auto& poly : fieldpoly::monic_of_degree(f, n)) {
    if (poly.front() == 0) continue;
    ++tally[classify(f, poly, irreducibles)];
  }
  std::vector<CensusRecord> out;
  for (auto& type : enumerate_types(n)) {
    auto it = tally.find(type);
    out.push_back({type, it == tally.end() ? 0 : it->second});
  }
  return out;
}

std::uint64_t count_monic_irreducibles(const FiniteField& f, int degree) {
  if (degree < 1) throw InputError("degree must be >= 1");
  std::uint64_t count = 0;
  for (const auto& p : fieldpoly::monic_of_degree(f, degree)) {
    if (fieldpoly::is_irreducible(f, p)) ++count;
  }
  return count;
}

}  // namespace monodromy
