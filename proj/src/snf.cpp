#include "logkfl/snf.hpp"

#include <algorithm>
#include <numeric>

namespace logkfl {

namespace {

// Rounded division: |a - q*b| <= |b|/2. Plain truncation lets remainders ping-pong.
Int div_round(const Int& a, const Int& b) {
  Int q = a / b;
  Int r = a - q * b;
  if (2 * abs_int(r) > abs_int(b)) {
    if ((r > 0) == (b > 0))
      q += 1;
    else
      q -= 1;
  }
  return q;
}

}  // namespace

SmithResult smith_normal_form(const IntMatrix& a, bool with_transforms) {
  const std::size_t rows = a.rows(), cols = a.cols();
  SmithResult res;
  res.D = a;
  if (with_transforms) {
    res.U = IntMatrix::identity(rows);
    res.Uinv = IntMatrix::identity(rows);
    res.V = IntMatrix::identity(cols);
  }
  IntMatrix& d = res.D;
  IntMatrix& u = res.U;
  IntMatrix& ui = res.Uinv;
  IntMatrix& v = res.V;

  auto row_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < cols; ++j) d(dst, j) -= q * d(src, j);
    if (with_transforms) {
      for (std::size_t j = 0; j < rows; ++j) u(dst, j) -= q * u(src, j);
      // (E U)^{-1} = U^{-1} E^{-1}: a column operation on the inverse
      for (std::size_t i = 0; i < rows; ++i) ui(i, src) += q * ui(i, dst);
    }
  };
  auto col_sub = [&](std::size_t dst, std::size_t src, const Int& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < rows; ++i) d(i, dst) -= q * d(i, src);
    if (with_transforms)
      for (std::size_t i = 0; i < cols; ++i) v(i, dst) -= q * v(i, src);
  };
  auto row_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t j = 0; j < cols; ++j) std::swap(d(x, j), d(y, j));
    if (with_transforms) {
      for (std::size_t j = 0; j < rows; ++j) std::swap(u(x, j), u(y, j));
      for (std::size_t i = 0; i < rows; ++i) std::swap(ui(i, x), ui(i, y));
    }
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < rows; ++i) std::swap(d(i, x), d(i, y));
    if (with_transforms)
      for (std::size_t i = 0; i < cols; ++i) std::swap(v(i, x), v(i, y));
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // smallest nonzero |entry| in the trailing submatrix becomes the pivot
    std::size_t pi = t, pj = t;
    bool found = false;
    Int best;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d(i, j) == 0) continue;
        Int m = abs_int(d(i, j));
        if (!found || m < best) {
          best = m;
          pi = i;
          pj = j;
          found = true;
        }
      }
    if (!found) break;
    row_swap(t, pi);
    col_swap(t, pj);

    for (;;) {
      bool dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (d(i, t) == 0) continue;
        row_sub(i, t, div_round(d(i, t), d(t, t)));
        if (d(i, t) != 0) {
          // remainder is strictly smaller than the pivot: promote it
          row_swap(t, i);
          dirty = true;
        }
      }
      if (dirty) continue;
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (d(t, j) == 0) continue;
        col_sub(j, t, div_round(d(t, j), d(t, t)));
        if (d(t, j) != 0) {
          col_swap(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;

      // pivot now alone in its row and column; force divisibility over the rest
      bool fixed = true;
      for (std::size_t i = t + 1; i < rows && fixed; ++i)
        for (std::size_t j = t + 1; j < cols && fixed; ++j)
          if (d(i, j) % d(t, t) != 0) {
            row_sub(t, i, Int(-1));  // pulls the offending row into play
            fixed = false;
          }
      if (fixed) break;
    }
    ++t;
  }

  // sign-normalize the diagonal
  for (std::size_t i = 0; i < t; ++i) {
    if (d(i, i) < 0) {
      for (std::size_t j = 0; j < cols; ++j) d(i, j) = -d(i, j);
      if (with_transforms) {
        for (std::size_t j = 0; j < rows; ++j) u(i, j) = -u(i, j);
        for (std::size_t k = 0; k < rows; ++k) ui(k, i) = -ui(k, i);
      }
    }
  }

  res.rank = t;
  res.diag.assign(std::min(rows, cols), Int(0));
  for (std::size_t i = 0; i < res.diag.size(); ++i) res.diag[i] = d(i, i);
  return res;
}

IntMatrix kernel_basis(const IntMatrix& a) {
  if (a.cols() == 0) return IntMatrix(0, 0);
  if (a.rows() == 0) return IntMatrix::identity(a.cols());
  SmithResult s = smith_normal_form(a);
  // A * (columns of V past the rank) = U^{-1} * (zero diag columns) = 0
  return s.V.col_slice(s.rank, a.cols());
}

std::optional<std::vector<Int>> solve_linear(const IntMatrix& a, const std::vector<Int>& b) {
  if (b.size() != a.rows()) fail(errc::validation, "solve_linear shape mismatch");
  SmithResult s = smith_normal_form(a);
  // D = U A V, so A x = b becomes D y = U b with x = V y.
  std::vector<Int> ub(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.rows(); ++j)
      if (s.U(i, j) != 0 && b[j] != 0) ub[i] += s.U(i, j) * b[j];
  std::vector<Int> y(a.cols(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i < s.rank) {
      if (i < a.cols() && ub[i] % s.D(i, i) == 0) {
        y[i] = ub[i] / s.D(i, i);
      } else {
        return std::nullopt;
      }
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  std::vector<Int> x(a.cols(), 0);
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (s.V(i, j) != 0 && y[j] != 0) x[i] += s.V(i, j) * y[j];
  return x;
}

// ---------------------------------------------------------------------------
// streaming integer echelon

ZEchelon::ZEchelon(std::size_t width) : width_(width), pivot_of_col_(width, -1) {}

void ZEchelon::insert(std::vector<Int> row) {
  if (row.size() != width_) fail(errc::validation, "ZEchelon row width");
  std::vector<std::vector<Int>> queue;
  queue.push_back(std::move(row));
  while (!queue.empty()) {
    std::vector<Int> r = std::move(queue.back());
    queue.pop_back();
    std::size_t l = 0;
    while (l < width_ && r[l] == 0) ++l;
    while (l < width_) {
      long slot = pivot_of_col_[l];
      if (slot < 0) {
        if (r[l] < 0)
          for (Int& v : r) v = -v;
        pivot_of_col_[l] = static_cast<long>(pivot_rows_.size());
        lead_of_slot_.push_back(l);
        pivot_rows_.push_back(std::move(r));
        break;
      }
      std::vector<Int>& p = pivot_rows_[slot];
      const Int a = p[l], b = r[l];
      if (b % a == 0) {
        Int q = b / a;
        for (std::size_t j = l; j < width_; ++j) r[j] -= q * p[j];
      } else {
        Int x, y;
        Int g = exgcd(a, b, x, y);
        Int af = a / g, bf = b / g;
        // unimodular combination: pivot gains lead gcd, r loses its lead
        for (std::size_t j = l; j < width_; ++j) {
          Int np = x * p[j] + y * r[j];
          Int nr = af * r[j] - bf * p[j];
          p[j] = np;
          r[j] = nr;
        }
      }
      while (l < width_ && r[l] == 0) ++l;
    }
  }
}

void ZEchelon::insert_sparse(const std::vector<std::pair<std::uint32_t, std::int64_t>>& row) {
  std::vector<Int> dense(width_, 0);
  for (const auto& [c, v] : row) dense[c] = v;
  insert(std::move(dense));
}

IntMatrix ZEchelon::to_matrix() const {
  std::vector<std::size_t> order(pivot_rows_.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return lead_of_slot_[a] < lead_of_slot_[b]; });
  IntMatrix m(pivot_rows_.size(), width_);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < width_; ++j) m(i, j) = pivot_rows_[order[i]][j];
  return m;
}

// ---------------------------------------------------------------------------
// Howell accumulator over Z/n

namespace {

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  while (b) {
    std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a < 0 ? -a : a;
}

// g = x a + y b with |x|,|y| bounded by the inputs
std::int64_t exgcd64(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  if (b == 0) {
    x = a < 0 ? -1 : 1;
    y = 0;
    return a < 0 ? -a : a;
  }
  std::int64_t x1, y1;
  std::int64_t g = exgcd64(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

std::int64_t inv_mod64(std::int64_t a, std::int64_t m) {
  std::int64_t x, y;
  exgcd64(((a % m) + m) % m, m, x, y);
  return ((x % m) + m) % m;
}

// unit u mod n with u * a == gcd(a, n) (mod n)
std::int64_t unit_to_divisor(std::int64_t a, std::int64_t n) {
  std::int64_t g = gcd64(a, n);
  std::int64_t ap = a / g, np = n / g;
  if (np == 1) return 1;  // a is already 0 mod n handled by caller; here a = g * unit-part
  std::int64_t u0 = inv_mod64(ap % np, np);
  // lift to a unit mod n: CRT with 1 on the part of n coprime to np
  std::int64_t t = n;
  for (;;) {
    std::int64_t d = gcd64(t, np);
    if (d == 1) break;
    t /= d;
  }
  if (t == 1) return u0 % n;
  std::int64_t m1 = n / t;  // np | m1
  std::int64_t x, y;
  exgcd64(m1, t, x, y);  // x*m1 + y*t = 1
  // u == u0 mod m1 (hence mod np), u == 1 mod t
  boost::multiprecision::int128_t u =
      boost::multiprecision::int128_t(u0) * y % n * t % n + boost::multiprecision::int128_t(1) * x % n * m1 % n;
  std::int64_t r = static_cast<std::int64_t>(u % n);
  return ((r % n) + n) % n;
}

}  // namespace

ModHowell::ModHowell(std::size_t width, std::int64_t modulus)
    : width_(width), n_(modulus), pivot_of_col_(width, -1) {
  if (modulus < 2 || modulus >= (std::int64_t(1) << 31))
    fail(errc::validation, "ModHowell modulus out of range");
}

void ModHowell::insert(std::vector<std::int32_t> row) {
  if (row.size() != width_) fail(errc::validation, "ModHowell row width");
  for (auto& v : row) v = static_cast<std::int32_t>(((v % n_) + n_) % n_);
  insert_worker(std::move(row));
}

void ModHowell::insert_sparse(const std::vector<std::pair<std::uint32_t, std::int64_t>>& row) {
  std::vector<std::int32_t> dense(width_, 0);
  for (const auto& [c, v] : row) dense[c] = static_cast<std::int32_t>(((v % n_) + n_) % n_);
  insert_worker(std::move(dense));
}

void ModHowell::insert_worker(std::vector<std::int32_t> first) {
  std::vector<std::vector<std::int32_t>> queue;
  queue.push_back(std::move(first));
  while (!queue.empty()) {
    std::vector<std::int32_t> r = std::move(queue.back());
    queue.pop_back();
    std::size_t l = 0;
    while (l < width_ && r[l] == 0) ++l;
    while (l < width_) {
      long slot = pivot_of_col_[l];
      if (slot < 0) {
        // new pivot: scale the lead to the divisor gcd(lead, n)
        std::int64_t g = gcd64(r[l], n_);
        if (r[l] != g) {
          std::int64_t u = unit_to_divisor(r[l], n_);
          for (std::size_t j = l; j < width_; ++j)
            r[j] = static_cast<std::int32_t>(std::int64_t(r[j]) * u % n_);
        }
        std::int64_t ann = n_ / g;
        slot = static_cast<long>(rows_.size());
        pivot_of_col_[l] = slot;
        if (ann > 1) {
          std::vector<std::int32_t> extra(width_, 0);
          for (std::size_t j = l; j < width_; ++j)
            extra[j] = static_cast<std::int32_t>(std::int64_t(r[j]) * ann % n_);
          queue.push_back(std::move(extra));  // Howell closure row
        }
        rows_.push_back(std::move(r));
        auto it = std::lower_bound(order_.begin(), order_.end(), l, [&](std::size_t s, std::size_t col) {
          std::size_t lead = 0;
          while (rows_[s][lead] == 0) ++lead;
          return lead < col;
        });
        order_.insert(it, static_cast<std::size_t>(slot));
        break;
      }
      std::vector<std::int32_t>& p = rows_[slot];
      std::int64_t a = p[l], b = r[l];
      if (b % a == 0) {
        std::int64_t q = (b / a) % n_;
        for (std::size_t j = l; j < width_; ++j) {
          std::int64_t v = r[j] - q * p[j] % n_;
          r[j] = static_cast<std::int32_t>(((v % n_) + n_) % n_);
        }
      } else {
        std::int64_t x, y;
        std::int64_t g = exgcd64(a, b, x, y);
        std::int64_t af = a / g, bf = b / g;
        x = ((x % n_) + n_) % n_;
        y = ((y % n_) + n_) % n_;
        for (std::size_t j = l; j < width_; ++j) {
          std::int64_t np = (x * p[j] + y * r[j]) % n_;
          std::int64_t nr = (af * std::int64_t(r[j]) - bf * std::int64_t(p[j])) % n_;
          p[j] = static_cast<std::int32_t>((np + n_) % n_);
          r[j] = static_cast<std::int32_t>((nr + n_) % n_);
        }
        // pivot lead dropped from a to g; refresh its Howell closure row
        std::int64_t ann = n_ / g;
        if (ann > 1) {
          std::vector<std::int32_t> extra(width_, 0);
          for (std::size_t j = l; j < width_; ++j)
            extra[j] = static_cast<std::int32_t>(std::int64_t(p[j]) * ann % n_);
          queue.push_back(std::move(extra));
        }
      }
      while (l < width_ && r[l] == 0) ++l;
    }
  }
}

std::vector<std::int32_t> ModHowell::reduce(std::vector<std::int32_t> v) const {
  for (auto& x : v) x = static_cast<std::int32_t>(((std::int64_t(x) % n_) + n_) % n_);
  for (std::size_t l = 0; l < width_; ++l) {
    if (v[l] == 0) continue;
    long slot = pivot_of_col_[l];
    if (slot < 0) continue;
    const auto& p = rows_[slot];
    std::int64_t q = v[l] / p[l];  // leaves v[l] mod lead, which is < lead
    if (q == 0) continue;
    for (std::size_t j = l; j < width_; ++j) {
      std::int64_t x = v[j] - q * p[j] % n_;
      v[j] = static_cast<std::int32_t>(((x % n_) + n_) % n_);
    }
  }
  return v;
}

bool ModHowell::contains(const std::vector<std::int32_t>& v) const {
  auto r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::int32_t x) { return x == 0; });
}

std::vector<std::vector<std::int32_t>> ModHowell::rows() const {
  std::vector<std::vector<std::int32_t>> out;
  out.reserve(order_.size());
  for (std::size_t slot : order_) out.push_back(rows_[slot]);
  // clear above-pivot entries, right to left, for a canonical form
  for (std::size_t t = out.size(); t-- > 0;) {
    std::size_t lead = 0;
    while (out[t][lead] == 0) ++lead;
    std::int64_t d = out[t][lead];
    for (std::size_t s = 0; s < t; ++s) {
      std::int64_t q = out[s][lead] / d;
      if (q == 0) continue;
      for (std::size_t j = lead; j < width_; ++j) {
        std::int64_t x = out[s][j] - q * out[t][j] % n_;
        out[s][j] = static_cast<std::int32_t>(((x % n_) + n_) % n_);
      }
    }
  }
  return out;
}

std::vector<std::vector<std::int32_t>> kernel_mod(const ModHowell& rows) {
  const std::size_t w = rows.width();
  const std::int64_t n = rows.modulus();
  auto basis = rows.rows();
  const std::size_t a = basis.size();
  // kernel of the condition matrix = tails of Howell([M^T | I_w])
  ModHowell aug(a + w, n);
  for (std::size_t i = 0; i < w; ++i) {
    std::vector<std::int32_t> row(a + w, 0);
    for (std::size_t j = 0; j < a; ++j) row[j] = basis[j][i];
    row[a + i] = 1;
    aug.insert(std::move(row));
  }
  std::vector<std::vector<std::int32_t>> out;
  for (const auto& r : aug.rows()) {
    bool zero_head = true;
    for (std::size_t j = 0; j < a && zero_head; ++j) zero_head = (r[j] == 0);
    if (!zero_head) continue;
    std::vector<std::int32_t> tail(r.begin() + a, r.end());
    if (std::any_of(tail.begin(), tail.end(), [](std::int32_t x) { return x != 0; }))
      out.push_back(std::move(tail));
  }
  return out;
}

std::vector<Int> quotient_invariants_mod(const ModHowell& sub, std::size_t width,
                                         std::int64_t n) {
  // lattice generated by the Howell rows (lifted to Z) together with n Z^width is spanned
  // by one triangular row per column: the pivot row where there is one, n*e_c elsewhere
  auto basis = sub.rows();
  std::vector<long> row_of_col(width, -1);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::size_t lead = 0;
    while (basis[i][lead] == 0) ++lead;
    row_of_col[lead] = static_cast<long>(i);
  }
  IntMatrix t(width, width);
  for (std::size_t c = 0; c < width; ++c) {
    if (row_of_col[c] >= 0) {
      const auto& r = basis[static_cast<std::size_t>(row_of_col[c])];
      for (std::size_t j = 0; j < width; ++j) t(c, j) = r[j];
    } else {
      t(c, c) = n;
    }
  }
  SmithResult s = smith_normal_form(t, /*with_transforms=*/false);
  std::vector<Int> out;
  for (const Int& d : s.diag)
    if (d > 1) out.push_back(d);
  return out;
}

}  // namespace logkfl
