#include "logkfl/barcoh.hpp"

#include <algorithm>

#include "logkfl/errors.hpp"

namespace logkfl {

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<std::int64_t> f) {
  for (std::int64_t m : f) {
    if (m < 1) fail(errc::validation, "cyclic factor must be positive");
    if (m == 1) continue;
    factors.push_back(m);
  }
  strides.resize(factors.size());
  for (std::size_t j = 0; j < factors.size(); ++j) {
    strides[j] = order;
    if (order > (std::int64_t(1) << 31) / factors[j])
      fail(errc::size_bound, "group order past the index range");
    order *= factors[j];
  }
}

FiniteAbelianGroup FiniteAbelianGroup::from_group(const FgAbGroup& g) {
  if (!g.is_finite()) fail(errc::validation, "index group must be finite");
  std::vector<std::int64_t> f;
  for (const Int& d : g.torsion) {
    if (d > (Int(1) << 31)) fail(errc::size_bound, "cyclic factor past the index range");
    f.push_back(d.convert_to<std::int64_t>());
  }
  return FiniteAbelianGroup(std::move(f));
}

std::int64_t FiniteAbelianGroup::add(std::int64_t a, std::int64_t b) const {
  std::int64_t out = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::int64_t d = digit(a, j) + digit(b, j);
    if (d >= factors[j]) d -= factors[j];
    out += d * strides[j];
  }
  return out;
}

std::int64_t FiniteAbelianGroup::neg(std::int64_t a) const {
  std::int64_t out = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::int64_t d = digit(a, j);
    if (d != 0) d = factors[j] - d;
    out += d * strides[j];
  }
  return out;
}

int FiniteAbelianGroup::digit_sum(std::int64_t a) const {
  int s = 0;
  for (std::size_t j = 0; j < factors.size(); ++j) s += static_cast<int>(digit(a, j));
  return s;
}

std::pair<std::size_t, std::int64_t> FiniteAbelianGroup::parent(std::int64_t a) const {
  for (std::size_t j = 0; j < factors.size(); ++j)
    if (digit(a, j) != 0) return {j, a - strides[j]};
  fail(errc::validation, "parent of the identity");
}

int FiniteAbelianGroup::slot(std::int64_t a) const {
  if (a == 0) return 0;
  for (std::size_t j = 0; j < factors.size(); ++j) {
    std::int64_t d = digit(a, j);
    if (d == 0) continue;
    return (d == 1 && a == strides[j]) ? static_cast<int>(j) + 1 : -1;
  }
  return -1;
}

std::int64_t tuple_count(const FiniteAbelianGroup& g, int k) {
  if (k < 0) fail(errc::validation, "negative tuple length");
  std::int64_t n = 1;
  for (int t = 0; t < k; ++t) {
    if (n > (std::int64_t(1) << 31) / g.order)
      fail(errc::size_bound, "tuple space past the index range");
    n *= g.order;
  }
  return n;
}

namespace {

// Big-endian encoding of element tuples: first argument slowest.
std::int64_t encode_tuple(const FiniteAbelianGroup& g, const std::int64_t* args, int len) {
  std::int64_t id = 0;
  for (int t = 0; t < len; ++t) id = id * g.order + args[t];
  return id;
}

void decode_tuple(const FiniteAbelianGroup& g, std::int64_t id, std::int64_t* args, int len) {
  for (int t = len - 1; t >= 0; --t) {
    args[t] = id % g.order;
    id /= g.order;
  }
}

// Faces of a length-k tuple with the sign convention (-1)^t: t = 0 drops the first
// argument, 1 <= t <= k-1 merges positions t-1 and t (0-based), t = k drops the last.
// Appends (source coordinate over G^{k-1}, sign) to out.
void append_faces(const FiniteAbelianGroup& g, const std::int64_t* args, int k,
                  std::vector<std::pair<std::int64_t, std::int64_t>>& out) {
  std::vector<std::int64_t> face(static_cast<std::size_t>(k > 0 ? k - 1 : 0));
  for (int t = 0; t <= k; ++t) {
    if (t == 0) {
      for (int u = 1; u < k; ++u) face[static_cast<std::size_t>(u - 1)] = args[u];
    } else if (t == k) {
      for (int u = 0; u + 1 < k; ++u) face[static_cast<std::size_t>(u)] = args[u];
    } else {
      int w = 0;
      for (int u = 0; u < k; ++u) {
        if (u == t - 1) {
          face[static_cast<std::size_t>(w++)] = g.add(args[u], args[u + 1]);
          ++u;
        } else {
          face[static_cast<std::size_t>(w++)] = args[u];
        }
      }
    }
    out.emplace_back(encode_tuple(g, face.data(), k - 1), (t % 2 == 0) ? 1 : -1);
  }
}

void sort_combine(std::vector<std::pair<std::int64_t, std::int64_t>>& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t w = 0;
  for (std::size_t r = 0; r < v.size(); ++r) {
    if (w > 0 && v[w - 1].first == v[r].first) {
      v[w - 1].second += v[r].second;
    } else {
      v[w++] = v[r];
    }
  }
  v.resize(w);
  std::erase_if(v, [](const auto& e) { return e.second == 0; });
}

}  // namespace

void stream_diff_rows(
    const FiniteAbelianGroup& g, int k,
    const std::function<void(std::int64_t,
                             const std::vector<std::pair<std::int64_t, std::int64_t>>&)>& cb) {
  if (k < 0) fail(errc::validation, "negative differential degree");
  std::int64_t total = tuple_count(g, k + 1);
  std::vector<std::int64_t> args(static_cast<std::size_t>(k + 1));
  std::vector<std::pair<std::int64_t, std::int64_t>> row;
  for (std::int64_t id = 0; id < total; ++id) {
    decode_tuple(g, id, args.data(), k + 1);
    row.clear();
    append_faces(g, args.data(), k + 1, row);
    sort_combine(row);
    cb(id, row);
  }
}

void stream_diff_rows_pruned(
    const FiniteAbelianGroup& g, int k,
    const std::function<void(const std::vector<std::pair<std::int64_t, std::int64_t>>&)>& cb) {
  if (k < 0) fail(errc::validation, "negative differential degree");
  std::int64_t rest_count = tuple_count(g, k);
  std::vector<std::int64_t> args(static_cast<std::size_t>(k + 1));
  std::vector<std::pair<std::int64_t, std::int64_t>> row;
  for (std::size_t sl = 0; sl <= g.dims(); ++sl) {
    args[0] = sl == 0 ? 0 : g.generator(sl - 1);
    for (std::int64_t rest = 0; rest < rest_count; ++rest) {
      decode_tuple(g, rest, args.data() + 1, k);
      row.clear();
      append_faces(g, args.data(), k + 1, row);
      sort_combine(row);
      cb(row);
    }
  }
}

SparseIntMatrix bar_differential(const FiniteAbelianGroup& g, int k) {
  SparseIntMatrix m(static_cast<std::size_t>(tuple_count(g, k + 1)),
                    static_cast<std::size_t>(tuple_count(g, k)));
  stream_diff_rows(g, k, [&](std::int64_t id, const auto& row) {
    for (const auto& [src, coeff] : row)
      m.add(static_cast<std::size_t>(id), static_cast<std::uint32_t>(src), coeff);
  });
  return m;
}

BarPropagation::BarPropagation(FiniteAbelianGroup g, int c, std::vector<SymbolFn> symbols,
                               std::int64_t sym_mod)
    : g_(std::move(g)), c_(c), syms_(std::move(symbols)), sym_mod_(sym_mod) {
  if (c_ < 1) fail(errc::validation, "propagation needs degree >= 1");
  ny_ = tuple_count(g_, c_ - 1);
  nc_ = tuple_count(g_, c_);
  if (nc_ > (std::int64_t(1) << 26))
    fail(errc::size_bound, "propagation table past the size guard");
  p_ = (g_.dims() + 1) * static_cast<std::size_t>(ny_);
  const std::size_t a = syms_.size();

  expr_.resize(static_cast<std::size_t>(nc_));
  if (a > 0) zcorr_.assign(static_cast<std::size_t>(nc_) * a, 0);

  // First arguments bucketed by digit sum; depth 0 and 1 are the parameters themselves.
  int max_ds = 0;
  std::vector<int> ds(static_cast<std::size_t>(g_.order));
  for (std::int64_t x = 0; x < g_.order; ++x) {
    ds[static_cast<std::size_t>(x)] = g_.digit_sum(x);
    max_ds = std::max(max_ds, ds[static_cast<std::size_t>(x)]);
  }
  std::vector<std::vector<std::int64_t>> bucket(static_cast<std::size_t>(max_ds) + 1);
  for (std::int64_t x = 0; x < g_.order; ++x)
    bucket[static_cast<std::size_t>(ds[static_cast<std::size_t>(x)])].push_back(x);

  for (std::int64_t y = 0; y < ny_; ++y)
    expr_[static_cast<std::size_t>(y)] = {{param_id(0, y), 1}};
  if (max_ds >= 1) {
    for (std::int64_t x : bucket[1]) {
      int sl = g_.slot(x);
      for (std::int64_t y = 0; y < ny_; ++y)
        expr_[static_cast<std::size_t>(x * ny_ + y)] = {{param_id(sl, y), 1}};
    }
  }

  std::vector<std::int64_t> args(static_cast<std::size_t>(c_) + 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> faces;
  std::vector<std::pair<std::uint32_t, std::int32_t>> terms;
  for (int depth = 2; depth <= max_ds; ++depth) {
    for (std::int64_t x : bucket[static_cast<std::size_t>(depth)]) {
      auto [j, xp] = g_.parent(x);
      std::int64_t e = g_.generator(j);
      for (std::int64_t y = 0; y < ny_; ++y) {
        std::size_t coord = static_cast<std::size_t>(x * ny_ + y);
        std::size_t pcoord = static_cast<std::size_t>(xp * ny_ + y);
        // Defining relation (d f)(e_j, x', y...) = z(e_j, x', y...), solved for f(x, y...):
        // face 0 is the parent coordinate, face 1 is this coordinate, faces t >= 2 all
        // have short first argument e_j and are therefore parameters.
        args[0] = e;
        args[1] = xp;
        decode_tuple(g_, y, args.data() + 2, c_ - 1);
        faces.clear();
        append_faces(g_, args.data(), c_ + 1, faces);
        terms.assign(expr_[pcoord].begin(), expr_[pcoord].end());
        for (int t = 2; t <= c_ + 1; ++t) {
          const auto& [fcoord, sgn] = faces[static_cast<std::size_t>(t)];
          // fcoord = e * ny_ + rest with short first argument.
          std::int64_t rest = fcoord - e * ny_;
          terms.emplace_back(param_id(1 + static_cast<int>(j), rest),
                             static_cast<std::int32_t>(sgn));
        }
        std::sort(terms.begin(), terms.end(),
                  [](const auto& l, const auto& r) { return l.first < r.first; });
        std::size_t w = 0;
        for (std::size_t r = 0; r < terms.size(); ++r) {
          if (w > 0 && terms[w - 1].first == terms[r].first) {
            terms[w - 1].second += terms[r].second;
          } else {
            terms[w++] = terms[r];
          }
        }
        terms.resize(w);
        std::erase_if(terms, [](const auto& t2) { return t2.second == 0; });
        expr_[coord] = terms;
        for (std::size_t k2 = 0; k2 < a; ++k2) {
          std::int64_t v = zcorr_[pcoord * a + k2] - eval_symbol(k2, args);
          if (sym_mod_ > 0) v = ((v % sym_mod_) + sym_mod_) % sym_mod_;
          zcorr_[coord * a + k2] = v;
        }
      }
    }
  }
}

std::int64_t BarPropagation::eval_symbol(std::size_t k,
                                         const std::vector<std::int64_t>& args) const {
  return syms_[k](args);
}

std::size_t BarPropagation::stream(
    const std::function<void(const std::vector<std::pair<std::uint32_t, std::int64_t>>&,
                             const std::vector<std::int64_t>&)>& cb) const {
  const std::size_t a = syms_.size();
  std::vector<std::int64_t> acc(p_, 0);
  std::vector<std::uint32_t> touched;
  std::vector<std::int64_t> symrow(a, 0);
  std::vector<std::int64_t> args(static_cast<std::size_t>(c_) + 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> faces;
  std::vector<std::pair<std::uint32_t, std::int64_t>> row;
  std::size_t emitted = 0;

  auto add_expr = [&](std::int64_t coord, std::int64_t sgn) {
    for (const auto& [pid, cf] : expr_[static_cast<std::size_t>(coord)]) {
      if (acc[pid] == 0 && cf != 0) touched.push_back(pid);
      acc[pid] += sgn * cf;
    }
    if (a > 0) {
      const std::int64_t* zc = &zcorr_[static_cast<std::size_t>(coord) * a];
      for (std::size_t k = 0; k < a; ++k) symrow[k] += sgn * zc[k];
    }
  };

  for (std::size_t sl = 0; sl <= g_.dims(); ++sl) {
    std::int64_t h1 = sl == 0 ? 0 : g_.generator(sl - 1);
    for (std::int64_t rest = 0; rest < nc_; ++rest) {
      std::int64_t h2 = rest / ny_;
      std::int64_t y = rest % ny_;
      if (sl >= 1 && h2 != 0) {
        // Defining rows reduce to 0 = 0 by construction: h1 = e_j, h2 nonzero, the
        // j-digit of h2 does not wrap, and no digit below j is set, exactly when the
        // propagation recursion used this row to define f(h1 + h2, y...).
        std::size_t j = sl - 1;
        if (g_.digit(h2, j) != g_.factors[j] - 1) {
          bool low_clear = true;
          for (std::size_t u = 0; u < j && low_clear; ++u)
            if (g_.digit(h2, u) != 0) low_clear = false;
          if (low_clear) continue;
        }
      }
      args[0] = h1;
      args[1] = h2;
      decode_tuple(g_, y, args.data() + 2, c_ - 1);
      faces.clear();
      append_faces(g_, args.data(), c_ + 1, faces);
      for (const auto& [fcoord, sgn] : faces) add_expr(fcoord, sgn);
      if (a > 0)
        for (std::size_t k = 0; k < a; ++k) symrow[k] -= eval_symbol(k, args);

      std::sort(touched.begin(), touched.end());
      row.clear();
      for (std::uint32_t pid : touched) {
        if (acc[pid] != 0) row.emplace_back(pid, acc[pid]);
        acc[pid] = 0;
      }
      touched.clear();
      cb(row, symrow);
      ++emitted;
      if (a > 0) std::fill(symrow.begin(), symrow.end(), 0);
    }
  }
  return emitted;
}

std::vector<std::int64_t> BarPropagation::expand(const std::vector<std::int64_t>& param_vals,
                                                 const std::vector<std::int64_t>& sym_vals,
                                                 std::int64_t m) const {
  if (param_vals.size() != p_ || sym_vals.size() != syms_.size() || m <= 0)
    fail(errc::validation, "expand: bad arguments");
  const std::size_t a = syms_.size();
  std::vector<std::int64_t> out(static_cast<std::size_t>(nc_), 0);
  for (std::int64_t coord = 0; coord < nc_; ++coord) {
    std::int64_t v = 0;
    for (const auto& [pid, cf] : expr_[static_cast<std::size_t>(coord)])
      v += cf * (param_vals[pid] % m);
    for (std::size_t k = 0; k < a; ++k)
      v += (zcorr_[static_cast<std::size_t>(coord) * a + k] % m) * (sym_vals[k] % m);
    out[static_cast<std::size_t>(coord)] = ((v % m) + m) % m;
  }
  return out;
}

std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>>
BarPropagation::coboundary_columns() const {
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> cols(
      static_cast<std::size_t>(ny_));
  std::vector<std::int64_t> args(static_cast<std::size_t>(c_));
  std::vector<std::pair<std::int64_t, std::int64_t>> faces;
  for (std::size_t sl = 0; sl <= g_.dims(); ++sl) {
    std::int64_t h1 = sl == 0 ? 0 : g_.generator(sl - 1);
    for (std::int64_t y = 0; y < ny_; ++y) {
      std::uint32_t pc = param_id(static_cast<int>(sl), y);
      args[0] = h1;
      decode_tuple(g_, y, args.data() + 1, c_ - 1);
      faces.clear();
      append_faces(g_, args.data(), c_, faces);
      for (const auto& [w, sgn] : faces)
        cols[static_cast<std::size_t>(w)].emplace_back(pc, sgn);
    }
  }
  for (auto& col : cols) {
    std::sort(col.begin(), col.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    std::size_t w = 0;
    for (std::size_t r = 0; r < col.size(); ++r) {
      if (w > 0 && col[w - 1].first == col[r].first) {
        col[w - 1].second += col[r].second;
      } else {
        col[w++] = col[r];
      }
    }
    col.resize(w);
    std::erase_if(col, [](const auto& e) { return e.second == 0; });
  }
  return cols;
}

}  // namespace logkfl
