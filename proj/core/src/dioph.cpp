#include "bsw/dioph.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace bsw {

  Int floor_div(Int const& a, Int const& b) {
    Int q = a / b;  // truncates
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
      --q;
    }
    return q;
  }

  Int floor_mod(Int const& a, Int const& b) {
    return a - b * floor_div(a, b);
  }

  namespace {
    // g = x a + y b, g >= 0
    void ext_gcd(Int const& a, Int const& b, Int& g, Int& x, Int& y) {
      Int old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
      while (r != 0) {
        Int q   = old_r / r;
        Int tmp = old_r - q * r;
        old_r   = r;
        r       = tmp;
        tmp     = old_s - q * s;
        old_s   = s;
        s       = tmp;
        tmp     = old_t - q * t;
        old_t   = t;
        t       = tmp;
      }
      if (old_r < 0) {
        old_r = -old_r;
        old_s = -old_s;
        old_t = -old_t;
      }
      g = old_r;
      x = old_s;
      y = old_t;
    }

    Int abs_int(Int const& a) {
      return a < 0 ? Int(-a) : a;
    }

    // column j := a*col_j + b*col_k, col_k := c*col_j + d*col_k
    void col_combine(IntMatrix& M,
                     std::size_t j,
                     std::size_t k,
                     Int const& a,
                     Int const& b,
                     Int const& c,
                     Int const& d) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        Int x = M(i, j), y = M(i, k);
        M(i, j) = a * x + b * y;
        M(i, k) = c * x + d * y;
      }
    }
    void col_addmul(IntMatrix& M, std::size_t dst, std::size_t src, Int const& q) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        M(i, dst) += q * M(i, src);
      }
    }
    void row_addmul(IntMatrix& M, std::size_t dst, std::size_t src, Int const& q) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        M(dst, j) += q * M(src, j);
      }
    }
    void col_swap(IntMatrix& M, std::size_t a, std::size_t b) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        std::swap(M(i, a), M(i, b));
      }
    }
    void row_swap(IntMatrix& M, std::size_t a, std::size_t b) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        std::swap(M(a, j), M(b, j));
      }
    }
    void col_negate(IntMatrix& M, std::size_t a) {
      for (std::size_t i = 0; i < M.rows(); ++i) {
        M(i, a) = -M(i, a);
      }
    }
    void row_negate(IntMatrix& M, std::size_t a) {
      for (std::size_t j = 0; j < M.cols(); ++j) {
        M(a, j) = -M(a, j);
      }
    }
  }  // namespace

  IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : _rows(rows.size()), _cols(rows.size() ? rows.begin()->size() : 0) {
    _a.reserve(_rows * _cols);
    for (auto const& r : rows) {
      if (r.size() != _cols) {
        throw std::invalid_argument("ragged matrix literal");
      }
      for (auto x : r) {
        _a.emplace_back(x);
      }
    }
  }

  IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      I(i, i) = 1;
    }
    return I;
  }

  IntMatrix IntMatrix::from_columns(std::vector<IntVec> const& cols,
                                    std::size_t                dim) {
    IntMatrix M(dim, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (cols[j].size() != dim) {
        throw std::invalid_argument("column of wrong dimension");
      }
      for (std::size_t i = 0; i < dim; ++i) {
        M(i, j) = cols[j][i];
      }
    }
    return M;
  }

  IntVec IntMatrix::column(std::size_t j) const {
    IntVec v(_rows);
    for (std::size_t i = 0; i < _rows; ++i) {
      v[i] = (*this)(i, j);
    }
    return v;
  }

  IntVec IntMatrix::row(std::size_t i) const {
    return IntVec(_a.begin() + i * _cols, _a.begin() + (i + 1) * _cols);
  }

  IntMatrix IntMatrix::transpose() const {
    IntMatrix T(_cols, _rows);
    for (std::size_t i = 0; i < _rows; ++i) {
      for (std::size_t j = 0; j < _cols; ++j) {
        T(j, i) = (*this)(i, j);
      }
    }
    return T;
  }

  bool IntMatrix::is_zero() const {
    for (auto const& x : _a) {
      if (x != 0) {
        return false;
      }
    }
    return true;
  }

  IntMatrix operator*(IntMatrix const& a, IntMatrix const& b) {
    if (a.cols() != b.rows()) {
      throw std::invalid_argument("matrix product: dimension mismatch");
    }
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (a(i, k) == 0) {
          continue;
        }
        for (std::size_t j = 0; j < b.cols(); ++j) {
          c(i, j) += a(i, k) * b(k, j);
        }
      }
    }
    return c;
  }

  IntVec operator*(IntMatrix const& a, IntVec const& v) {
    if (a.cols() != v.size()) {
      throw std::invalid_argument("matrix-vector product: dimension mismatch");
    }
    IntVec r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) {
        r[i] += a(i, j) * v[j];
      }
    }
    return r;
  }

  std::string to_string(IntVec const& v) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < v.size(); ++i) {
      os << (i ? "," : "") << v[i];
    }
    os << ')';
    return os.str();
  }

  std::string to_string(IntMatrix const& m) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
      os << (i ? "," : "") << '[';
      for (std::size_t j = 0; j < m.cols(); ++j) {
        os << (j ? "," : "") << m(i, j);
      }
      os << ']';
    }
    os << ']';
    return os.str();
  }

  Int determinant(IntMatrix const& m) {
    if (m.rows() != m.cols()) {
      throw std::invalid_argument("determinant of non-square matrix");
    }
    std::size_t n = m.rows();
    if (n == 0) {
      return 1;
    }
    // Bareiss
    IntMatrix a    = m;
    Int       prev = 1;
    int       sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      if (a(k, k) == 0) {
        std::size_t p = k + 1;
        while (p < n && a(p, k) == 0) {
          ++p;
        }
        if (p == n) {
          return 0;
        }
        row_swap(a, k, p);
        sign = -sign;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        }
      }
      prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
  }

  bool is_unimodular(IntMatrix const& m) {
    if (m.rows() != m.cols()) {
      return false;
    }
    Int d = determinant(m);
    return d == 1 || d == -1;
  }

  HermiteResult hnf(IntMatrix const& M) {
    HermiteResult res{M, IntMatrix::identity(M.cols()), 0};
    IntMatrix&    H = res.H;
    IntMatrix&    U = res.U;
    std::size_t   c = 0;
    for (std::size_t i = 0; i < H.rows() && c < H.cols(); ++i) {
      for (std::size_t j = c + 1; j < H.cols(); ++j) {
        if (H(i, j) == 0) {
          continue;
        }
        if (H(i, c) == 0) {
          col_swap(H, c, j);
          col_swap(U, c, j);
          continue;
        }
        Int a = H(i, c), b = H(i, j), g, x, y;
        ext_gcd(a, b, g, x, y);
        Int p = -b / g, q = a / g;
        col_combine(H, c, j, x, y, p, q);
        col_combine(U, c, j, x, y, p, q);
      }
      if (H(i, c) == 0) {
        continue;
      }
      if (H(i, c) < 0) {
        col_negate(H, c);
        col_negate(U, c);
      }
      for (std::size_t k = 0; k < c; ++k) {
        Int q = floor_div(H(i, k), H(i, c));
        if (q != 0) {
          col_addmul(H, k, c, -q);
          col_addmul(U, k, c, -q);
        }
      }
      ++c;
    }
    res.rank = c;
    return res;
  }

  namespace {
    struct SmithWork {
      IntMatrix S, L, Linv, R;
    };

    SmithWork smith(IntMatrix const& M) {
      SmithWork w{M,
                  IntMatrix::identity(M.rows()),
                  IntMatrix::identity(M.rows()),
                  IntMatrix::identity(M.cols())};
      auto& S = w.S;
      auto  rowop = [&](std::size_t dst, std::size_t src, Int const& q) {
        row_addmul(S, dst, src, q);
        row_addmul(w.L, dst, src, q);
        col_addmul(w.Linv, src, dst, -q);
      };
      auto rowswap = [&](std::size_t a, std::size_t b) {
        row_swap(S, a, b);
        row_swap(w.L, a, b);
        col_swap(w.Linv, a, b);
      };
      auto colop = [&](std::size_t dst, std::size_t src, Int const& q) {
        col_addmul(S, dst, src, q);
        col_addmul(w.R, dst, src, q);
      };
      auto colswap = [&](std::size_t a, std::size_t b) {
        col_swap(S, a, b);
        col_swap(w.R, a, b);
      };
      std::size_t n = std::min(S.rows(), S.cols());
      for (std::size_t t = 0; t < n; ++t) {
        while (true) {
          bool        found = false;
          std::size_t pi = t, pj = t;
          Int         best;
          for (std::size_t i = t; i < S.rows(); ++i) {
            for (std::size_t j = t; j < S.cols(); ++j) {
              if (S(i, j) != 0 && (!found || abs_int(S(i, j)) < best)) {
                found = true;
                best  = abs_int(S(i, j));
                pi    = i;
                pj    = j;
              }
            }
          }
          if (!found) {
            return w;
          }
          if (pi != t) {
            rowswap(t, pi);
          }
          if (pj != t) {
            colswap(t, pj);
          }
          bool clean = true;
          for (std::size_t i = t + 1; i < S.rows(); ++i) {
            if (S(i, t) != 0) {
              rowop(i, t, -(S(i, t) / S(t, t)));
              clean = clean && S(i, t) == 0;
            }
          }
          for (std::size_t j = t + 1; j < S.cols(); ++j) {
            if (S(t, j) != 0) {
              colop(j, t, -(S(t, j) / S(t, t)));
              clean = clean && S(t, j) == 0;
            }
          }
          if (!clean) {
            continue;
          }
          bool divisible = true;
          for (std::size_t i = t + 1; i < S.rows() && divisible; ++i) {
            for (std::size_t j = t + 1; j < S.cols(); ++j) {
              if (S(i, j) % S(t, t) != 0) {
                rowop(t, i, 1);
                divisible = false;
                break;
              }
            }
          }
          if (divisible) {
            break;
          }
        }
        if (S(t, t) < 0) {
          row_negate(S, t);
          row_negate(w.L, t);
          col_negate(w.Linv, t);
        }
      }
      return w;
    }
  }  // namespace

  SmithResult snf(IntMatrix const& M) {
    auto        w = smith(M);
    SmithResult res{w.S, w.L, w.R, 0};
    for (std::size_t t = 0; t < std::min(M.rows(), M.cols()); ++t) {
      if (res.S(t, t) != 0) {
        ++res.rank;
      }
    }
    return res;
  }

  Lattice::Lattice(IntMatrix const& generators) {
    auto h = hnf(generators);
    _basis = IntMatrix(generators.rows(), h.rank);
    for (std::size_t i = 0; i < generators.rows(); ++i) {
      for (std::size_t j = 0; j < h.rank; ++j) {
        _basis(i, j) = h.H(i, j);
      }
    }
  }

  Lattice Lattice::full(std::size_t dim) {
    return Lattice(IntMatrix::identity(dim));
  }

  Lattice Lattice::zero(std::size_t dim) {
    return Lattice(IntMatrix(dim, 0));
  }

  Int Lattice::index() const {
    if (!is_full_rank()) {
      throw std::logic_error("index of a lattice that is not of full rank");
    }
    Int d = 1;
    for (std::size_t i = 0; i < dim(); ++i) {
      d *= _basis(i, i);
    }
    return d;
  }

  namespace {
    std::vector<std::size_t> pivot_rows(IntMatrix const& H) {
      std::vector<std::size_t> piv;
      std::size_t              i = 0;
      for (std::size_t j = 0; j < H.cols(); ++j) {
        while (H(i, j) == 0) {
          ++i;
        }
        piv.push_back(i);
        ++i;
      }
      return piv;
    }
  }  // namespace

  std::optional<IntVec> Lattice::coordinates(IntVec const& v) const {
    if (v.size() != dim()) {
      throw std::invalid_argument("vector of wrong dimension");
    }
    auto   piv = pivot_rows(_basis);
    IntVec c(rank());
    for (std::size_t j = 0; j < rank(); ++j) {
      Int acc = v[piv[j]];
      for (std::size_t k = 0; k < j; ++k) {
        acc -= _basis(piv[j], k) * c[k];
      }
      if (acc % _basis(piv[j], j) != 0) {
        return std::nullopt;
      }
      c[j] = acc / _basis(piv[j], j);
    }
    if (_basis * c != v) {
      return std::nullopt;
    }
    return c;
  }

  IntVec Lattice::reduce(IntVec const& v) const {
    auto   piv = pivot_rows(_basis);
    IntVec r   = v;
    for (std::size_t j = 0; j < rank(); ++j) {
      Int q = floor_div(r[piv[j]], _basis(piv[j], j));
      if (q != 0) {
        for (std::size_t i = 0; i < dim(); ++i) {
          r[i] -= q * _basis(i, j);
        }
      }
    }
    return r;
  }

  bool Lattice::subset_of(Lattice const& other) const {
    for (std::size_t j = 0; j < rank(); ++j) {
      if (!other.contains(_basis.column(j))) {
        return false;
      }
    }
    return true;
  }

  Lattice kernel(IntMatrix const& M) {
    auto      h = hnf(M);
    IntMatrix K(M.cols(), M.cols() - h.rank);
    for (std::size_t j = h.rank; j < M.cols(); ++j) {
      for (std::size_t i = 0; i < M.cols(); ++i) {
        K(i, j - h.rank) = h.U(i, j);
      }
    }
    return Lattice(K);
  }

  Lattice intersect_lattices(Lattice const& a, Lattice const& b) {
    if (a.dim() != b.dim()) {
      throw std::invalid_argument("intersecting lattices of different dimension");
    }
    std::size_t n = a.dim(), ra = a.rank(), rb = b.rank();
    IntMatrix   M(n, ra + rb);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < ra; ++j) {
        M(i, j) = a.basis()(i, j);
      }
      for (std::size_t j = 0; j < rb; ++j) {
        M(i, ra + j) = -b.basis()(i, j);
      }
    }
    Lattice   ker = kernel(M);
    IntMatrix gens(n, ker.rank());
    for (std::size_t k = 0; k < ker.rank(); ++k) {
      IntVec coeff(ra);
      for (std::size_t j = 0; j < ra; ++j) {
        coeff[j] = ker.basis()(j, k);
      }
      IntVec v = a.basis() * coeff;
      for (std::size_t i = 0; i < n; ++i) {
        gens(i, k) = v[i];
      }
    }
    return Lattice(gens);
  }

  Lattice saturation(Lattice const& a) {
    // P = L^-1 S R^-1, so P (x) Q meets Z^n in the span of the first rank
    // columns of L^-1
    auto      w = smith(a.basis());
    IntMatrix gens(a.dim(), a.rank());
    for (std::size_t i = 0; i < a.dim(); ++i) {
      for (std::size_t j = 0; j < a.rank(); ++j) {
        gens(i, j) = w.Linv(i, j);
      }
    }
    return Lattice(gens);
  }

  std::string to_string(Lattice const& l) {
    std::ostringstream os;
    os << "span{";
    for (std::size_t j = 0; j < l.rank(); ++j) {
      os << (j ? "," : "") << to_string(l.basis().column(j));
    }
    os << '}';
    return os.str();
  }

  bool ClosureEmbedding::finite_index() const {
    return K.rows() == rank() && K.cols() == rank() && determinant(K) != 0;
  }

  LinearSystem embedding_to_system(ClosureEmbedding const& f) {
    if (f.K.rows() != f.rank() || f.K.cols() != f.rank()) {
      throw std::invalid_argument("closure embedding: K must be m x m");
    }
    return {f.peg_col, f.K};
  }

  std::string to_string(LinearSystem const& s) {
    std::ostringstream os;
    std::size_t        m    = s.offset.size();
    auto               name = [m](char v, std::size_t i) {
      return m == 1 ? std::string(1, v) : std::string(1, v) + std::to_string(i + 1);
    };
    for (std::size_t i = 0; i < m; ++i) {
      os << (i ? "; " : "") << name('x', i) << " = ";
      bool first = true;
      if (s.offset[i] != 0) {
        os << s.offset[i];
        first = false;
      }
      for (std::size_t j = 0; j < s.K.cols(); ++j) {
        Int c = s.K(i, j);
        if (c == 0) {
          continue;
        }
        if (!first) {
          os << (c < 0 ? " - " : " + ");
        } else if (c < 0) {
          os << '-';
        }
        Int a = c < 0 ? Int(-c) : c;
        if (a != 1) {
          os << a;
        }
        os << name('y', j);
        first = false;
      }
      if (first) {
        os << '0';
      }
    }
    return os.str();
  }

  Coset system_to_coset(LinearSystem const& s) {
    Lattice U(s.K);
    if (!U.is_full_rank()) {
      throw std::invalid_argument("linear system with rank-deficient K");
    }
    return {U.reduce(s.offset), U};
  }

  ClosureEmbedding coset_to_embedding(Coset const& c) {
    return {c.offset, c.lattice.basis()};
  }

  bool Coset::contains(IntVec const& p) const {
    IntVec d(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      d[i] = p[i] - offset[i];
    }
    return lattice.contains(d);
  }

  std::string to_string(Coset const& c) {
    std::ostringstream os;
    if (c.lattice.dim() == 1 && c.lattice.rank() == 1) {
      os << c.offset[0] << '+';
      if (c.lattice.basis()(0, 0) != 1) {
        os << c.lattice.basis()(0, 0);
      }
      os << "ℤ";
      return os.str();
    }
    os << to_string(c.offset) << '+' << to_string(c.lattice);
    return os.str();
  }

  std::optional<IntVec> solvable(LinearSystem const& s, IntVec const& p) {
    if (p.size() != s.offset.size()) {
      throw std::invalid_argument("solvable: wrong number of peg exponents");
    }
    IntVec d(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      d[i] = p[i] - s.offset[i];
    }
    auto    h = hnf(s.K);
    Lattice span(s.K);
    auto    c = span.coordinates(d);
    if (!c) {
      return std::nullopt;
    }
    IntVec full(s.K.cols());
    for (std::size_t j = 0; j < c->size(); ++j) {
      full[j] = (*c)[j];
    }
    return h.U * full;
  }

}  // namespace bsw
