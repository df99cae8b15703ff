#ifndef BSW_DIOPH_HPP_
#define BSW_DIOPH_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace bsw {

  using Int    = boost::multiprecision::cpp_int;
  using IntVec = std::vector<Int>;

  class IntMatrix {
   public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : _rows(rows), _cols(cols), _a(rows * cols) {}
    IntMatrix(std::initializer_list<std::initializer_list<long long>> rows);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_columns(std::vector<IntVec> const& cols,
                                  std::size_t          dim);

    std::size_t rows() const noexcept {
      return _rows;
    }
    std::size_t cols() const noexcept {
      return _cols;
    }
    Int& operator()(std::size_t i, std::size_t j) {
      return _a[i * _cols + j];
    }
    Int const& operator()(std::size_t i, std::size_t j) const {
      return _a[i * _cols + j];
    }
    IntVec column(std::size_t j) const;
    IntVec row(std::size_t i) const;
    IntMatrix transpose() const;
    bool      is_zero() const;

    friend IntMatrix operator*(IntMatrix const& a, IntMatrix const& b);
    friend IntVec    operator*(IntMatrix const& a, IntVec const& v);
    friend bool operator==(IntMatrix const& a, IntMatrix const& b) = default;

   private:
    std::size_t      _rows = 0, _cols = 0;
    std::vector<Int> _a;
  };

  std::string to_string(IntMatrix const& m);
  std::string to_string(IntVec const& v);

  Int  determinant(IntMatrix const& m);  // square only
  bool is_unimodular(IntMatrix const& m);

  // Column-style Hermite form: H = M U, U unimodular.  Non-zero columns come
  // first, pivot rows strictly increase, pivots are positive and the entries
  // left of a pivot are reduced into [0, pivot).
  struct HermiteResult {
    IntMatrix   H;
    IntMatrix   U;
    std::size_t rank = 0;
  };
  HermiteResult hnf(IntMatrix const& M);

  // S = L M R with S diagonal, d_i | d_{i+1}, d_i >= 0.
  struct SmithResult {
    IntMatrix   S;
    IntMatrix   L;
    IntMatrix   R;
    std::size_t rank = 0;
  };
  SmithResult snf(IntMatrix const& M);

  // Column lattice in Z^dim, stored by its Hermite basis.
  class Lattice {
   public:
    Lattice() = default;
    Lattice(IntMatrix const& generators);
    static Lattice full(std::size_t dim);
    static Lattice zero(std::size_t dim);

    std::size_t dim() const noexcept {
      return _basis.rows();
    }
    std::size_t rank() const noexcept {
      return _basis.cols();
    }
    bool             is_full_rank() const noexcept {
      return rank() == dim();
    }
    IntMatrix const& basis() const noexcept {
      return _basis;
    }
    // |Z^dim : L|, only for full rank lattices
    Int index() const;
    // coefficients c with basis * c = v
    std::optional<IntVec> coordinates(IntVec const& v) const;
    bool                  contains(IntVec const& v) const {
      return coordinates(v).has_value();
    }
    IntVec reduce(IntVec const& v) const;  // canonical representative mod L
    bool   subset_of(Lattice const& other) const;
    friend bool operator==(Lattice const& a, Lattice const& b) = default;

   private:
    IntMatrix _basis;
  };

  Lattice     intersect_lattices(Lattice const& a, Lattice const& b);
  Lattice     saturation(Lattice const& a);
  Lattice     kernel(IntMatrix const& M);  // {x : M x = 0}
  std::string to_string(Lattice const& l);

  // f(z_i) = c^{peg_col[i]} * prod_j a_j^{K(i,j)}
  struct ClosureEmbedding {
    IntVec    peg_col;
    IntMatrix K;
    std::size_t rank() const noexcept {
      return peg_col.size();
    }
    bool finite_index() const;
    friend bool operator==(ClosureEmbedding const&,
                           ClosureEmbedding const&) = default;
  };

  // x_i = offset_i + sum_j K(i,j) y_j
  struct LinearSystem {
    IntVec    offset;
    IntMatrix K;
  };
  std::string to_string(LinearSystem const& s);

  struct Coset {
    IntVec  offset;  // canonical representative
    Lattice lattice;
    bool    contains(IntVec const& p) const;
    friend bool operator==(Coset const&, Coset const&) = default;
  };
  std::string to_string(Coset const& c);

  LinearSystem     embedding_to_system(ClosureEmbedding const& f);
  Coset            system_to_coset(LinearSystem const& s);
  ClosureEmbedding coset_to_embedding(Coset const& c);
  // integer y solving x = offset + K y for x = p
  std::optional<IntVec> solvable(LinearSystem const& s, IntVec const& p);

  Int floor_div(Int const& a, Int const& b);
  Int floor_mod(Int const& a, Int const& b);

}  // namespace bsw

#endif  // BSW_DIOPH_HPP_
