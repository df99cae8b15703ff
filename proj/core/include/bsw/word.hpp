#ifndef BSW_WORD_HPP_
#define BSW_WORD_HPP_

#include <boost/rational.hpp>

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace bsw {

  // A letter is a signed generator index: +(i+1) for g_i, -(i+1) for g_i^-1.
  using Letter = int;

  inline int gen_of(Letter l) {
    return (l > 0 ? l : -l) - 1;
  }
  inline Letter letter(int gen, int sign = 1) {
    return sign > 0 ? gen + 1 : -(gen + 1);
  }

  class ParseError : public std::runtime_error {
   public:
    ParseError(std::size_t pos, std::string const& msg)
        : std::runtime_error("parse error at " + std::to_string(pos) + ": "
                             + msg),
          _pos(pos) {}
    std::size_t position() const noexcept {
      return _pos;
    }

   private:
    std::size_t _pos;
  };

  // Freely reduced word.  The empty word is the identity.
  class Word {
   public:
    Word() = default;
    // Throws std::out_of_range if rank > 0 and a letter exceeds it.
    explicit Word(std::span<Letter const> raw, std::size_t rank = 0);
    Word(std::initializer_list<Letter> raw);

    static Word gen(int index, long long power = 1);

    std::vector<Letter> const& letters() const noexcept {
      return _l;
    }
    std::size_t size() const noexcept {
      return _l.size();
    }
    bool empty() const noexcept {
      return _l.empty();
    }
    Letter operator[](std::size_t i) const {
      return _l[i];
    }
    Letter front() const {
      return _l.front();
    }
    Letter back() const {
      return _l.back();
    }
    auto begin() const {
      return _l.begin();
    }
    auto end() const {
      return _l.end();
    }

    Word inverse() const;
    Word pow(long long k) const;
    Word subword(std::size_t pos, std::size_t len) const;
    int max_generator() const;  // -1 for the identity
    bool uses_only_below(int n) const;

    Word& operator*=(Word const& rhs);
    friend Word operator*(Word lhs, Word const& rhs) {
      lhs *= rhs;
      return lhs;
    }
    friend bool operator==(Word const&, Word const&) = default;
    friend auto operator<=>(Word const& a, Word const& b) {
      // shortlex
      if (a._l.size() != b._l.size()) {
        return a._l.size() <=> b._l.size();
      }
      return a._l <=> b._l;
    }

   private:
    std::vector<Letter> _l;
  };

  Word reduce(std::span<Letter const> raw, std::size_t rank = 0);
  Word commutator(Word const& a, Word const& b);  // a b a^-1 b^-1
  Word conjugate(Word const& g, Word const& w);   // g w g^-1

  // w = conj * core * conj^-1 with core cyclically reduced
  struct CyclicDecomposition {
    Word conj;
    Word core;
  };
  CyclicDecomposition cyclic_decompose(Word const& w);
  bool is_cyclically_reduced(Word const& w);
  Word rotate(Word const& w, std::size_t k);

  // w = root^exponent, root not a proper power.  w must be cyclically reduced
  // and non-trivial; std::invalid_argument otherwise.
  std::pair<Word, long long> primitive_root(Word const& w);

  bool commutes(Word const& u, Word const& v);
  // Generator of C(w).  nullopt stands for the whole group (w = 1).
  std::optional<Word> centralizer(Word const& w);
  // k with u = base^k, if any.  base must be non-trivial.
  std::optional<long long> power_of(Word const& u, Word const& base);

  // On success returns g with u = g v g^-1.
  std::optional<Word> is_conjugate_cyclic(Word const& u, Word const& v);

  using Ratio = boost::rational<long long>;
  Ratio max_piece_ratio(std::vector<Word> const& relators);

  class Basis {
   public:
    Basis() = default;
    explicit Basis(std::vector<std::string> names);
    static Basis numbered(std::string const& prefix, std::size_t n);

    std::size_t rank() const noexcept {
      return _names.size();
    }
    std::vector<std::string> const& names() const noexcept {
      return _names;
    }
    std::string const& name(std::size_t i) const {
      return _names.at(i);
    }
    std::optional<int> index_of(std::string_view name) const;
    int add(std::string name);  // throws on duplicate
    friend bool operator==(Basis const& a, Basis const& b) {
      return a._names == b._names;
    }

   private:
    std::vector<std::string>             _names;
    std::unordered_map<std::string, int> _index;
  };

  bool is_identifier(std::string_view s);
  Word        parse_word(std::string_view text, Basis const& basis);
  std::string format_word(Word const& w, Basis const& basis);

}  // namespace bsw

#endif  // BSW_WORD_HPP_
