#include "bsw/word.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <numeric>

namespace bsw {

  namespace {
    void push_reduced(std::vector<Letter>& out, Letter l) {
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
  }  // namespace

  Word::Word(std::span<Letter const> raw, std::size_t rank) {
    _l.reserve(raw.size());
    for (Letter l : raw) {
      if (l == 0) {
        throw std::out_of_range("letter 0 is not a generator");
      }
      if (rank > 0 && static_cast<std::size_t>(gen_of(l)) >= rank) {
        throw std::out_of_range("generator index " + std::to_string(gen_of(l))
                                + " outside basis of rank "
                                + std::to_string(rank));
      }
      push_reduced(_l, l);
    }
  }

  Word::Word(std::initializer_list<Letter> raw)
      : Word(std::span<Letter const>(raw.begin(), raw.size())) {}

  Word Word::gen(int index, long long power) {
    Word w;
    Letter l = power >= 0 ? letter(index, 1) : letter(index, -1);
    w._l.assign(static_cast<std::size_t>(power >= 0 ? power : -power), l);
    return w;
  }

  Word Word::inverse() const {
    Word w;
    w._l.resize(_l.size());
    std::transform(_l.rbegin(), _l.rend(), w._l.begin(), [](Letter l) {
      return -l;
    });
    return w;
  }

  Word Word::pow(long long k) const {
    if (k == 0 || _l.empty()) {
      return Word();
    }
    Word base = k > 0 ? *this : inverse();
    k         = k > 0 ? k : -k;
    // repeated squaring would be no faster once reduction is linear
    auto [conj, core] = cyclic_decompose(base);
    Word mid;
    mid._l.reserve(core.size() * static_cast<std::size_t>(k));
    for (long long i = 0; i < k; ++i) {
      mid._l.insert(mid._l.end(), core._l.begin(), core._l.end());
    }
    return conj * mid * conj.inverse();
  }

  Word Word::subword(std::size_t pos, std::size_t len) const {
    Word w;
    w._l.assign(_l.begin() + pos, _l.begin() + pos + len);
    return w;
  }

  int Word::max_generator() const {
    int m = -1;
    for (Letter l : _l) {
      m = std::max(m, gen_of(l));
    }
    return m;
  }

  bool Word::uses_only_below(int n) const {
    return std::all_of(
        _l.begin(), _l.end(), [n](Letter l) { return gen_of(l) < n; });
  }

  Word& Word::operator*=(Word const& rhs) {
    std::size_t i = 0;
    while (i < rhs._l.size() && !_l.empty() && _l.back() == -rhs._l[i]) {
      _l.pop_back();
      ++i;
    }
    _l.insert(_l.end(), rhs._l.begin() + i, rhs._l.end());
    return *this;
  }

  Word reduce(std::span<Letter const> raw, std::size_t rank) {
    return Word(raw, rank);
  }

  Word commutator(Word const& a, Word const& b) {
    return a * b * a.inverse() * b.inverse();
  }

  Word conjugate(Word const& g, Word const& w) {
    return g * w * g.inverse();
  }

  CyclicDecomposition cyclic_decompose(Word const& w) {
    auto const& l = w.letters();
    std::size_t i = 0, j = l.size();
    while (j - i >= 2 && l[i] == -l[j - 1]) {
      ++i;
      --j;
    }
    return {w.subword(0, i), w.subword(i, j - i)};
  }

  bool is_cyclically_reduced(Word const& w) {
    return w.size() < 2 || w.front() != -w.back();
  }

  Word rotate(Word const& w, std::size_t k) {
    if (w.empty()) {
      return w;
    }
    k = k % w.size();
    std::vector<Letter> r(w.begin() + k, w.end());
    r.insert(r.end(), w.begin(), w.begin() + k);
    return Word(r);
  }

  std::pair<Word, long long> primitive_root(Word const& w) {
    if (w.empty()) {
      throw std::invalid_argument("primitive_root: identity has no root");
    }
    if (!is_cyclically_reduced(w)) {
      throw std::invalid_argument(
          "primitive_root: word must be cyclically reduced");
    }
    std::size_t n = w.size();
    auto const& l = w.letters();
    for (std::size_t d = 1; d <= n; ++d) {
      if (n % d != 0) {
        continue;
      }
      bool periodic = true;
      for (std::size_t i = d; i < n && periodic; ++i) {
        periodic = l[i] == l[i - d];
      }
      if (periodic) {
        return {w.subword(0, d), static_cast<long long>(n / d)};
      }
    }
    return {w, 1};  // unreachable
  }

  std::optional<Word> centralizer(Word const& w) {
    if (w.empty()) {
      return std::nullopt;
    }
    auto [conj, core] = cyclic_decompose(w);
    auto root         = primitive_root(core).first;
    return conj * root * conj.inverse();
  }

  bool commutes(Word const& u, Word const& v) {
    if (u.empty() || v.empty()) {
      return true;
    }
    return commutator(u, v).empty();
  }

  std::optional<long long> power_of(Word const& u, Word const& base) {
    if (base.empty()) {
      throw std::invalid_argument("power_of: trivial base");
    }
    if (u.empty()) {
      return 0;
    }
    auto [conj, core] = cyclic_decompose(base);
    Word inner        = conj.inverse() * u * conj;
    if (inner.size() % core.size() != 0) {
      return std::nullopt;
    }
    long long k = static_cast<long long>(inner.size() / core.size());
    if (core.pow(k) == inner) {
      return k;
    }
    if (core.pow(-k) == inner) {
      return -k;
    }
    return std::nullopt;
  }

  std::optional<Word> is_conjugate_cyclic(Word const& u, Word const& v) {
    auto [cu, ru] = cyclic_decompose(u);
    auto [cv, rv] = cyclic_decompose(v);
    if (ru.size() != rv.size()) {
      return std::nullopt;
    }
    if (ru.empty()) {
      return Word();
    }
    std::size_t n = ru.size();
    for (std::size_t k = 0; k < n; ++k) {
      // ru = p q with |p| = k, rv = q p, so ru = p rv p^-1
      bool same = true;
      for (std::size_t i = 0; i < n && same; ++i) {
        same = rv[i] == ru[(i + k) % n];
      }
      if (same) {
        Word p = ru.subword(0, k);
        return cu * p * cv.inverse();
      }
    }
    return std::nullopt;
  }

  Ratio max_piece_ratio(std::vector<Word> const& relators) {
    // every (form, start) pair is an occurrence; pieces are found by
    // refining groups of occurrences that agree on their first q letters
    std::vector<Word> forms;
    for (auto const& r : relators) {
      if (r.empty()) {
        throw std::invalid_argument("max_piece_ratio: identity relator");
      }
      Word core = cyclic_decompose(r).core;
      forms.push_back(core);
      forms.push_back(core.inverse());
    }
    struct Occ {
      std::size_t form;
      std::size_t start;
    };
    std::vector<Occ> occ;
    for (std::size_t f = 0; f < forms.size(); ++f) {
      for (std::size_t s = 0; s < forms[f].size(); ++s) {
        occ.push_back({f, s});
      }
    }
    auto letter_at = [&](Occ const& o, std::size_t q) {
      auto const& w = forms[o.form];
      return w[(o.start + q) % w.size()];
    };

    Ratio                         best(0);
    std::vector<std::vector<Occ>> groups{occ};
    for (std::size_t q = 0; !groups.empty(); ++q) {
      std::vector<std::vector<Occ>> next;
      for (auto const& g : groups) {
        std::map<Letter, std::vector<Occ>> split;
        for (auto const& o : g) {
          if (forms[o.form].size() > q) {
            split[letter_at(o, q)].push_back(o);
          }
        }
        for (auto& [l, sub] : split) {
          if (sub.size() < 2) {
            continue;
          }
          std::size_t shortest = forms[sub.front().form].size();
          for (auto const& o : sub) {
            shortest = std::min(shortest, forms[o.form].size());
          }
          best = std::max(best,
                          Ratio(static_cast<long long>(q + 1),
                                static_cast<long long>(shortest)));
          next.push_back(std::move(sub));
        }
      }
      groups = std::move(next);
    }
    return best;
  }

  Basis::Basis(std::vector<std::string> names) {
    for (auto& n : names) {
      add(std::move(n));
    }
  }

  Basis Basis::numbered(std::string const& prefix, std::size_t n) {
    Basis b;
    for (std::size_t i = 1; i <= n; ++i) {
      b.add(prefix + std::to_string(i));
    }
    return b;
  }

  std::optional<int> Basis::index_of(std::string_view name) const {
    auto it = _index.find(std::string(name));
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  int Basis::add(std::string name) {
    if (!is_identifier(name)) {
      throw std::invalid_argument("not a generator name: '" + name + "'");
    }
    if (_index.count(name)) {
      throw std::invalid_argument("duplicate generator name: " + name);
    }
    int i = static_cast<int>(_names.size());
    _index.emplace(name, i);
    _names.push_back(std::move(name));
    return i;
  }

  namespace {
    bool ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    bool ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) || c == '_'
             || c == '\'';
    }
  }  // namespace

  bool is_identifier(std::string_view s) {
    if (s.empty() || !ident_start(s[0])) {
      return false;
    }
    return std::all_of(s.begin(), s.end(), ident_char);
  }

  Word parse_word(std::string_view text, Basis const& basis) {
    std::size_t i    = 0;
    auto        skip = [&] {
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) {
        ++i;
      }
    };
    skip();
    if (i == text.size()) {
      return Word();
    }
    if (text[i] == '1') {
      ++i;
      skip();
      if (i != text.size()) {
        throw ParseError(i, "trailing characters after identity");
      }
      return Word();
    }
    std::vector<Letter> raw;
    while (true) {
      skip();
      std::size_t start = i;
      if (i >= text.size() || !ident_start(text[i])) {
        throw ParseError(i, "expected generator name");
      }
      while (i < text.size() && ident_char(text[i])) {
        ++i;
      }
      auto name = text.substr(start, i - start);
      auto idx  = basis.index_of(name);
      if (!idx) {
        throw ParseError(start, "unknown generator '" + std::string(name) + "'");
      }
      long long power = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        bool neg = false;
        if (i < text.size() && text[i] == '-') {
          neg = true;
          ++i;
        }
        std::size_t dstart = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        if (dstart == i) {
          throw ParseError(i, "expected exponent");
        }
        auto res = std::from_chars(text.data() + dstart, text.data() + i, power);
        if (res.ec != std::errc()) {
          throw ParseError(dstart, "exponent out of range");
        }
        power = neg ? -power : power;
      }
      Letter l = letter(*idx, power >= 0 ? 1 : -1);
      for (long long k = 0; k < (power >= 0 ? power : -power); ++k) {
        raw.push_back(l);
      }
      skip();
      if (i == text.size()) {
        break;
      }
      if (text[i] != '*') {
        throw ParseError(i, "expected '*'");
      }
      ++i;
    }
    return Word(raw);
  }

  std::string format_word(Word const& w, Basis const& basis) {
    if (w.empty()) {
      return "1";
    }
    std::string out;
    auto const& l = w.letters();
    for (std::size_t i = 0; i < l.size();) {
      std::size_t j = i;
      while (j < l.size() && l[j] == l[i]) {
        ++j;
      }
      if (!out.empty()) {
        out += '*';
      }
      out += basis.name(static_cast<std::size_t>(gen_of(l[i])));
      long long run = static_cast<long long>(j - i) * (l[i] > 0 ? 1 : -1);
      if (run != 1) {
        out += '^';
        out += std::to_string(run);
      }
      i = j;
    }
    return out;
  }

}  // namespace bsw
