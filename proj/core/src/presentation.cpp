#include "bsw/presentation.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace bsw {

  std::string format_presentation(Presentation const& p) {
    std::ostringstream os;
    os << '<';
    for (auto const& n : p.generators.names()) {
      os << ' ' << n;
    }
    os << " |";
    for (std::size_t i = 0; i < p.relators.size(); ++i) {
      os << (i ? ", " : " ") << format_word(p.relators[i], p.generators);
    }
    os << " >";
    return os.str();
  }

  Presentation parse_presentation(std::string_view text) {
    auto lt = text.find('<');
    auto bar = text.find('|');
    auto gt  = text.rfind('>');
    if (lt == std::string_view::npos) {
      throw ParseError(0, "expected '<'");
    }
    if (bar == std::string_view::npos || bar < lt) {
      throw ParseError(lt, "expected '|'");
    }
    if (gt == std::string_view::npos || gt < bar) {
      throw ParseError(text.size(), "expected '>'");
    }
    Presentation       p;
    std::istringstream gens(std::string(text.substr(lt + 1, bar - lt - 1)));
    std::string        name;
    while (gens >> name) {
      p.generators.add(name);
    }
    std::string_view body = text.substr(bar + 1, gt - bar - 1);
    std::size_t      pos  = 0;
    while (pos <= body.size()) {
      auto comma = body.find(',', pos);
      auto piece = body.substr(pos, comma == std::string_view::npos
                                        ? std::string_view::npos
                                        : comma - pos);
      bool blank = std::all_of(piece.begin(), piece.end(), [](char c) {
        return std::isspace(static_cast<unsigned char>(c));
      });
      if (!blank) {
        try {
          p.relators.push_back(parse_word(piece, p.generators));
        } catch (ParseError const& e) {
          throw ParseError(bar + 1 + pos + e.position(), e.what());
        }
      } else if (comma != std::string_view::npos) {
        throw ParseError(bar + 1 + pos, "empty relator");
      }
      if (comma == std::string_view::npos) {
        break;
      }
      pos = comma + 1;
    }
    return p;
  }

  Word cyclic_canonical(Word const& r) {
    Word core = cyclic_decompose(r).core;
    if (core.empty()) {
      return core;
    }
    Word best = core;
    for (Word const& c : {core, core.inverse()}) {
      for (std::size_t k = 0; k < c.size(); ++k) {
        Word rot = rotate(c, k);
        if (rot < best) {
          best = rot;
        }
      }
    }
    return best;
  }

  bool same_relator_set(std::vector<Word> const& a, std::vector<Word> const& b) {
    if (a.size() != b.size()) {
      return false;
    }
    std::vector<Word> ca, cb;
    for (auto const& w : a) {
      ca.push_back(cyclic_canonical(w));
    }
    for (auto const& w : b) {
      cb.push_back(cyclic_canonical(w));
    }
    std::sort(ca.begin(), ca.end());
    std::sort(cb.begin(), cb.end());
    return ca == cb;
  }

  Morphism::Morphism(std::size_t target_rank, std::vector<Word> images)
      : _target_rank(target_rank), _images(std::move(images)) {
    for (auto const& w : _images) {
      if (w.max_generator() >= static_cast<int>(target_rank)) {
        throw std::out_of_range("morphism image outside the target");
      }
    }
  }

  Morphism Morphism::identity(std::size_t n) {
    std::vector<Word> im;
    for (std::size_t i = 0; i < n; ++i) {
      im.push_back(Word::gen(static_cast<int>(i)));
    }
    return Morphism(n, std::move(im));
  }

  Morphism Morphism::extend_identity(std::size_t              n,
                                     std::vector<Word> const& rest,
                                     std::size_t              target_rank) {
    std::vector<Word> im;
    for (std::size_t i = 0; i < n; ++i) {
      im.push_back(Word::gen(static_cast<int>(i)));
    }
    im.insert(im.end(), rest.begin(), rest.end());
    return Morphism(target_rank, std::move(im));
  }

  Word Morphism::operator()(Word const& w) const {
    std::vector<Letter> raw;
    for (Letter l : w) {
      auto g = static_cast<std::size_t>(gen_of(l));
      if (g >= _images.size()) {
        throw std::out_of_range("generator without image");
      }
      auto const& im = _images[g];
      if (l > 0) {
        raw.insert(raw.end(), im.begin(), im.end());
      } else {
        for (auto it = im.letters().rbegin(); it != im.letters().rend(); ++it) {
          raw.push_back(-*it);
        }
      }
    }
    return Word(raw);
  }

  Morphism compose(Morphism const& g, Morphism const& f) {
    std::vector<Word> im;
    for (auto const& w : f.images()) {
      im.push_back(g(w));
    }
    return Morphism(g.target_rank(), std::move(im));
  }

  std::vector<Word> relator_images(Morphism const& m, Presentation const& src) {
    std::vector<Word> out;
    for (auto const& r : src.relators) {
      out.push_back(m(r));
    }
    return out;
  }

  Elimination eliminate_identifications(Presentation const& p) {
    std::size_t       n = p.rank();
    std::vector<bool> alive(n, true);
    // forward images in terms of old indices
    Morphism          fwd  = Morphism::identity(n);
    std::vector<Word> rels = p.relators;
    while (true) {
      auto it = std::find_if(rels.begin(), rels.end(), [](Word const& r) {
        return r.size() == 2 && gen_of(r[0]) != gen_of(r[1]);
      });
      if (it == rels.end()) {
        break;
      }
      Letter a = (*it)[0], b = (*it)[1];
      // a b = 1: eliminate the later generator
      if (gen_of(a) > gen_of(b)) {
        std::swap(a, b);
      }
      int  g  = gen_of(b);
      Word gw = Word{-a};
      if (b < 0) {
        gw = gw.inverse();
      }
      std::vector<Word> im = Morphism::identity(n).images();
      im[g]                = gw;
      Morphism sub(n, im);
      rels.erase(it);
      std::vector<Word> next;
      for (auto const& r : rels) {
        Word s = sub(r);
        if (!s.empty()) {
          next.push_back(std::move(s));
        }
      }
      rels     = std::move(next);
      fwd      = compose(sub, fwd);
      alive[g] = false;
    }
    std::vector<int> newidx(n, -1);
    Presentation     out;
    std::vector<Word> back;
    for (std::size_t i = 0; i < n; ++i) {
      if (alive[i]) {
        newidx[i] = static_cast<int>(out.generators.rank());
        out.generators.add(p.generators.name(i));
        back.push_back(Word::gen(static_cast<int>(i)));
      }
    }
    std::vector<Word> reidx;
    for (std::size_t i = 0; i < n; ++i) {
      reidx.push_back(alive[i] ? Word::gen(newidx[i]) : Word());
    }
    Morphism rename(out.generators.rank(), reidx);
    for (auto const& r : rels) {
      out.relators.push_back(rename(r));
    }
    return {out, compose(rename, fwd), Morphism(n, back)};
  }

  std::string format_morphism(Morphism const& m,
                              Basis const&    source,
                              Basis const&    target) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.source_rank(); ++i) {
      os << source.name(i) << " = " << format_word(m.image(i), target) << '\n';
    }
    return os.str();
  }

}  // namespace bsw
