#ifndef BSW_PRESENTATION_HPP_
#define BSW_PRESENTATION_HPP_

#include "bsw/word.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace bsw {

  struct Presentation {
    Basis             generators;
    std::vector<Word> relators;

    std::size_t rank() const noexcept {
      return generators.rank();
    }
    friend bool operator==(Presentation const&, Presentation const&) = default;
  };

  // < g1 g2 | r1, r2 >
  std::string  format_presentation(Presentation const& p);
  Presentation parse_presentation(std::string_view text);

  // Representative of the relator up to rotation and inversion.
  Word cyclic_canonical(Word const& r);
  // Equal as multisets of relators up to rotation and inversion.
  bool same_relator_set(std::vector<Word> const& a, std::vector<Word> const& b);

  // Substitution of generators by words.
  class Morphism {
   public:
    Morphism() = default;
    Morphism(std::size_t target_rank, std::vector<Word> images);
    static Morphism identity(std::size_t n);
    // Identity on the first n generators of a rank-m source, other generators
    // sent to the given words.
    static Morphism extend_identity(std::size_t            n,
                                    std::vector<Word> const& rest,
                                    std::size_t            target_rank);

    std::size_t source_rank() const noexcept {
      return _images.size();
    }
    std::size_t target_rank() const noexcept {
      return _target_rank;
    }
    std::vector<Word> const& images() const noexcept {
      return _images;
    }
    Word const& image(std::size_t g) const {
      return _images.at(g);
    }
    void set_image(std::size_t g, Word w) {
      _images.at(g) = std::move(w);
    }

    // Throws std::out_of_range if a letter has no image.
    Word operator()(Word const& w) const;
    friend bool operator==(Morphism const&, Morphism const&) = default;

   private:
    std::size_t       _target_rank = 0;
    std::vector<Word> _images;
  };

  Morphism compose(Morphism const& g, Morphism const& f);  // g o f

  // Relator-by-relator images in the target, reduced.
  std::vector<Word> relator_images(Morphism const& m, Presentation const& src);

  // Removes relators of the form x y^-1 with x, y distinct generators by
  // eliminating the later one.  images[g] expresses old generator g in the new
  // presentation; inverse[g'] expresses new generator g' in the old one.
  struct Elimination {
    Presentation result;
    Morphism     forward;
    Morphism     backward;
  };
  Elimination eliminate_identifications(Presentation const& p);

  std::string format_morphism(Morphism const& m,
                              Basis const&    source,
                              Basis const&    target);

}  // namespace bsw

#endif  // BSW_PRESENTATION_HPP_
