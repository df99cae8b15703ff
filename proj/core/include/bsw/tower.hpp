#ifndef BSW_TOWER_HPP_
#define BSW_TOWER_HPP_

#include "bsw/dioph.hpp"
#include "bsw/normal.hpp"
#include "bsw/presentation.hpp"
#include "bsw/structure.hpp"
#include "bsw/word.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bsw {

  // Name of the fresh letter allowed in surface retraction images when the
  // glued subgroup is cyclic.
  inline constexpr char const* kFreshLetter = "_u";

  // One flat of a floor.  Words refer to generators of the level below by
  // their global index.
  struct Flat {
    enum class Kind { Abelian, Surface, Free };
    Kind                     kind = Kind::Free;
    std::string              id;
    std::vector<std::string> names;  // generators added by the flat

    // Abelian: z_1..z_m commuting with the peg.  With a closure embedding the
    // names are z_1..z_m then a_1..a_m, and z_i = peg^k_i * prod a_j^K(i,j).
    Word                            peg;
    std::size_t                     rank = 0;
    std::optional<ClosureEmbedding> closure;
    IntVec                          retract_exp;  // a_j -> peg^y_j

    // Surface: x_1..x_2g, t_2..t_n.
    std::size_t       genus = 0;
    std::vector<Word> boundary;
    std::vector<Word> images;
    bool              cyclic_exception = false;
    // Dehn twists x_gen -> x_gen * x_by, local indices, applied in order.
    std::vector<std::pair<int, int>> twists;

    std::size_t generator_count() const;
  };

  struct Floor {
    std::vector<Flat> flats;
  };

  class TowerError : public std::invalid_argument {
   public:
    TowerError(std::string check, std::string const& msg)
        : std::invalid_argument(check + ": " + msg), _check(std::move(check)) {}
    std::string const& check() const noexcept {
      return _check;
    }

   private:
    std::string _check;
  };

  struct FlatRef {
    std::size_t floor = 0;  // 1-based level the flat creates
    std::size_t index = 0;  // position in the floor
    int         lo = 0, hi = 0;
  };

  class Tower {
   public:
    Tower() = default;
    // Builds the derived data; throws TowerError on malformed floors.
    Tower(Basis base, std::vector<Floor> floors);

    Basis const& base() const noexcept {
      return _base;
    }
    std::vector<Floor> const& floors() const noexcept {
      return _floors;
    }
    std::size_t height() const noexcept {
      return _floors.size();
    }
    Basis const& names() const noexcept {
      return _g.presentation.generators;
    }
    std::size_t rank_at(std::size_t level) const;
    Basis       basis_at(std::size_t level) const;

    Presentation const& presentation() const noexcept {
      return _g.presentation;
    }
    Presentation presentation_at(std::size_t level) const;
    // G^i -> G^{i-1}, or G^{i-1} * <_u> for the cyclic exception.
    Morphism retraction_at(std::size_t level) const;
    // G^i -> G^{i-1}, with the fresh letter sent to 1.
    Morphism retraction_down(std::size_t level) const;
    Morphism to_base() const;

    GroupStructure const& structure() const noexcept {
      return _g;
    }
    GroupStructure structure_at(std::size_t level) const;

    std::vector<FlatRef> flats() const;
    Flat const&          flat(FlatRef const& r) const;
    std::optional<FlatRef> find_flat(std::string const& id) const;

    // Retractions composed with n*(j+1) powers of the declared twists on the
    // j-th surface flat.  n = 0 gives to_base().
    Morphism twisted_to_base(long long n) const;
    // to_base and a few twisted retractions, used as non-triviality witnesses.
    std::vector<NamedMorphism> witnesses(int twisted = 3) const;

   private:
    Basis                            _base;
    std::vector<Floor>               _floors;
    GroupStructure                   _g;
    std::vector<std::size_t>         _level_rank;
    std::vector<std::size_t>         _level_steps;
    std::vector<std::vector<FlatRef>> _refs;
  };

  // Local automorphism of a surface flat: the declared twists applied once.
  // Returns images of the flat generators over the tower's top level.
  std::vector<Word> surface_twist(Flat const& f, int lo, long long power);

  Tower new_tower(std::size_t base_rank);
  Tower new_tower(Basis base);

  struct AbelianFlatSpec {
    Word                     peg;
    std::size_t              rank = 1;
    std::vector<std::string> names;  // defaults z_i
    std::string              id;
  };
  struct SurfaceFlatSpec {
    std::size_t                      genus = 1;
    std::vector<Word>                boundary;
    std::vector<Word>                images;
    bool                             cyclic_exception = false;
    std::vector<std::string>         names;  // defaults x_i, t_i
    std::vector<std::pair<int, int>> twists;  // defaults to both handle twists
    std::string                      id;
  };

  Flat make_abelian_flat(Tower const& t, AbelianFlatSpec const& spec);
  Flat make_surface_flat(Tower const& t, SurfaceFlatSpec const& spec);
  Flat make_free_flat(Tower const& t, std::size_t rank, std::vector<std::string> names = {});

  // Each glue operation adds one floor and throws TowerError when a check of
  // the new floor fails.  Unknown outcomes are accepted and reported by
  // validate_tower.
  Tower glue_free_factor(Tower const& t, std::size_t rank, std::vector<std::string> names = {});
  Tower glue_abelian_flat(Tower const& t, AbelianFlatSpec const& spec);
  Tower glue_surface_flat(Tower const& t, SurfaceFlatSpec const& spec);
  Tower glue_floor(Tower const& t, std::vector<Flat> flats);

  struct Check {
    std::string name;
    Tri         status = Tri::Unknown;  // Yes = holds
    std::string detail;
  };
  struct ValidityReport {
    std::vector<Check> checks;
    Tri                overall() const;
    Check const*       first_failure() const;
    Check const*       first_unknown() const;
  };
  ValidityReport validate_tower(Tower const& t);
  // Checks of one floor only.
  ValidityReport validate_floor(Tower const& t, std::size_t level);

  // Fresh names prefix<k>, smallest k first, avoiding the basis.
  std::vector<std::string> fresh_names(Basis const& taken, std::string const& prefix,
                                       std::size_t n,
                                       std::vector<std::string> const& also = {});

  struct OrderingCertificate {
    bool                     legitimate = false;
    std::size_t              failed     = 0;  // position in the ordering
    std::vector<std::string> lines;
  };
  // perm lists positions into t.flats().
  OrderingCertificate check_legitimate_ordering(Tower const& t,
                                                std::vector<std::size_t> const& perm);

  struct Renaming {
    Tower    tower;
    Morphism forward;   // old generators as words in the new tower
    Morphism backward;  // new generators as words in the old tower
  };
  // Base-peg abelian flats first in one floor, every other flat on its own
  // floor, consecutive free floors merged.
  Renaming normalize_convention(Tower const& t);

  // Tower with its flats reordered and re-indexed; floors follow the given
  // flat order, one flat per floor.
  Renaming reorder_flats(Tower const& t, std::vector<std::size_t> const& perm);

}  // namespace bsw

#endif  // BSW_TOWER_HPP_
