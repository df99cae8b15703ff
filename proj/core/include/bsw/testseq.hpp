#ifndef BSW_TESTSEQ_HPP_
#define BSW_TESTSEQ_HPP_

#include "bsw/construct.hpp"
#include "bsw/tower.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace bsw {

  // c * n^d with c >= 1 and d >= 1.
  struct Monomial {
    long long coeff  = 1;
    int       degree = 1;
    Int       eval(long long n) const;
    friend bool operator==(Monomial const&, Monomial const&) = default;
  };
  // Literals "n", "n^2", "3*n", "2*n^3".
  Monomial    parse_monomial(std::string_view text);
  std::string to_string(Monomial const& m);

  // Generators of one abelian flat, largest first, with their exponents.
  // For a closure flat the generators are the a_j.
  struct FlatSchedule {
    std::vector<std::size_t> order;
    std::vector<Monomial>    exps;
  };
  struct GrowthSchedule {
    std::map<std::string, FlatSchedule> flats;  // by flat id
  };

  // First n from which every consecutive exponent strictly decreases.
  long long schedule_threshold(FlatSchedule const& s);
  // Throws std::invalid_argument unless every abelian flat has a schedule
  // whose degrees strictly decrease along the order.
  void validate_schedule(Tower const& t, GrowthSchedule const& s);

  std::vector<std::size_t> identity_ordering(Tower const& t);
  // Exponents c * n^(D + rank - j) where the lower generators grow at most
  // like c * n^D; this makes every domination inequality hold at every n.
  GrowthSchedule default_schedule(Tower const& t, std::vector<std::size_t> const& ordering);

  // k cyclically reduced words of equal length over the first base_rank
  // letters with max piece ratio below 1/n.  Deterministic in the arguments.
  std::vector<Word> gen_smallcanc_family(std::size_t   k,
                                         std::size_t   n,
                                         std::size_t   base_rank  = 2,
                                         std::size_t   min_length = 0,
                                         std::uint64_t seed       = 0);

  struct SequencePoint {
    long long n = 0;
    Morphism  h;  // top level -> base
    bool      heuristic = false;
  };
  std::string format_point(SequencePoint const& p, Tower const& t);

  // Towers of abelian flats and free factors only.
  SequencePoint gen_sequence_point(Tower const&                    t,
                                   std::vector<std::size_t> const& ordering,
                                   GrowthSchedule const&           schedule,
                                   long long                       n,
                                   std::uint64_t                   seed = 0);
  // Surface flats map by their retraction after n * (j + seed) powers of the
  // declared twists on the j-th surface flat; other flats as above.  n = 0
  // gives the retraction to the base.
  SequencePoint gen_surface_point(Tower const&                    t,
                                  std::vector<std::size_t> const& ordering,
                                  GrowthSchedule const&           schedule,
                                  long long                       n,
                                  std::uint64_t                   seed = 1);

  struct PointReport {
    std::vector<Check> checks;
    bool               ok() const;
  };
  // Domination at index n: n |h(p)| <= |h(x)| for each probe p below the
  // flat and x the slowest generator of an abelian flat or any generator of
  // a free factor.  Probes default to the generators below the flat;
  // extra probes apply to every flat above all of their letters.
  PointReport verify_point(Tower const&                    t,
                           std::vector<std::size_t> const& ordering,
                           GrowthSchedule const&           schedule,
                           SequencePoint const&            point,
                           std::vector<Word> const&        probes = {});

  // Evaluates w at points n = 1..budget.  Never answers Trivial.
  Verdict limit_oracle(Tower const& t, Word const& w, long long budget, std::uint64_t seed = 0);

  struct SwapCheck {
    Word    swapped;     // w with the two copies exchanged
    Word    difference;  // swapped * w^-1
    Verdict verdict;
  };
  SwapCheck swap_symmetry_check(TwinTower const& tt, Word const& w, long long budget = 10);

}  // namespace bsw

#endif  // BSW_TESTSEQ_HPP_
