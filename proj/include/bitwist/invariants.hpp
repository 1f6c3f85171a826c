#ifndef BITWIST_INVARIANTS_HPP
#define BITWIST_INVARIANTS_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

#include "bitwist/engine.hpp"

namespace bitwist {

// Words over generators: letter +k / -k means generator k (1-based) with
// exponent +1 / -1.
using Word = std::vector<int>;

Word free_reduce(const Word& w);

struct GroupPresentation {
    int generators = 0;
    std::vector<std::string> generator_names;  // one per edge orbit
    std::vector<Word> relators;                // unreduced, one per face pair
    std::vector<Word> reduced_relators;
};

GroupPresentation pi1(const QuotientComplex& m);

struct AbelianInvariants {
    std::vector<mpz_class> torsion;  // divisors > 1, divisibility chain order
    int free_rank = 0;

    bool trivial() const { return torsion.empty() && free_rank == 0; }
    // |H1| as a positive integer, or 0 when infinite.
    mpz_class order() const;
    std::string to_string() const;  // "0", "Z", "Z/5", "Z^2 + Z/2 + Z/6", ...
    bool operator==(const AbelianInvariants&) const = default;
};

using IntMatrix = std::vector<std::vector<mpz_class>>;

// Smith normal form diagonal d1 | d2 | ... (nonnegative, zeros trailing).
std::vector<mpz_class> smith_normal_form(IntMatrix a);

// Abelianization of a presentation: SNF of the relator exponent matrix.
AbelianInvariants h1(const GroupPresentation& pres);
AbelianInvariants abelian_invariants_of_matrix(const IntMatrix& relations, int generators);

long long euler(const QuotientComplex& m);

}  // namespace bitwist

#endif
