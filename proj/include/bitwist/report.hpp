#ifndef BITWIST_REPORT_HPP
#define BITWIST_REPORT_HPP

#include "bitwist/engine.hpp"
#include "bitwist/heegaard.hpp"
#include "bitwist/invariants.hpp"
#include "bitwist/io.hpp"

namespace bitwist {

// Deterministic machine-readable reports for the CLI; identical inputs give
// byte-identical serializations.

Json report_validate(const BallInput& in);
Json report_cycles(const BallInput& in);
Json report_build(const BallInput& in);
Json report_invariants(const BallInput& in);
Json report_heegaard(const BallInput& in);
Json report_lens_from_pq(const mpz_class& p, const mpz_class& q);
Json report_lens_from_multipliers(const std::vector<long long>& m);
Json report_surgery_h1(const LinkInput& in);
Json report_surgery_simplify(const LinkInput& in);
Json report_consum(const BallInput& a, const std::string& e1, const BallInput& b,
                   const std::string& e2);
Json report_reframe(const BallInput& in, const std::map<std::string, mpq_class>& alpha);

// Wraps a result object with the input digest and version tag.
Json run_report(const std::string& subcommand, const std::string& input_digest, Json result);
std::string digest_bytes(const std::string& bytes);

// Helpers shared by reports and tests.
std::pair<SubdividedBall, BitwistPairing> build_bitwist(const BallInput& in);
QuotientComplex build_quotient(const BallInput& in);

}  // namespace bitwist

#endif
