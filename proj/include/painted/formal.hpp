#pragma once

// Dictionary between matrix-correlator algebras and truncated series
// solutions of the commutativity equations [d_a B, d_b B] = 0, together
// with the potential-function side: oriented associativity, flat
// identities, gluing of solutions, formal projections onto a base
// solution, and maximality of the span of the derivative matrices.
//
// Everything is even: no sign factors appear in the conversions.

#include "painted/lalgebra.hpp"
#include "painted/rational.hpp"
#include "painted/series.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace painted {

// Generating series of a matrix-correlator algebra. Variables are the
// algebra's index names (t1.. then f1..), and the coefficient of x^M is
// the correlator of the multiset M divided by the product of the
// multiplicity factorials. No constant term; order matches the algebra.
Series build_B(const LAlgebra& alg);

// Inverse reading: multiset coefficients scaled back up by multiplicity
// factorials. Variable names must start with 't' or 'f'; those prefixes
// decide the colors, in order of appearance. The matrix size must equal
// the number of f-variables and the constant term must vanish.
LAlgebra extract_lalgebra(const Series& b);

struct CommWitness {
    std::string var_a, var_b;  // derivative pair whose matrices fail to commute
    std::vector<int> exponent; // first monomial with a nonzero commutator
    std::size_t row = 0, col = 0;
    Rat value;
};

struct CommReport {
    bool pass = true;
    int verified_order = 0; // commutators are reliable two degrees below b
    std::optional<CommWitness> witness;
};

// Checks [d_a b, d_b b] = 0 for every variable pair, through two degrees
// below the truncation order of b. The witness is the first violation in
// variable-pair then monomial order.
CommReport check_comm(const Series& b);

// A vector field on the formal base: one scalar series per coordinate,
// all over the same variable list, component c paired with vars[c].
using VectorField = std::vector<Series>;

struct AssocWitness {
    int a = 0, b = 0, c = 0, f = 0; // coordinates of the failing instance
    std::vector<int> exponent;
    Rat value;
};

struct AssocReport {
    bool pass = true;
    int verified_order = 0; // three degrees below the potential
    std::optional<AssocWitness> witness;
};

// Structure constants of the multiplication encoded by a potential:
// second partials of the components. Reliable two degrees below a.
Series structure_constants(const VectorField& a, int va, int vb);

// Checks the associativity equations
//   sum_e A_ab^e A_ec^f = sum_e A_bc^e A_ea^f
// for the multiplication with structure constants A_ab^c = d_a d_b A^c.
AssocReport assoc_check(const VectorField& a);

// True when coordinate `unit` acts as a flat identity: d_a d_unit A^c
// equals delta_a^c exactly through the reliable order.
bool has_flat_identity(const VectorField& a, int unit = 0);

// Jacobian of the vector field: entry (c, b) is d_b A^c. Drops one order.
Series b_from_a(const VectorField& a);

// Recovers a potential from a commutativity solution and a primitive
// vector h: changes coordinates by the formal inverse of t -> B(t)h,
// verifies the transported rows form closed 1-forms, and integrates
// termwise. The result gains one order and vanishes at the origin.
// Throws when the linear part of B(t)h is singular (h not primitive) or
// when closedness fails.
VectorField a_from_b(const Series& b, const std::vector<Rat>& h);

// Pullback gluing of a solution over the t-variables with a potential
// over a disjoint set of coordinates: with B2 the Jacobian of a2, the
// result is B2 evaluated at theta + B1(t)h over the combined variables.
// Throws when the variable sets collide.
Series glue(const Series& b1, const VectorField& a2, const std::vector<Rat>& h);

// Result of searching for a formal projection: a coordinate change
//   t -> t + sum_K lambda_K(t) theta^K
// carrying the base solution to the total one, solved degree by degree
// in theta. Keys are exponent vectors over the theta-variables; each
// value holds one scalar series per base variable. When some degree's
// linear system is underdetermined the recorded solution sets the free
// coefficients to zero and the nullspace families are returned alongside.
struct ProjectionResult {
    enum class Status { Solved, Inconsistent };
    Status status = Status::Solved;
    bool unique = true;
    std::vector<std::string> theta_vars;
    std::map<std::vector<int>, std::vector<Series>> lambda;
    std::map<std::vector<int>, std::vector<std::vector<Series>>> nullspace;
    std::string detail; // set when inconsistent: which defect has no preimage
};

// Requires total's variables to contain base's (in order) and total to
// restrict to base exactly when the extra variables are set to zero.
ProjectionResult formal_projection(const Series& base, const Series& total);

struct MaximalityReport {
    enum class Verdict { Strict, MaximalNotStrict, NotMaximal, Inconclusive };
    Verdict verdict = Verdict::Inconclusive;
    int order = 0;          // truncation degree actually tested
    bool truncated_maximal = false; // centralizer inside the module span
    bool truncated_free = false;    // no syzygies among the generators
    bool zero_maximal = false;      // constant centralizer of the b_i(0)
    bool zero_strict = false;       // and the b_i(0) independent over Q
};

const char* verdict_name(MaximalityReport::Verdict v);

// Tests whether the derivative matrices b_i span their own centralizer.
// The truncated test works with series coefficients through the given
// degree (clamped one below the order of b); a failure there is decisive
// for that degree. The degree-0 test compares the constant centralizer
// with the rational span of the b_i(0); when it certifies maximality the
// verdict is strict or maximal depending on independence, otherwise the
// truncated pass alone is reported as inconclusive.
MaximalityReport check_maximality(const Series& b, int order);

} // namespace painted
