// Exact linear-inequality systems over rate variables, Fourier–Motzkin
// projection, redundancy removal and assembly of the achievable region.
#pragma once

#include "cgras/bounds.hpp"

#include <set>
#include <string>
#include <vector>

namespace cgras {

// Every row is stored in the form  Σ coeff·var ≤ rhs.  All declared variables
// are rates and therefore non-negative; implication checks use that fact.
struct LinearSystem {
    std::vector<RateVar> variables;
    std::vector<Inequality> rows;
    // Conditional mutual informations known to be non-negative. They certify
    // rows whose right-hand sides differ by such a term.
    std::vector<MiTerm> basis;

    bool declares(const RateVar& v) const;
};

// Region: a system over message rates R only.
using Region = LinearSystem;

// Rewrites a row as  lhs ≤ rhs  (a ≥ row is negated).
Inequality to_leq(const Inequality& q);

// Adds a row after normalising it to ≤ form.
void add_row(LinearSystem& sys, const Inequality& q);

LinearSystem fme_eliminate(const LinearSystem& sys, const RateVar& var);

// True when target follows from rows, variable non-negativity and the basis
// terms by a non-negative rational combination (exact LP feasibility).
bool row_implied(const std::vector<Inequality>& rows, const Inequality& target, const std::vector<RateVar>& nonneg,
                 const std::vector<MiTerm>& basis);

LinearSystem remove_redundant(const LinearSystem& sys);

// Elemental Shannon inequalities over vars: H(X_i | all others) >= 0 and
// I(X_i; X_j | K) >= 0 for every K among the remaining variables.
std::vector<EntropyExpr> elemental_inequalities(const VarSet& vars);

// Region comparisons add the elemental inequalities to the basis when the
// regions mention at most this many random variables.
inline constexpr std::size_t kShannonMaxVariables = 7;

// Every row of b follows from the rows of a, non-negativity of the rates, the
// mutual-information terms collected from both regions and (for small variable
// counts) the elemental Shannon inequalities.
bool region_implies(const Region& a, const Region& b);
inline bool regions_equivalent(const Region& a, const Region& b) { return region_implies(a, b) && region_implies(b, a); }

enum class EncoderMode { CL, MCL };
enum class DecoderMode { SD, JD };
// Fixed: R′ = ΓR with the given coefficients. Free: every split of a message
// into the support of Γ is allowed (union over all coefficient choices).
enum class SplitMode { Fixed, Free };

struct AssembleOptions {
    EncoderMode enc = EncoderMode::CL;
    DecoderMode dec = DecoderMode::JD;
    SplitMode split = SplitMode::Fixed;
    bool prune = false;
};

// Binning and decoding bounds after the substitution L = R′ + R̄ (R̄ only for
// codewords that carry a bin index), together with R̄ ≥ 0 and R′ ≥ 0.
LinearSystem pre_fme_system(const OrientedCgras& g, const AssembleOptions& opt);

// The raw bound list used to build pre_fme_system.
std::vector<Inequality> scheme_bounds(const OrientedCgras& g, const AssembleOptions& opt);

Region assemble_region(const OrientedCgras& g, const SplitMatrix& split, const AssembleOptions& opt);

// A region given directly by rows over message rates (used for reference systems).
Region make_region(const std::vector<Inequality>& rows);

}  // namespace cgras
