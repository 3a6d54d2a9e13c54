#ifndef LINRE_ANALYSIS_HPP_
#define LINRE_ANALYSIS_HPP_

#include "linre/ast.hpp"

namespace linre {

// Swaps the operands of every Concat. Node indices, ids and lookaround kinds
// are unchanged, so reverse(reverse(r)) is r.
Regex reverse(const Regex& re);

inline constexpr int32_t kDefaultRepetitionLimit = 1000;

// Expands CountedRep{n,m} into n mandatory copies CountedRep{1,1} followed
// by nested optional layers CountedRep{0,1} chained through `rhs`, or a star
// for an unbounded max. Copies keep the original group, quantifier and
// lookaround ids. Throws kResourceLimit for bounds above `limit`.
Regex desugar_counted(const Regex& re, int32_t limit = kDefaultRepetitionLimit);

// True iff some lazy plus has a CIN or CDN body.
bool has_lazy_nullable_plus(const Regex& re);

// Number of quantifiers (Quantified or CountedRep) strictly enclosing `id`.
int enclosing_quantifier_count(const Regex& re, NodeId id);

}  // namespace linre

#endif  // LINRE_ANALYSIS_HPP_
