#ifndef DRFLOW_PARSER_HPP
#define DRFLOW_PARSER_HPP

#include <string>
#include <vector>

#include "drflow/diff_poly.hpp"
#include "drflow/evolutionary.hpp"
#include "drflow/series.hpp"

namespace drflow {

/* Parses one expression in the surface grammar
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := factor ('*' factor)*
 *   factor := atom ('^' nat)?
 *   atom   := rational | 'eps' | 'xi' | 'G1' | 'G2' | jetvar
 *           | '(' expr ')' | 'inv(' expr ')'
 *   jetvar := ('u'|'v') idx ('' | '_' 'x'+ | '[' nat ']')
 * with rationals written 'a' or 'a/b' and 1-based variable indices.
 * inv() requires constant term exactly 1.  Errors carry line/column;
 * line/col give the position of the text inside a larger source. */
DiffPoly parse_expr(const std::string& text, int n_vars, const TruncationContext& ctx,
                    const std::string& provenance = "<expr>", int line = 1, int col = 1);

/* System text: one flow per line, "t<beta>_<d>: <expr>[, <expr>]".  '#'
 * starts a comment.  Every flow must list the same number of components,
 * which fixes the arity of the ring. */
EvolutionarySystem parse_system_text(const std::string& text, const TruncationContext& ctx,
                                     const std::string& provenance = "<system>");
EvolutionarySystem parse_system_file(const std::string& path, const TruncationContext& ctx);

/* Map text: one image per line, "u<idx>: <expr>", each index 1..n exactly
 * once; the images are returned in index order. */
std::vector<DiffPoly> parse_map_text(const std::string& text, const TruncationContext& ctx,
                                     const std::string& provenance = "<map>");
std::vector<DiffPoly> parse_map_file(const std::string& path, const TruncationContext& ctx);

/* Initial-data text: one line per variable, "u<idx>: <polynomial in x>" —
 * the expression grammar restricted to rationals, 'x', '+', '-', '*', '^'
 * and parentheses. */
std::vector<PowerSeries> parse_init_text(const std::string& text, const SeriesContext& sctx,
                                         const std::string& provenance = "<init>");
std::vector<PowerSeries> parse_init_file(const std::string& path, const SeriesContext& sctx);

/* Reads a whole file into a string; throws Error when unreadable. */
std::string read_text_file(const std::string& path);

} // namespace drflow

#endif
