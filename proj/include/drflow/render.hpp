#ifndef DRFLOW_RENDER_HPP
#define DRFLOW_RENDER_HPP

#include <json.hpp>
#include <string>

#include "drflow/diff_poly.hpp"

namespace drflow {

/* Canonical text form: terms in the canonical monomial order, each term as
 * rational * parameter powers * eps power * jet factors.  Coefficients with
 * several parameter monomials are flattened into separate summands so the
 * output round-trips through parse_expr.  Jet naming: u1, u1_x, u1[2], ...
 * The zero polynomial renders as "0". */
std::string render_text(const DiffPoly& p, char letter = 'u');

/* Stable JSON form mirroring the canonical order.  Variable indices are
 * 1-based to match the text names. */
nlohmann::json render_json(const DiffPoly& p);

} // namespace drflow

#endif
