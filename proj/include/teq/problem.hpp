#pragma once

// JSON problem descriptions: a self-contained instance (symmetry algebra,
// manifold model, extended action, optional group-averaging data) plus the
// requested tasks and truncation parameters.  Parsing validates shape and
// keeps every number exact; save/load round-trips identically.

#include "teq/action.hpp"
#include "teq/averaging.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace teq {

struct Problem {
    std::string name;
    std::shared_ptr<Context> ctx;
    ExtendedAction act;

    std::optional<GroupAction> group;  // torus averaging data
    GradedElement alpha;               // averaging input family (zero if absent)

    int levels = 4;    // Ω-cap tower depth / stage count
    int mode_cap = 2;  // Fourier truncation for vectorized complexes
    int k_max = 0;     // family bound for k-indexed models (0 = not a family)
    std::vector<std::string> tasks;

    // original descriptors, kept verbatim for exact re-serialization
    nlohmann::json lie_desc;
    nlohmann::json manifold_desc;
};

// Known task names, in execution order.
const std::vector<std::string>& problem_task_names();

Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const Problem& p);
Problem load_problem(const std::string& path);
void save_problem(const Problem& p, const std::string& path);

// --- element / coefficient (de)serialization, shared with report rendering ---

// Exact rational: integers pass through, otherwise "p/q" strings.
Rational rational_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json rational_to_json(const Rational& r);

// Trig polynomial: scalar shorthand for constants, otherwise a list of
// {"k": [...], "cos": r, "sin": r} entries over positive representative modes.
TrigPoly trig_from_json(const nlohmann::json& j, int nvars, const std::string& where);
nlohmann::json trig_to_json(const TrigPoly& f);

// Graded element: a list of terms {"coeff": trig, "m": [coords] | "b": basis,
// "theta": [...], "omega": [...]}; factor lists must be strictly increasing.
GradedElement element_from_json(const Context* ctx, const nlohmann::json& j,
                                const std::string& where);
nlohmann::json element_to_json(const GradedElement& e);

}  // namespace teq
