#pragma once

#include <optional>
#include <set>
#include <string>
#include <tuple>

#include "lgs/equivalence.hpp"
#include "parallel.hpp"

namespace lgs::detail {

using Failure = std::optional<std::string>;

/// Scans sorted cylinders; keeps the least failing one.
template <class Pred>
Clause scan(const std::string& name, const std::vector<Cylinder>& cyls, const Alphabet& alpha, Exec exec, Pred pred) {
    std::vector<Failure> fail(cyls.size());
    detail::parallel_for(static_cast<long>(cyls.size()), exec,
                         [&](long k) { fail[static_cast<size_t>(k)] = pred(cyls[static_cast<size_t>(k)]); });
    Clause c;
    c.name = name;
    c.tested = cyls.size();
    for (size_t k = 0; k < cyls.size(); ++k)
        if (fail[k]) {
            c.ok = false;
            c.cylinder = cyls[k];
            c.witness = format_cylinder(alpha, cyls[k]) + ": " + *fail[k];
            break;
        }
    return c;
}

struct Side {
    const LambdaGraphSystem& src;
    const LambdaGraphSystem& dst;
    const CodeTable& fwd;
    const CodeTable& back;
    int d;
    int index;
};

std::set<std::tuple<int, int, int>> constant_edges(const LambdaGraphSystem& s);
std::string describe(const Alphabet& alpha, const OutPrefix& y);
/// Totality on depth-d cylinders, admissible image traces and the label factor condition.
void well_defined(const Side& sd, int D, Exec exec, CheckReport& rep);

}  // namespace lgs::detail
