#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace reinhardt {

inline const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names{"ball",    "ellipsoid", "theorem1-poly",       "example5",
                                                "example6", "corner",   "negative-coefficient"};
    return names;
}

/// "ellipsoid" or "ellipsoid:<alpha>" (default alpha 9, k 2): |z_1|^2 + |z_2|^alpha.
/// "corner" is ellipsoid:1 with k = 1, the non-smooth control |z_2|.
inline DomainConfig preset_config(const std::string& name)
{
    DomainConfig c;
    c.name = name;
    if (name == "ball") {
        c.weights = {3, {1, 1, 1}, {2, 2}, 1};
    } else if (name == "ellipsoid" || name.rfind("ellipsoid:", 0) == 0) {
        double alpha = 9.0;
        if (name != "ellipsoid") {
            const std::string v = name.substr(10);
            std::size_t used = 0;
            try {
                alpha = std::stod(v, &used);
            } catch (const std::logic_error&) {
                used = 0;
            }
            if (used != v.size() || !(alpha > 0.0)) throw RejectionError("bad ellipsoid exponent '" + v + "'");
        }
        c.weights = {2, {1, 1}, {alpha}, 2};
    } else if (name == "corner") {
        c.weights = {2, {1, 1}, {1.0}, 1};
        c.check.smoothness.loci = {"axis:2"};
    } else if (name == "theorem1-poly") {
        // x2^4 + x3^4 + x2^2 x3^2
        c.weights = {3, {1, 1, 1}, {4, 4}, 2};
        c.terms.push_back(MonomialSpec{1.0, {2, 2}});
    } else if (name == "example5") {
        // s(u) = (9 - u, u), u in [4, 5], uniform density
        c.weights = {3, {1, 1, 1}, {9, 9}, 2};
        c.terms.push_back(SegmentSpec{{9, 0}, {-1, 1}, 4.0, 5.0, TableSource::named("uniform"), kDefaultQuadratureNodes});
        c.check.smoothness.loci = {"axis:2", "axis:3", "diagonal:2:3"};
    } else if (name == "example6") {
        // x2^8 g(x3^2 / x2^2)
        c.weights = {3, {1, 1, 1}, {8, 8}, 2};
        c.terms.push_back(ProfileSpec{{8, 0}, {QuotientSpec{{0, 2}, {2, 0}}}, TableSource::named("c2-bump")});
        c.check.smoothness.loci = {"axis:2", "axis:3", "diagonal:2:3"};
    } else if (name == "negative-coefficient") {
        // x2^4 + x3^4 - 3 x2^2 x3^2 is negative near the diagonal
        c.weights = {3, {1, 1, 1}, {4, 4}, 2};
        c.terms.push_back(MonomialSpec{-3.0, {2, 2}});
    } else {
        std::string list;
        for (const auto& n : preset_names()) list += (list.empty() ? "" : ", ") + n;
        throw RejectionError("unknown preset '" + name + "' (expected one of " + list + ", ellipsoid:<alpha>)");
    }
    return c;
}

} // namespace reinhardt
