#pragma once

// Stable textual forms for series and count tables: JSON (coefficients as
// decimal strings), CSV and plain text.

#include <ostream>
#include <string>

#include "json.hpp"
#include "series.hpp"

namespace popcomp {

inline std::string decimal(BigInt const& v) { return v.str(); }

/// [{"i":..,"j":..,"l":..,"coefficient":"..."}...] in lexicographic (i,j,l) order.
inline nlohmann::json series_to_json(TruncSeries const& s) {
    auto arr = nlohmann::json::array();
    for (auto const& [e, c] : s.terms()) {
        nlohmann::json term;
        term["i"] = e.i;
        term["j"] = e.j;
        term["l"] = e.l;
        term["coefficient"] = decimal(c);
        arr.push_back(std::move(term));
    }
    return arr;
}

inline TruncSeries series_from_json(nlohmann::json const& arr, Truncation trunc) {
    TruncSeries s(trunc);
    for (auto const& term : arr) {
        Exponent e{term.at("i").get<int>(), term.at("j").get<int>(), term.at("l").get<int>()};
        if (!trunc.covers(e.i, e.j, e.l)) throw error("serialized term lies beyond the truncation");
        s.add_term(e, BigInt(term.at("coefficient").get<std::string>()));
    }
    return s;
}

inline void write_series_csv(std::ostream& os, TruncSeries const& s) {
    os << "i,j,l,coefficient\n";
    for (auto const& [e, c] : s.terms()) os << e.i << ',' << e.j << ',' << e.l << ',' << decimal(c) << '\n';
}

inline void write_series_plain(std::ostream& os, TruncSeries const& s) {
    for (auto const& [e, c] : s.terms()) os << "x^" << e.i << " y^" << e.j << " t^" << e.l << "  " << decimal(c) << '\n';
}

}  // namespace popcomp
