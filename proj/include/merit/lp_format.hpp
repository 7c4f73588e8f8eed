#pragma once

#include <cctype>
#include <ostream>
#include <string>

#include "merit/lp.hpp"

namespace merit {

namespace detail {
inline std::string lp_name(const Tag& t, std::size_t idx) {
    std::string s = t.str();
    for (char& c : s)
        if (!std::isalnum(static_cast<unsigned char>(c))) c = '_';
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) s.insert(s.begin(), 'x');
    return s + "_" + std::to_string(idx);
}
}  // namespace detail

/// Writes the model in CPLEX LP interchange format, for debugging against
/// external solvers.
inline void write_lp_format(const LinearProgram& lp, std::ostream& os) {
    os << "\\ exported model: " << lp.num_variables() << " variables, "
       << lp.num_constraints() << " constraints\n";
    os.precision(17);
    os << "Minimize\n obj:";
    bool first = true;
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        double c = lp.variables()[j].cost;
        if (c == 0.0) continue;
        os << (c < 0 ? " - " : (first ? " " : " + ")) << std::abs(c) << " "
           << detail::lp_name(lp.variables()[j].tag, j);
        first = false;
    }
    if (first) os << " 0 " << detail::lp_name(lp.variables().empty() ? Tag{} : lp.variables()[0].tag, 0);
    os << "\nSubject To\n";
    for (std::size_t i = 0; i < lp.num_constraints(); ++i) {
        const auto& r = lp.constraints()[i];
        os << " c" << i << ":";
        bool f = true;
        for (const auto& e : r.row) {
            os << (e.coeff < 0 ? " - " : (f ? " " : " + ")) << std::abs(e.coeff) << " "
               << detail::lp_name(lp.variables()[e.var].tag, e.var);
            f = false;
        }
        if (f) os << " 0 " << detail::lp_name(lp.variables().empty() ? Tag{} : lp.variables()[0].tag, 0);
        switch (r.sense) {
            case Sense::LessEqual: os << " <= "; break;
            case Sense::Equal: os << " = "; break;
            case Sense::GreaterEqual: os << " >= "; break;
        }
        os << r.rhs << "\n";
    }
    os << "Bounds\n";
    for (std::size_t j = 0; j < lp.num_variables(); ++j) {
        const auto& b = lp.variables()[j].bounds;
        std::string n = detail::lp_name(lp.variables()[j].tag, j);
        if (b.lower == -kInf)
            os << " -inf <= " << n;
        else
            os << " " << b.lower << " <= " << n;
        if (b.upper == kInf)
            os << " <= +inf\n";
        else
            os << " <= " << b.upper << "\n";
    }
    os << "End\n";
}

}  // namespace merit
