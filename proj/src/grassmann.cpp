#include "sgc/grassmann.hpp"

#include <bit>
#include <sstream>

namespace sgc {

std::string to_string(const Supernumber& a) {
    if (a.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (auto& [mask, coef] : a.terms()) {
        Coef c = coef;
        std::string sign = " + ";
        if (c.is_real() && c.re < 0) {
            sign = " - ";
            c = -c;
        }
        if (!first)
            out << sign;
        else if (sign == " - ")
            out << "-";
        first = false;

        std::string cs = c.str();
        if (c.im != 0 && c.re != 0) cs = "(" + cs + ")";
        if (mask == 0) {
            out << cs;
            continue;
        }
        bool wrote = false;
        if (cs != "1") {
            out << cs << "*";
        }
        uint64_t m = mask;
        while (m) {
            int j = std::countr_zero(m);
            m &= m - 1;
            if (wrote) out << "*";
            out << "xi" << (j + 1);
            wrote = true;
        }
    }
    return out.str();
}

}  // namespace sgc
