// Splits ad (x) ad into symmetric and antisymmetric parts for the five
// exceptional algebras and lists the irreducible constituents of each.

#include <iostream>

#include "casimir/casimir.hpp"

using namespace casimir;

namespace {

std::string paren(const Weight& w) {
    std::string s = w.str();
    return s.front() == '(' ? s : "(" + s + ")";
}

void show(const char* label, const Decomposition& dec) {
    std::cout << "  " << label << ":";
    for (auto& p : dec.parts) {
        std::cout << " " << p.dim << paren(p.highest_weight);
        if (p.multiplicity != 1) std::cout << "x" << p.multiplicity;
        std::cout << "[c=" << to_display_string(p.casimir) << "]";
    }
    std::cout << "\n";
}

}  // namespace

int main() {
    for (auto name : {"G2", "F4", "E6", "E7", "E8"}) {
        auto d = datum_for(name);
        auto sq = sym_antisym_square(adjoint_character(d));
        std::cout << name << " (D=" << d->dimension() << ")\n";
        show("sym", decompose(sq.sym));
        show("antisym", decompose(sq.antisym));
    }
}
