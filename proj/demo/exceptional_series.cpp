// Prints d_j(D) next to the X_j constituents for every algebra of the
// exceptional series, j = 2..9. Fallback rows show their signs.

#include <iostream>

#include "casimir/casimir.hpp"

using namespace casimir;

namespace {

std::string paren(const Weight& w) {
    std::string s = w.str();
    return s.front() == '(' ? s : "(" + s + ")";
}

}  // namespace

int main() {
    for (int j = kMinBuiltinJ; j <= kMaxBuiltinJ; ++j) {
        std::cout << "j=" << j << "  d_j = " << to_factored_string(builtin_d(j)) << "\n";
        for (auto& name : family_algebras()) {
            auto d = datum_for(name);
            auto fa = resolve_family(*d, j);
            std::cout << "  " << name << " (D=" << d->dimension() << "): " << eval_d(j, d->dimension()) << " =";
            if (fa.constituents.empty()) std::cout << " 0";
            for (auto& c : fa.constituents) {
                const char* sign = c.sign > 0 ? " +" : c.sign < 0 ? " -" : " 0*";
                std::cout << sign << c.dim << paren(c.highest_weight);
            }
            if (fa.dropped_out) std::cout << "  [dropped out]";
            std::cout << "\n";
        }
    }
}
