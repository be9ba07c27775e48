// Builds a root datum from a Cartan matrix given as JSON (default: B2+G2),
// then prints the positive roots and the size-j order filters of the root
// poset with the casimir value of each filter's root sum.
//
// usage: custom_cartan [JSON] [j]

#include <iostream>

#include "casimir/casimir.hpp"

using namespace casimir;

namespace {

std::string paren(const Weight& w) {
    std::string s = w.str();
    return s.front() == '(' ? s : "(" + s + ")";
}

}  // namespace

int main(int argc, char** argv) {
    const std::string text = argc > 1 ? argv[1] : R"({"name": "B2+G2", "matrix": [[2,-2,0,0],[-1,2,0,0],[0,0,2,-1],[0,0,-3,2]]})";
    const std::size_t j = argc > 2 ? std::stoul(argv[2]) : 3;
    try {
        auto d = build_root_datum(cartan_from_json(Json::parse(text)));
        std::cout << d->name() << ": rank " << d->rank() << ", dimension " << d->dimension() << ", "
                  << d->positive_roots().size() << " positive roots\n";
        for (auto& r : d->positive_roots()) std::cout << "  " << paren(r.labels) << " height " << r.height << "\n";
        std::cout << "order filters of size " << j << ":\n";
        for (auto& f : admissible_subset_list(*d, j)) {
            Weight w = root_sum_labels(*d, f);
            std::cout << "  sum " << paren(w) << "  casimir " << to_display_string(casimir::casimir(*d, w))
                      << (casimir::casimir(*d, w) == static_cast<long>(j) ? "  <- in X_j" : "") << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
