// Classifies the two standard transvections over F_3: same unipotent shape,
// different square class at level 2, hence different conjugacy classes.
#include <iostream>

#include "sympc/centralizer.hpp"

int main() {
    using namespace sympc;
    FieldPtr F = Field::prime(3);
    Matrix j = standard_form(F, 2);

    for (felem lambda : {felem(1), felem(2)}) {
        Matrix u = Matrix::identity(F, 2);
        u.at(0, 1) = lambda;
        SymplecticElement el = make_symplectic(u, j);
        ClassDescriptor desc = invariant(el);
        CentralizerReport rep = centralizer_order(desc);
        std::cout << "[[1," << lambda << "],[0,1]] over F_3\n"
                  << "  label       " << desc.label() << "\n"
                  << "  centralizer " << rep.total.str() << " (";
        for (std::size_t i = 0; i < rep.factors.size(); ++i)
            std::cout << (i ? " * " : "") << rep.factors[i].symbol;
        std::cout << ")\n";
    }
    return 0;
}
