#pragma once

#include <utility>
#include <vector>

#include "ftsl2/exactlinalg.hpp"

namespace ftsl2::forms {

// Binary quadratic form a x^2 + b xy + c y^2.
struct Form {
    long a = 1, b = 0, c = 0;
    bool operator==(const Form& o) const { return a == o.a && b == o.b && c == o.c; }
    bool operator<(const Form& o) const;
    long disc() const { return b * b - 4 * a * c; }
};

bool is_fundamental(long d);
Form reduce(Form f);
Form identity(long d);
Form compose(const Form& f, const Form& g);

// All reduced primitive forms of discriminant d < 0, sorted.
std::vector<Form> reduced_forms(long d);

// Class group of discriminant d < 0 from the reduced forms and composition.
FiniteAbelianGroup class_group(long d);

// class_group over every fundamental d in [dmin, dmax] (both negative).
std::vector<std::pair<long, FiniteAbelianGroup>> sweep(long dmin, long dmax, bool parallel);

}  // namespace ftsl2::forms
