#include <cmath>
#include <numbers>

#include <edyn/catalog.hpp>

int main() {
    const edyn::cplx z{0.0, std::numbers::pi};
    return std::abs(edyn::EntireMap::f1().evaluate(z).value - z) < 1e-12 ? 0 : 1;
}
