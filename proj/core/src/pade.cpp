#include "tmoctl/pade.hpp"

#include "tmoctl/errors.hpp"

namespace tmoctl {

RationalTF pade_delay(double tau, int order) {
    if (!(tau > 0.0)) throw Error("pade_delay: tau must be positive");
    switch (order) {
        case 1:
            return {Polynomial{2.0, -tau}, Polynomial{2.0, tau}};
        case 2:
            return {Polynomial{12.0, -6.0 * tau, tau * tau}, Polynomial{12.0, 6.0 * tau, tau * tau}};
        default:
            throw Error("pade_delay: only orders 1 and 2 are provided");
    }
}

}  // namespace tmoctl
