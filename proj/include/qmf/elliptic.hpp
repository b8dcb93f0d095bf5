#pragma once

#include <cstdint>

#include "qmf/uniseries.hpp"

namespace qmf {

/// Which derivation produced an ABPair.
enum class ABRoute { Elliptic, Reversion };

/// The universal operator series A(u), B(u), both of the form 1 + ...
struct ABPair {
    UniSeries a;
    UniSeries b;
    ABRoute route;
};

/// Pi-normalized complete elliptic integral of the first kind as a series in
/// v = k^2:  (1/2) * [1 + (1/2)^2 v + (3/8)^2 v^2 + ...].
UniSeries elliptic_K_series(std::int64_t n);

/// Pi-normalized complete elliptic integral of the second kind:
/// (1/2) * [1 - (1/2)^2 v - (1/3)(3/8)^2 v^2 - ...].
UniSeries elliptic_E_series(std::int64_t n);

/// A(u) = 1/(2 Khat(-u/4)), B(u) = (2 Ehat(-u/4) - Khat(-u/4))/Khat(-u/4).
ABPair ab_from_elliptic(std::int64_t n);

/// The q-series route: u(q) = V - 2, q(u) = revert(u(q)), then
/// A = (1/2h) o q(u) and B = (2T) o q(u).
ABPair ab_from_qseries(std::int64_t n);

} // namespace qmf
