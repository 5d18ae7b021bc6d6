#ifndef SLIMCALC_GEOMETRY_FWD_HPP
#define SLIMCALC_GEOMETRY_FWD_HPP

namespace slimcalc::geom {
class Region;
}

#endif
