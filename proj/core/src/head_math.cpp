#include "pmlab/head_math.hpp"

namespace pmlab {

namespace {

void require(Time t, Time pi) {
    if (!is_power_of_two(pi)) throw ModelError("workspace bound must be a power of two");
    if (t < 0) throw ModelError("negative time");
}

}  // namespace

Time head_position(Time t, Time pi) {
    require(t, pi);
    const Time phase = t & (pi - 1);
    // Bit pi of t selects the sweep: clear -> rightwards, set -> leftwards.
    return (t & pi) == 0 ? phase : pi - phase;
}

std::optional<Time> last_write_time(Time t, Time pi) {
    require(t, pi);
    if (t <= pi) return std::nullopt;
    const Time phase = t & (pi - 1);
    if (phase == 0) return t - 2 * pi;
    return t - 2 * phase;
}

Time next_read_time(Time t, Time pi) {
    require(t, pi);
    return t + 2 * (pi - (t & (pi - 1)));
}

}  // namespace pmlab
