#pragma once

#include <optional>

#include "pmlab/names.hpp"

namespace pmlab {

// Closed-form head arithmetic of a sweeping machine whose tape spans cells
// 0..pi, pi a power of two. The head starts on cell 0 at t = 0 and reverses
// only on the endmarkers, so everything is a function of (t, pi). All three
// functions use masks only.
//
// Both endmarker cells are revisited every 2 pi steps, so any t > pi with
// t % pi == 0 (left end and right end alike) has last write t - 2 pi.
// Testing t % (2 pi) == 0 alone would miss the right end and yield w = t,
// breaking 2 <= t - w <= 2 pi.

constexpr bool is_power_of_two(Time v) { return v > 0 && (v & (v - 1)) == 0; }

// Cell scanned at time t.
Time head_position(Time t, Time pi);

// Last time before t at which cell head_position(t) was written; empty for
// t <= pi (the cell still holds its initial symbol).
std::optional<Time> last_write_time(Time t, Time pi);

// Next time after t at which cell head_position(t) is read again.
Time next_read_time(Time t, Time pi);

}  // namespace pmlab
