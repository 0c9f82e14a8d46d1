#pragma once

#include "tmoctl/rational_tf.hpp"

namespace tmoctl {

/// All-pass Pade approximation of e^{-tau s}:
///   order 1: (2 - tau s) / (2 + tau s)
///   order 2: (tau^2 s^2 - 6 tau s + 12) / (tau^2 s^2 + 6 tau s + 12)
RationalTF pade_delay(double tau, int order);

}  // namespace tmoctl
