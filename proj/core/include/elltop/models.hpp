#pragma once

#include "elltop/elliptic_top.hpp"
#include "elltop/interacting_tops.hpp"
#include "elltop/multitop.hpp"
#include "elltop/nonrel.hpp"
#include "elltop/spin_rs.hpp"
