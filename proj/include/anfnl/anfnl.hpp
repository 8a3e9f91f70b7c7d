#pragma once

#include "anfnl/anf.hpp"
#include "anfnl/bits.hpp"
#include "anfnl/coefficients.hpp"
#include "anfnl/int128.hpp"
#include "anfnl/ldm.hpp"
#include "anfnl/random.hpp"
#include "anfnl/report.hpp"
#include "anfnl/solver.hpp"
#include "anfnl/truth_table.hpp"
#include "anfnl/walsh.hpp"
