#pragma once

#include "base_matrix.hpp"
#include "channel.hpp"
#include "complexity.hpp"
#include "encoder.hpp"
#include "format.hpp"
#include "gdbf.hpp"
#include "gdsu.hpp"
#include "gf2.hpp"
#include "parity_matrix.hpp"
#include "quantize.hpp"
#include "simulate.hpp"
#include "symbol_io.hpp"
