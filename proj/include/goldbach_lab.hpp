#pragma once

#include "goldbach_lab/approx.hpp"
#include "goldbach_lab/arith.hpp"
#include "goldbach_lab/budget.hpp"
#include "goldbach_lab/certified.hpp"
#include "goldbach_lab/characters.hpp"
#include "goldbach_lab/errors.hpp"
#include "goldbach_lab/expsum.hpp"
#include "goldbach_lab/fft.hpp"
#include "goldbach_lab/format.hpp"
#include "goldbach_lab/ladder.hpp"
#include "goldbach_lab/large_sieve.hpp"
#include "goldbach_lab/majorarc.hpp"
#include "goldbach_lab/minorarc.hpp"
#include "goldbach_lab/quadrature.hpp"
#include "goldbach_lab/report.hpp"
#include "goldbach_lab/rigor.hpp"
#include "goldbach_lab/smoothing.hpp"
