// hlprime.hpp
// Umbrella header.

#pragma once

#include "hlprime/analytic.hpp"
#include "hlprime/audit.hpp"
#include "hlprime/checkpoint.hpp"
#include "hlprime/compensated_sum.hpp"
#include "hlprime/errors.hpp"
#include "hlprime/int_math.hpp"
#include "hlprime/oracle.hpp"
#include "hlprime/parallel.hpp"
#include "hlprime/prime_counter.hpp"
#include "hlprime/quadrature.hpp"
#include "hlprime/range_family.hpp"
#include "hlprime/report.hpp"
#include "hlprime/scan.hpp"
#include "hlprime/scan_io.hpp"
#include "hlprime/sieve.hpp"
#include "hlprime/statistics.hpp"
#include "hlprime/sublinear.hpp"
#include "hlprime/verdict.hpp"
#include "hlprime/verify.hpp"
