#pragma once

#include "pcs/approx.hpp"
#include "pcs/arith.hpp"
#include "pcs/chain.hpp"
#include "pcs/covering.hpp"
#include "pcs/errors.hpp"
#include "pcs/generators.hpp"
#include "pcs/homology.hpp"
#include "pcs/io.hpp"
#include "pcs/paths.hpp"
#include "pcs/precubical.hpp"
#include "pcs/report.hpp"
#include "pcs/snf.hpp"
