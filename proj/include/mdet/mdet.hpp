#pragma once

// umbrella header

#include "bareiss.hpp"
#include "bfile.hpp"
#include "bigint.hpp"
#include "campaign.hpp"
#include "crt.hpp"
#include "det.hpp"
#include "explore.hpp"
#include "laplace.hpp"
#include "matrix.hpp"
#include "matrix_io.hpp"
#include "modular.hpp"
#include "primes.hpp"
#include "structural.hpp"
