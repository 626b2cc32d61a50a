#pragma once

// Exact simulation of information flow from a qubit into a symmetric,
// initially mixed ("hazy") qubit environment under pure dephasing:
// mutual information, redundancy, and record statistics at fragment
// sizes far beyond dense-matrix reach.

#include "hazy/complex2x2.hpp"
#include "hazy/entropy.hpp"
#include "hazy/eigensolver.hpp"
#include "hazy/model.hpp"
#include "hazy/schur.hpp"
#include "hazy/closed_form.hpp"
#include "hazy/dense_oracle.hpp"
#include "hazy/observables.hpp"
#include "hazy/sweep.hpp"
#include "hazy/validate.hpp"
