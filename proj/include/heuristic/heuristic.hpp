#pragma once

#include "heuristic/argument_set.hpp"
#include "heuristic/circuit.hpp"
#include "heuristic/coherence.hpp"
#include "heuristic/cumulants.hpp"
#include "heuristic/dsl.hpp"
#include "heuristic/errors.hpp"
#include "heuristic/hamiltonian.hpp"
#include "heuristic/maxent.hpp"
#include "heuristic/numtheory.hpp"
#include "heuristic/oracle.hpp"
#include "heuristic/propagation.hpp"
#include "heuristic/random_circuit.hpp"
#include "heuristic/rng.hpp"
