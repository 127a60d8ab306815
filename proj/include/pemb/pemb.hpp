#pragma once

// Umbrella header: the full beam-to-circuit toolkit.
//
// beam      dimensionless Euler beam scaling and modal frequencies
// mobility  exact four-port mobility of a beam element and its Foster split
// synthesis LC-transformer realization of one element, component feasibility
// netlist   module and line netlist assembly, text export and parsing
// mna       nodal analysis: impedance and eigenfrequency extraction
// piezo     bending actuator model and electromechanical coupling constants
// modal     gyroscopically coupled modal pairs, integration and projection
// config    JSON project configuration
// pipeline  synth / simulate / check artifact generation

#include "pemb/beam.hpp"
#include "pemb/config.hpp"
#include "pemb/errors.hpp"
#include "pemb/mna.hpp"
#include "pemb/mobility.hpp"
#include "pemb/modal.hpp"
#include "pemb/netlist.hpp"
#include "pemb/piezo.hpp"
#include "pemb/pipeline.hpp"
#include "pemb/synthesis.hpp"
