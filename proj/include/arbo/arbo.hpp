#pragma once

#include "arbo/batch_trim.hpp"
#include "arbo/chain_decomposition.hpp"
#include "arbo/delta.hpp"
#include "arbo/disjoint_pair.hpp"
#include "arbo/dominators.hpp"
#include "arbo/emulation.hpp"
#include "arbo/enumerator.hpp"
#include "arbo/generators.hpp"
#include "arbo/graph.hpp"
#include "arbo/instrument.hpp"
#include "arbo/io.hpp"
#include "arbo/oracle.hpp"
#include "arbo/trim_flatten.hpp"
