#pragma once

#include "goelab/automaton.hpp"
#include "goelab/bigint.hpp"
#include "goelab/catalog.hpp"
#include "goelab/decide1d.hpp"
#include "goelab/entropy.hpp"
#include "goelab/error.hpp"
#include "goelab/freegroup_lab.hpp"
#include "goelab/goe_search.hpp"
#include "goelab/group.hpp"
#include "goelab/json_io.hpp"
#include "goelab/linear_ca.hpp"
#include "goelab/parallel.hpp"
#include "goelab/pattern.hpp"
#include "goelab/repro_suite.hpp"
#include "goelab/report.hpp"
#include "goelab/sofic.hpp"
#include "goelab/subshift.hpp"
