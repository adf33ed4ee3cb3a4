#pragma once

#include "splink/core/errors.hpp"
#include "splink/core/interval.hpp"
#include "splink/core/linkage.hpp"
#include "splink/core/rational.hpp"
#include "splink/core/realisation.hpp"
#include "splink/core/sp_tree.hpp"
#include "splink/core/verdict.hpp"
#include "splink/intervals.hpp"
#include "splink/sp_decompose.hpp"
#include "splink/analysis.hpp"
#include "splink/connectedness.hpp"
#include "splink/realize.hpp"
#include "splink/oracle.hpp"
#include "splink/json_io.hpp"
