#pragma once

#include "analysis.hpp"
#include "autgrp.hpp"
#include "branch.hpp"
#include "config.hpp"
#include "domain.hpp"
#include "errors.hpp"
#include "hermitian.hpp"
#include "homog.hpp"
#include "presets.hpp"
#include "quadrature.hpp"
#include "sampling.hpp"
#include "smoothness.hpp"
#include "tables.hpp"
#include "weights.hpp"
#include "commands.hpp"
