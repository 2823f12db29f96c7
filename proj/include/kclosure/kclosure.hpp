#pragma once

#include "abelian.hpp"
#include "campaigns.hpp"
#include "closure.hpp"
#include "constructions.hpp"
#include "errors.hpp"
#include "group_io.hpp"
#include "perm_group.hpp"
#include "permutation.hpp"
#include "report.hpp"
#include "stabilizer_chain.hpp"
