#ifndef SKEWFIELD_SKEWFIELD_HPP
#define SKEWFIELD_SKEWFIELD_HPP

#include <skewfield/errors.hpp>
#include <skewfield/field.hpp>
#include <skewfield/dense.hpp>
#include <skewfield/eval_field.hpp>
#include <skewfield/expr.hpp>
#include <skewfield/linrep.hpp>
#include <skewfield/matm.hpp>
#include <skewfield/group.hpp>
#include <skewfield/reptheory.hpp>
#include <skewfield/invariants.hpp>
#include <skewfield/relations.hpp>
#include <skewfield/scenarios.hpp>
#include <skewfield/json_io.hpp>

#endif
