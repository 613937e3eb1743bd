#pragma once

#include "etl/calculus.hpp"
#include "etl/consequence.hpp"
#include "etl/family.hpp"
#include "etl/formula.hpp"
#include "etl/model.hpp"
#include "etl/parse.hpp"
#include "etl/proof_io.hpp"
#include "etl/prop_formula.hpp"
#include "etl/render.hpp"
#include "etl/substitution.hpp"
#include "etl/text_forms.hpp"
#include "etl/truth_value.hpp"
#include "etl/valuation.hpp"
