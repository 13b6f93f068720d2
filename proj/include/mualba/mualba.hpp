#pragma once

#include "mualba/algebra.hpp"
#include "mualba/classify.hpp"
#include "mualba/engine.hpp"
#include "mualba/formula.hpp"
#include "mualba/inner.hpp"
#include "mualba/json_io.hpp"
#include "mualba/oracle.hpp"
#include "mualba/parser.hpp"
#include "mualba/printer.hpp"
#include "mualba/quasi.hpp"
#include "mualba/rules.hpp"
#include "mualba/shape.hpp"
#include "mualba/signed_tree.hpp"
